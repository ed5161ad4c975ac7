#ifndef zipcover_dot_hpp
#define zipcover_dot_hpp

#include <cstddef>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "zipcover/compatibility.hpp"
#include "zipcover/filter.hpp"
#include "zipcover/zipper.hpp"

namespace zipcover {

namespace detail {

inline std::string dot_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') {
            out += '\\';
        }
        out += c;
    }
    return out + "\"";
}

inline std::string midpoint_id(const Pair& p) {
    return "e" + std::to_string(p.first) + "_" + std::to_string(p.second);
}

}  // namespace detail

// Directed graph; node label "label / output", edge label the observation.
// The initial state is drawn as a double circle.
inline std::string export_dot(const Filter& filter) {
    std::ostringstream out;
    out << "digraph filter {\n";
    out << "  rankdir=LR;\n";
    for (StateId s = 0; s < filter.num_states(); ++s) {
        out << "  s" << s << " [label="
            << detail::dot_quote(filter.label(s) + " / " + std::to_string(filter.output(s)))
            << (s == filter.initial() ? ", shape=doublecircle" : "") << "];\n";
    }
    for (const auto& t : filter.data().transitions) {
        out << "  s" << t.from << " -> s" << t.to
            << " [label=" << detail::dot_quote(filter.observations()[t.obs]) << "];\n";
    }
    out << "}\n";
    return out.str();
}

// Each compatibility edge is split at an auxiliary point node so zipper
// constraints can be drawn as dashed arrows between edge midpoints.
inline std::string export_dot(const CompatibilityGraph& g,
                              const std::vector<ZipperConstraint>& constraints,
                              const std::vector<std::string>& symbols = {},
                              const std::vector<std::string>& labels = {}) {
    std::ostringstream out;
    out << "graph compatibility {\n";
    for (std::size_t v = 0; v < g.size(); ++v) {
        out << "  v" << v << " [label="
            << detail::dot_quote(v < labels.size() ? labels[v] : std::to_string(v)) << "];\n";
    }
    for (const auto& e : g.edges()) {
        const auto mid = detail::midpoint_id(e);
        out << "  " << mid << " [shape=point, width=0.05];\n";
        out << "  v" << e.first << " -- " << mid << ";\n";
        out << "  " << mid << " -- v" << e.second << ";\n";
    }
    for (const auto& c : constraints) {
        const auto name = c.symbol < symbols.size() ? symbols[c.symbol] : std::to_string(c.symbol);
        out << "  " << detail::midpoint_id(c.source) << " -- " << detail::midpoint_id(c.target)
            << " [dir=forward, style=dashed, constraint=false, label=" << detail::dot_quote(name)
            << "];\n";
    }
    out << "}\n";
    return out.str();
}

inline std::string export_dot(const PairPoset& poset) {
    std::ostringstream out;
    out << "digraph poset {\n";
    if (poset.classes.empty()) {
        out << "}\n";
        return out.str();
    }
    out << "  label=" << detail::dot_quote("height " + std::to_string(poset.height) + ", width " +
                                           std::to_string(poset.width))
        << ";\n";
    out << "  node [shape=box];\n";
    for (std::size_t i = 0; i < poset.classes.size(); ++i) {
        std::string text;
        for (const auto& p : poset.classes[i]) {
            text += (text.empty() ? "" : " ") + to_string(p);
        }
        out << "  c" << i << " [label=" << detail::dot_quote(text) << "];\n";
    }
    for (const auto& [a, b] : poset.cover_edges) {
        out << "  c" << a << " -> c" << b << ";\n";
    }
    out << "}\n";
    return out.str();
}

}  // namespace zipcover

#endif /* zipcover_dot_hpp */
