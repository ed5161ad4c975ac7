#ifndef zipcover_io_hpp
#define zipcover_io_hpp

#include <algorithm>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "zipcover/clique_cover.hpp"
#include "zipcover/error.hpp"
#include "zipcover/filter.hpp"
#include "zipcover/instance_gen.hpp"
#include "zipcover/mzcc.hpp"
#include "zipcover/prescription.hpp"
#include "zipcover/zipper.hpp"

namespace zipcover {

using json = nlohmann::json;

inline constexpr int kFormatVersion = 1;

class ParseError : public InputError {
public:
    ParseError(const std::string& message, std::size_t line, std::size_t column)
        : InputError("parse error at line " + std::to_string(line) + ", column " +
                     std::to_string(column) + ": " + message),
          line_(line),
          column_(column) {}

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

class SchemaError : public InputError {
public:
    SchemaError(const std::string& field, const std::string& message)
        : InputError("schema error at " + field + ": " + message), field_(field) {}

    const std::string& field() const { return field_; }

private:
    std::string field_;
};

namespace detail {

inline json parse_json(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        // e.byte is 1-based and points just past the offending character
        const std::size_t offset = e.byte == 0 ? 0 : std::min<std::size_t>(e.byte - 1, text.size());
        std::size_t line = 1;
        std::size_t column = 1;
        for (std::size_t i = 0; i < offset; ++i) {
            if (text[i] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
        throw ParseError(e.what(), line, column);
    }
}

inline void require_object(const json& j, const std::string& path,
                           const std::set<std::string>& required,
                           const std::set<std::string>& optional = {}) {
    if (!j.is_object()) {
        throw SchemaError(path, "expected an object");
    }
    for (const auto& [key, value] : j.items()) {
        if (!required.count(key) && !optional.count(key)) {
            throw SchemaError(path + "/" + key, "unknown key");
        }
    }
    for (const auto& key : required) {
        if (!j.contains(key)) {
            throw SchemaError(path + "/" + key, "missing required key");
        }
    }
}

inline std::size_t get_index(const json& j, const std::string& path) {
    if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0)) {
        throw SchemaError(path, "expected a non-negative integer");
    }
    return j.get<std::size_t>();
}

inline const json& get_array(const json& j, const std::string& path) {
    if (!j.is_array()) {
        throw SchemaError(path, "expected an array");
    }
    return j;
}

inline std::string get_string(const json& j, const std::string& path) {
    if (!j.is_string()) {
        throw SchemaError(path, "expected a string");
    }
    return j.get<std::string>();
}

inline void check_version(const json& j, const std::string& path) {
    if (j.contains("version") && get_index(j["version"], path + "/version") != kFormatVersion) {
        throw SchemaError(path + "/version", "unsupported version");
    }
}

inline Pair get_pair(const json& j, const std::string& path) {
    get_array(j, path);
    if (j.size() != 2) {
        throw SchemaError(path, "expected a pair of two vertices");
    }
    const auto a = get_index(j[0], path + "/0");
    const auto b = get_index(j[1], path + "/1");
    if (a == b) {
        throw SchemaError(path, "pair repeats a vertex");
    }
    return Pair(a, b);
}

inline json pair_json(const Pair& p) { return json::array({p.first, p.second}); }

}  // namespace detail

// Filter document:
// {"version":1,"states":[{"id","label"?,"output"}],"initial":id,
//  "observations":[names],"transitions":[{"from","obs","to"}]}
inline FilterData parse_filter_data(const std::string& text) {
    using namespace detail;
    const json doc = parse_json(text);
    require_object(doc, "", {"states", "initial", "observations", "transitions"}, {"version"});
    check_version(doc, "");

    FilterData data;
    std::map<std::string, ObservationId> symbol;
    const auto& observations = get_array(doc["observations"], "/observations");
    for (std::size_t i = 0; i < observations.size(); ++i) {
        const auto name = get_string(observations[i], "/observations/" + std::to_string(i));
        symbol.emplace(name, i);
        data.observations.push_back(name);
    }

    const auto& states = get_array(doc["states"], "/states");
    data.num_states = states.size();
    data.outputs.assign(states.size(), 0);
    std::vector<std::string> labels(states.size());
    std::vector<bool> seen(states.size(), false);
    bool any_label = false;
    for (std::size_t i = 0; i < states.size(); ++i) {
        const auto path = "/states/" + std::to_string(i);
        require_object(states[i], path, {"id", "output"}, {"label"});
        const auto id = get_index(states[i]["id"], path + "/id");
        if (id >= states.size()) {
            throw SchemaError(path + "/id", "state ids must be 0.." +
                                                std::to_string(states.size() - 1));
        }
        if (seen[id]) {
            throw SchemaError(path + "/id", "duplicate state id " + std::to_string(id));
        }
        seen[id] = true;
        data.outputs[id] = get_index(states[i]["output"], path + "/output");
        if (states[i].contains("label")) {
            labels[id] = get_string(states[i]["label"], path + "/label");
            any_label = true;
        }
    }
    if (any_label) {
        data.labels = std::move(labels);
    }
    data.initial = get_index(doc["initial"], "/initial");

    const auto& transitions = get_array(doc["transitions"], "/transitions");
    for (std::size_t i = 0; i < transitions.size(); ++i) {
        const auto path = "/transitions/" + std::to_string(i);
        require_object(transitions[i], path, {"from", "obs", "to"});
        const auto name = get_string(transitions[i]["obs"], path + "/obs");
        auto it = symbol.find(name);
        if (it == symbol.end()) {
            throw SchemaError(path + "/obs", "unknown observation '" + name + "'");
        }
        data.transitions.push_back({get_index(transitions[i]["from"], path + "/from"), it->second,
                                    get_index(transitions[i]["to"], path + "/to")});
    }
    return data;
}

inline Filter parse_filter(const std::string& text) { return Filter::from(parse_filter_data(text)); }

inline json filter_to_json(const Filter& filter) {
    json states = json::array();
    for (StateId s = 0; s < filter.num_states(); ++s) {
        json st = {{"id", s}, {"output", filter.output(s)}};
        if (filter.has_labels()) {
            st["label"] = filter.label(s);
        }
        states.push_back(std::move(st));
    }
    json transitions = json::array();
    for (const auto& t : filter.data().transitions) {
        transitions.push_back(
            {{"from", t.from}, {"obs", filter.observations()[t.obs]}, {"to", t.to}});
    }
    return {{"version", kFormatVersion},
            {"states", std::move(states)},
            {"initial", filter.initial()},
            {"observations", filter.observations()},
            {"transitions", std::move(transitions)}};
}

// Canonical text: sorted keys, two-space indent, trailing newline.
inline std::string serialize_filter(const Filter& filter) {
    return filter_to_json(filter).dump(2) + "\n";
}

// Raw instance: {"version":1,"vertices":n,"edges":[[u,v]],
//                "constraints":[{"U":[a,b],"W":[c,d],"y":"sym"}]}
inline MzccInstance parse_instance(const std::string& text) {
    using namespace detail;
    const json doc = parse_json(text);
    require_object(doc, "", {"vertices", "edges", "constraints"}, {"version"});
    check_version(doc, "");
    MzccInstance inst;
    inst.graph = Graph(get_index(doc["vertices"], "/vertices"));
    const auto& edges = get_array(doc["edges"], "/edges");
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const auto path = "/edges/" + std::to_string(i);
        const auto p = get_pair(edges[i], path);
        if (p.second >= inst.graph.size()) {
            throw SchemaError(path, "vertex out of range");
        }
        inst.graph.add_edge(p.first, p.second);
    }
    std::map<std::string, ObservationId> symbol;
    const auto& constraints = get_array(doc["constraints"], "/constraints");
    for (std::size_t i = 0; i < constraints.size(); ++i) {
        const auto path = "/constraints/" + std::to_string(i);
        require_object(constraints[i], path, {"U", "W", "y"});
        const auto name = get_string(constraints[i]["y"], path + "/y");
        auto [it, fresh] = symbol.emplace(name, inst.symbols.size());
        if (fresh) {
            inst.symbols.push_back(name);
        }
        ZipperConstraint c{get_pair(constraints[i]["U"], path + "/U"),
                           get_pair(constraints[i]["W"], path + "/W"), it->second};
        for (const auto& [key, p] : {std::pair{"U", c.source}, std::pair{"W", c.target}}) {
            if (p.second >= inst.graph.size() || !inst.graph.has_edge(p)) {
                throw SchemaError(path + "/" + key, "pair " + to_string(p) + " is not an edge");
            }
        }
        inst.constraints.push_back(c);
    }
    return inst;
}

inline std::string symbol_name(const MzccInstance& inst, ObservationId y) {
    return y < inst.symbols.size() ? inst.symbols[y] : std::to_string(y);
}

inline json instance_to_json(const MzccInstance& inst) {
    json edges = json::array();
    for (const auto& e : inst.graph.edges()) {
        edges.push_back(detail::pair_json(e));
    }
    json constraints = json::array();
    for (const auto& c : inst.constraints) {
        constraints.push_back({{"U", detail::pair_json(c.source)},
                               {"W", detail::pair_json(c.target)},
                               {"y", symbol_name(inst, c.symbol)}});
    }
    return {{"version", kFormatVersion},
            {"vertices", inst.graph.size()},
            {"edges", std::move(edges)},
            {"constraints", std::move(constraints)}};
}

inline std::string serialize_instance(const MzccInstance& inst) {
    return instance_to_json(inst).dump(2) + "\n";
}

inline json cover_to_json(const CliqueCover& cover) {
    json cliques = json::array();
    for (const auto& k : cover.cliques) {
        cliques.push_back(members(k));
    }
    return cliques;
}

inline json pairs_to_json(const std::vector<Pair>& pairs) {
    json out = json::array();
    for (const auto& p : pairs) {
        out.push_back(detail::pair_json(p));
    }
    return out;
}

inline json prescription_to_json(const Prescription& p, const ZipperSystem& zs) {
    return {{"on", pairs_to_json(zs.to_pairs(p.on))}, {"off", pairs_to_json(zs.to_pairs(p.off()))}};
}

inline json stats_to_json(const PosetStats& s) {
    return {{"pairs", s.pairs},     {"repairable", s.repairable}, {"domain", s.domain},
            {"classes", s.classes}, {"height", s.height},         {"width", s.width},
            {"bound", s.bound}};
}

// Report as JSON lines: one summary object followed by one object per
// evaluated prescription.
inline std::vector<json> report_to_json_lines(const SolveReport& report, const MzccInstance& inst) {
    const ZipperSystem zs(inst.constraints);
    std::vector<json> lines;
    json summary = {{"version", kFormatVersion},
                    {"type", "solve"},
                    {"size", report.best.size()},
                    {"cover", cover_to_json(report.best)},
                    {"prescriptions", report.prescriptions},
                    {"stats", stats_to_json(report.stats)},
                    {"elapsed_ms", report.elapsed_ms},
                    {"fell_back", report.fell_back}};
    summary["best_prescription"] =
        report.best_index ? json(*report.best_index) : json(nullptr);
    lines.push_back(std::move(summary));
    for (const auto& r : report.log) {
        lines.push_back({{"type", "prescription"},
                         {"index", r.index},
                         {"prescription", prescription_to_json(r.prescription, zs)},
                         {"included", prescription_to_json(r.included, zs)},
                         {"augmented_vertices", r.augmented_vertices},
                         {"plus_size", r.plus_size},
                         {"distilled_size", r.distilled_size},
                         {"repaired_size", r.repaired_size}});
    }
    return lines;
}

// {"states":n,"alphabet":k,"outputs":c,"density":d,"seed":s}, all optional
inline GenSpec parse_gen_spec(const std::string& text) {
    using namespace detail;
    const json doc = parse_json(text);
    require_object(doc, "", {}, {"version", "states", "alphabet", "outputs", "density", "seed"});
    check_version(doc, "");
    GenSpec spec;
    if (doc.contains("states")) spec.states = get_index(doc["states"], "/states");
    if (doc.contains("alphabet")) spec.alphabet = get_index(doc["alphabet"], "/alphabet");
    if (doc.contains("outputs")) spec.outputs = get_index(doc["outputs"], "/outputs");
    if (doc.contains("seed")) spec.seed = doc["seed"].get<std::uint64_t>();
    if (doc.contains("density")) {
        if (!doc["density"].is_number()) {
            throw SchemaError("/density", "expected a number");
        }
        spec.density = doc["density"].get<double>();
    }
    check_spec(spec);
    return spec;
}

}  // namespace zipcover

#endif /* zipcover_io_hpp */
