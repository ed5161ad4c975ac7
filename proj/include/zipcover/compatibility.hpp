#ifndef zipcover_compatibility_hpp
#define zipcover_compatibility_hpp

#include <cstddef>
#include <utility>
#include <vector>

#include "zipcover/error.hpp"
#include "zipcover/filter.hpp"
#include "zipcover/graph.hpp"

namespace zipcover {

// Vertices are filter states; {v,w} is an edge iff v and w agree in output
// on every common extension.
using CompatibilityGraph = Graph;

// Marking fixpoint: a pair is incompatible if the outputs differ, or if some
// shared observation leads to an incompatible pair. Marks propagate backwards
// through a worklist of newly marked pairs.
inline CompatibilityGraph build_compatibility_graph(const Filter& filter) {
    const auto n = filter.num_states();
    const auto width = filter.num_observations();

    // predecessors[y][v] = states u with tau(u, y) = v
    std::vector<std::vector<std::vector<StateId>>> predecessors(
        width, std::vector<std::vector<StateId>>(n));
    for (const auto& t : filter.data().transitions) {
        predecessors[t.obs][t.to].push_back(t.from);
    }

    std::vector<char> marked(n * n, 0);
    std::vector<std::pair<StateId, StateId>> worklist;
    auto mark = [&](StateId a, StateId b) {
        if (a == b || marked[a * n + b]) {
            return;
        }
        marked[a * n + b] = marked[b * n + a] = 1;
        worklist.emplace_back(a, b);
    };

    for (StateId v = 0; v < n; ++v) {
        for (StateId w = v + 1; w < n; ++w) {
            if (filter.output(v) != filter.output(w)) {
                mark(v, w);
            }
        }
    }
    while (!worklist.empty()) {
        auto [a, b] = worklist.back();
        worklist.pop_back();
        for (ObservationId y = 0; y < width; ++y) {
            for (auto p : predecessors[y][a]) {
                for (auto q : predecessors[y][b]) {
                    mark(p, q);
                }
            }
        }
    }

    CompatibilityGraph g(n);
    for (StateId v = 0; v < n; ++v) {
        for (StateId w = v + 1; w < n; ++w) {
            if (!marked[v * n + w]) {
                g.add_edge(v, w);
            }
        }
    }
    return g;
}

// Closed neighbourhood: adjacent vertices plus v itself.
inline VertexSet neighborhood(const Graph& g, std::size_t v) {
    VertexSet out = g.adjacent(v);
    out.set(v);
    return out;
}

inline bool comparable_neighborhoods(const Graph& g, std::size_t v, std::size_t w) {
    if (v == w) {
        throw InputError("comparable_neighborhoods needs two distinct vertices");
    }
    const auto nv = neighborhood(g, v);
    const auto nw = neighborhood(g, w);
    return nv.is_subset_of(nw) || nw.is_subset_of(nv);
}

// Pairs whose straddling constraints can be repaired after covering:
// those with comparable neighbourhoods.
inline std::vector<Pair> repairable_pairs(const Graph& g, const std::vector<Pair>& pairs) {
    std::vector<Pair> out;
    for (const auto& p : pairs) {
        if (!g.has_edge(p)) {
            throw InputError("pair " + to_string(p) + " is not an edge of the graph");
        }
        if (comparable_neighborhoods(g, p.first, p.second)) {
            out.push_back(p);
        }
    }
    return out;
}

}  // namespace zipcover

#endif /* zipcover_compatibility_hpp */
