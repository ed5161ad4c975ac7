#pragma once

#include <string>
#include <vector>

#include "zipcover/zipcover.hpp"

namespace fixtures {

using namespace zipcover;

inline Filter make(std::size_t n, std::vector<OutputId> outputs, std::vector<std::string> alphabet,
                   std::vector<Transition> transitions, StateId initial = 0) {
    FilterData d;
    d.num_states = n;
    d.initial = initial;
    d.observations = std::move(alphabet);
    d.outputs = std::move(outputs);
    d.transitions = std::move(transitions);
    for (std::size_t s = 0; s < n; ++s) {
        d.labels.push_back(std::to_string(s + 1));
    }
    return Filter::from(std::move(d));
}

// 1 -a-> 2 -a-> 3, all outputs 0 (ids shifted down by one)
inline Filter line() { return make(3, {0, 0, 0}, {"a"}, {{0, 0, 1}, {1, 0, 2}}); }

// tau(1,a)=3, tau(2,a)=4, c(4)=1
inline Filter fork() { return make(4, {0, 0, 0, 1}, {"a"}, {{0, 0, 2}, {1, 0, 3}}); }

// tau(1,a)=3, tau(2,a)=4, tau(3,b)=1, tau(4,b)=2, all outputs 0
inline Filter cycle() {
    return make(4, {0, 0, 0, 0}, {"a", "b"}, {{0, 0, 2}, {1, 0, 3}, {2, 1, 0}, {3, 1, 1}});
}

inline Filter one_state(OutputId out, bool loop = true) {
    return make(1, {out}, {"a"}, loop ? std::vector<Transition>{{0, 0, 0}} : std::vector<Transition>{});
}

inline Graph complete(std::size_t n) {
    Graph g(n);
    for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v = u + 1; v < n; ++v) {
            g.add_edge(u, v);
        }
    }
    return g;
}

inline Graph cycle_graph(std::size_t n) {
    Graph g(n);
    for (std::size_t v = 0; v < n; ++v) {
        g.add_edge(v, (v + 1) % n);
    }
    return g;
}

inline Graph from_edges(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
    Graph g(n);
    for (const auto& [u, v] : edges) {
        g.add_edge(u, v);
    }
    return g;
}

}  // namespace fixtures
