#ifndef zipcover_instance_gen_hpp
#define zipcover_instance_gen_hpp

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "zipcover/error.hpp"
#include "zipcover/filter.hpp"
#include "zipcover/graph.hpp"
#include "zipcover/mzcc.hpp"
#include "zipcover/zipper.hpp"

namespace zipcover {

// SplitMix64. The recurrence is fixed so that seeds reproduce across
// platforms and implementations:
//   state += 0x9E3779B97F4A7C15
//   z = state
//   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//   return z ^ (z >> 31)
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // next() mod bound; the small modulo bias is accepted for portability
    std::uint64_t below(std::uint64_t bound) { return next() % bound; }

    // top 53 bits scaled into [0, 1)
    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t state_;
};

struct GenSpec {
    std::size_t states = 4;
    std::size_t alphabet = 2;
    std::size_t outputs = 2;
    double density = 0.7;  // probability that a (state, observation) transition exists
    std::uint64_t seed = 0;
};

inline void check_spec(const GenSpec& spec) {
    if (spec.states == 0 || spec.alphabet == 0 || spec.outputs == 0) {
        throw InputError("generator needs at least one state, observation and output");
    }
    if (!(spec.density >= 0.0 && spec.density <= 1.0)) {
        throw InputError("transition density must lie in [0, 1]");
    }
}

inline std::vector<std::string> default_alphabet(std::size_t k) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < k; ++i) {
        names.push_back(k <= 26 ? std::string(1, static_cast<char>('a' + i))
                                : "y" + std::to_string(i));
    }
    return names;
}

// Draw order: one output per state (below(outputs)), then for each state and
// observation a unit() draw and, when it falls under the density, a target
// below(states). Initial state 0; unreachable states are pruned.
inline Filter random_filter(const GenSpec& spec) {
    check_spec(spec);
    SplitMix64 rng(spec.seed);
    FilterData data;
    data.num_states = spec.states;
    data.initial = 0;
    data.observations = default_alphabet(spec.alphabet);
    for (std::size_t s = 0; s < spec.states; ++s) {
        data.outputs.push_back(rng.below(spec.outputs));
    }
    for (StateId s = 0; s < spec.states; ++s) {
        for (ObservationId y = 0; y < spec.alphabet; ++y) {
            if (rng.unit() < spec.density) {
                data.transitions.push_back({s, y, rng.below(spec.states)});
            }
        }
    }
    return prune_unreachable(Filter::from(std::move(data))).filter;
}

namespace detail {

// States numbered in breadth-first discovery order from state 0, observations
// scanned in id order; true iff that numbering is the identity and reaches
// every state.
inline bool is_bfs_canonical(const std::vector<std::size_t>& table, std::size_t n,
                             std::size_t width, std::size_t undefined) {
    std::vector<std::size_t> order{0};
    std::vector<bool> seen(n, false);
    seen[0] = true;
    for (std::size_t head = 0; head < order.size(); ++head) {
        const auto s = order[head];
        for (std::size_t y = 0; y < width; ++y) {
            const auto t = table[s * width + y];
            if (t == undefined || seen[t]) {
                continue;
            }
            if (t != order.size()) {
                return false;
            }
            seen[t] = true;
            order.push_back(t);
        }
    }
    return order.size() == n;
}

}  // namespace detail

// Streams every reachable filter with 1..n_max states, exactly y_max
// observations and outputs below c_max, one representative per state
// relabelling (initial state 0, states numbered in breadth-first order).
template <class Visitor>
void enumerate_filters(std::size_t n_max, std::size_t y_max, std::size_t c_max, Visitor&& visit) {
    if (n_max > 4 || y_max > 2 || c_max > 2) {
        throw SizeError("exhaustive enumeration is limited to 4 states, 2 observations, 2 outputs");
    }
    if (n_max == 0 || y_max == 0 || c_max == 0) {
        return;
    }
    const auto names = default_alphabet(y_max);
    for (std::size_t n = 1; n <= n_max; ++n) {
        const std::size_t cells = n * y_max;
        const std::size_t undefined = n;
        std::vector<std::size_t> table(cells, 0);
        bool more_tables = true;
        while (more_tables) {
            if (detail::is_bfs_canonical(table, n, y_max, undefined)) {
                std::vector<OutputId> outputs(n, 0);
                bool more_outputs = true;
                while (more_outputs) {
                    FilterData data;
                    data.num_states = n;
                    data.observations = names;
                    data.outputs = outputs;
                    for (std::size_t c = 0; c < cells; ++c) {
                        if (table[c] != undefined) {
                            data.transitions.push_back({c / y_max, c % y_max, table[c]});
                        }
                    }
                    visit(Filter::from(std::move(data)));
                    // odometer over outputs
                    more_outputs = false;
                    for (std::size_t s = 0; s < n; ++s) {
                        if (++outputs[s] < c_max) {
                            more_outputs = true;
                            break;
                        }
                        outputs[s] = 0;
                    }
                }
            }
            // odometer over transition targets, n meaning undefined
            more_tables = false;
            for (std::size_t c = 0; c < cells; ++c) {
                if (++table[c] <= n) {
                    more_tables = true;
                    break;
                }
                table[c] = 0;
            }
        }
    }
}

inline std::vector<Filter> enumerate_filters(std::size_t n_max, std::size_t y_max,
                                             std::size_t c_max) {
    std::vector<Filter> out;
    enumerate_filters(n_max, y_max, c_max, [&](Filter f) { out.push_back(std::move(f)); });
    return out;
}

struct InstanceSpec {
    std::size_t vertices = 6;
    double edge_density = 0.6;
    std::size_t constraints = 6;
    std::size_t symbols = 2;
    std::uint64_t seed = 0;
};

// Random graph plus constraints between randomly chosen edges. Constraint
// endpoints are always edges; a source equal to its target is skipped.
inline MzccInstance random_instance(const InstanceSpec& spec) {
    if (spec.symbols == 0) {
        throw InputError("instance generator needs at least one symbol");
    }
    SplitMix64 rng(spec.seed);
    MzccInstance inst;
    inst.graph = Graph(spec.vertices);
    for (std::size_t u = 0; u < spec.vertices; ++u) {
        for (std::size_t v = u + 1; v < spec.vertices; ++v) {
            if (rng.unit() < spec.edge_density) {
                inst.graph.add_edge(u, v);
            }
        }
    }
    inst.symbols = default_alphabet(spec.symbols);
    const auto edges = inst.graph.edges();
    if (edges.size() < 2) {
        return inst;
    }
    for (std::size_t i = 0; i < spec.constraints; ++i) {
        const auto& u = edges[rng.below(edges.size())];
        const auto& w = edges[rng.below(edges.size())];
        const auto y = rng.below(spec.symbols);
        if (u != w) {
            inst.constraints.push_back({u, w, y});
        }
    }
    std::sort(inst.constraints.begin(), inst.constraints.end());
    inst.constraints.erase(std::unique(inst.constraints.begin(), inst.constraints.end()),
                           inst.constraints.end());
    return inst;
}

}  // namespace zipcover

#endif /* zipcover_instance_gen_hpp */
