#ifndef zipcover_zipper_hpp
#define zipcover_zipper_hpp

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "zipcover/compatibility.hpp"
#include "zipcover/error.hpp"
#include "zipcover/filter.hpp"
#include "zipcover/graph.hpp"
#include "zipcover/index_set.hpp"

namespace zipcover {

// If U is merged into some clique of a cover, W must be too.
struct ZipperConstraint {
    Pair source;
    Pair target;
    ObservationId symbol = 0;

    friend bool operator==(const ZipperConstraint&, const ZipperConstraint&) = default;
    friend auto operator<=>(const ZipperConstraint&, const ZipperConstraint&) = default;
};

inline std::string to_string(const ZipperConstraint& z) {
    return "<" + to_string(z.source) + "," + to_string(z.target) + ">_" +
           std::to_string(z.symbol);
}

// One constraint per compatible pair and observation whose two children are
// defined and distinct. Sorted by (source, symbol).
inline std::vector<ZipperConstraint> build_zipper_constraints(const Filter& filter,
                                                              const CompatibilityGraph& g) {
    if (g.size() != filter.num_states()) {
        throw InputError("compatibility graph does not match the filter");
    }
    std::vector<ZipperConstraint> out;
    for (const auto& edge : g.edges()) {
        for (ObservationId y = 0; y < filter.num_observations(); ++y) {
            auto a = filter.next(edge.first, y);
            auto b = filter.next(edge.second, y);
            if (a && b && *a != *b) {
                out.push_back({edge, Pair(*a, *b), y});
            }
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

struct PairSets {
    std::vector<Pair> all;      // Z^2
    std::vector<Pair> sources;  // Z^2_src
    std::vector<Pair> targets;  // Z^2_tgt
};

inline PairSets pair_sets(const std::vector<ZipperConstraint>& constraints) {
    PairSets out;
    for (const auto& z : constraints) {
        out.sources.push_back(z.source);
        out.targets.push_back(z.target);
        out.all.push_back(z.source);
        out.all.push_back(z.target);
    }
    for (auto* v : {&out.all, &out.sources, &out.targets}) {
        std::sort(v->begin(), v->end());
        v->erase(std::unique(v->begin(), v->end()), v->end());
    }
    return out;
}

// A constraint collection with its pairs indexed in canonical order and the
// strict downstream relation (transitive closure of source -> target)
// precomputed. Pair sets elsewhere are IndexSets over this table.
class ZipperSystem {
public:
    struct Link {
        std::size_t source;
        std::size_t target;
        ObservationId symbol;
    };

    ZipperSystem() = default;

    explicit ZipperSystem(std::vector<ZipperConstraint> constraints)
        : constraints_(std::move(constraints)) {
        pairs_ = pair_sets(constraints_).all;
        const auto z = pairs_.size();
        successors_.assign(z, PairSet(z));
        for (const auto& c : constraints_) {
            Link link{*index_of(c.source), *index_of(c.target), c.symbol};
            links_.push_back(link);
            successors_[link.source].set(link.target);
        }
        downstream_.assign(z, PairSet(z));
        for (std::size_t i = 0; i < z; ++i) {
            PairSet frontier = successors_[i];
            while (frontier.any()) {
                downstream_[i] |= frontier;
                PairSet next(z);
                for_each_member(frontier, [&](std::size_t j) { next |= successors_[j]; });
                frontier = next - downstream_[i];
            }
        }
        upstream_.assign(z, PairSet(z));
        for (std::size_t i = 0; i < z; ++i) {
            for_each_member(downstream_[i], [&](std::size_t j) { upstream_[j].set(i); });
        }
    }

    std::size_t size() const { return pairs_.size(); }
    const std::vector<Pair>& pairs() const { return pairs_; }
    const Pair& pair(std::size_t i) const { return pairs_.at(i); }
    const std::vector<ZipperConstraint>& constraints() const { return constraints_; }
    const std::vector<Link>& links() const { return links_; }

    std::optional<std::size_t> index_of(const Pair& p) const {
        auto it = std::lower_bound(pairs_.begin(), pairs_.end(), p);
        if (it == pairs_.end() || *it != p) {
            return std::nullopt;
        }
        return static_cast<std::size_t>(it - pairs_.begin());
    }

    // One-step relation (a constraint from i to j exists).
    const PairSet& successors(std::size_t i) const { return successors_.at(i); }
    // Strict downstream: pairs reachable from i by one or more steps.
    const PairSet& downstream(std::size_t i) const { return downstream_.at(i); }
    const PairSet& upstream(std::size_t i) const { return upstream_.at(i); }
    bool is_downstream(std::size_t from, std::size_t to) const { return downstream_.at(from).test(to); }

    PairSet empty_set() const { return PairSet(size()); }
    PairSet full_set() const { return ~PairSet(size()); }

    PairSet to_set(const std::vector<Pair>& pairs) const {
        PairSet s(size());
        for (const auto& p : pairs) {
            auto i = index_of(p);
            if (!i) {
                throw InputError("pair " + to_string(p) + " does not occur in any constraint");
            }
            s.set(*i);
        }
        return s;
    }

    std::vector<Pair> to_pairs(const PairSet& s) const {
        std::vector<Pair> out;
        for_each_member(s, [&](std::size_t i) { out.push_back(pairs_[i]); });
        return out;
    }

    PairSet sources() const {
        PairSet s(size());
        for (const auto& l : links_) {
            s.set(l.source);
        }
        return s;
    }

    PairSet targets() const {
        PairSet s(size());
        for (const auto& l : links_) {
            s.set(l.target);
        }
        return s;
    }

private:
    std::vector<ZipperConstraint> constraints_;
    std::vector<Pair> pairs_;
    std::vector<Link> links_;
    std::vector<PairSet> successors_;
    std::vector<PairSet> downstream_;
    std::vector<PairSet> upstream_;
};

// Directed graph over a domain of pairs. `edges` holds the one-step relation
// restricted to the domain; `downstream`/`upstream` hold the strict
// downstream relation of the whole collection restricted to the domain, so a
// path leaving the domain and coming back still counts.
struct PairGraph {
    std::vector<std::size_t> pair_index;  // vertex -> index in the ZipperSystem
    std::vector<Pair> vertices;
    std::size_t universe = 0;
    std::vector<std::vector<std::size_t>> edges;
    std::vector<IndexSet> downstream;
    std::vector<IndexSet> upstream;

    std::size_t size() const { return vertices.size(); }

    PairSet domain() const {
        PairSet s(universe);
        for (auto i : pair_index) {
            s.set(i);
        }
        return s;
    }

    std::size_t edge_count() const {
        std::size_t total = 0;
        for (const auto& e : edges) {
            total += e.size();
        }
        return total;
    }
};

inline PairGraph build_pair_graph(const ZipperSystem& zs, const PairSet& domain) {
    if (domain.size() != zs.size()) {
        throw InputError("domain is not a set over this constraint collection's pairs");
    }
    PairGraph pg;
    pg.universe = zs.size();
    pg.pair_index = members(domain);
    std::vector<std::size_t> local(zs.size(), static_cast<std::size_t>(-1));
    for (std::size_t i = 0; i < pg.pair_index.size(); ++i) {
        local[pg.pair_index[i]] = i;
        pg.vertices.push_back(zs.pair(pg.pair_index[i]));
    }
    const auto k = pg.size();
    pg.edges.assign(k, {});
    pg.downstream.assign(k, IndexSet(k));
    pg.upstream.assign(k, IndexSet(k));
    for (std::size_t i = 0; i < k; ++i) {
        const auto gi = pg.pair_index[i];
        for_each_member(zs.successors(gi), [&](std::size_t gj) {
            if (domain.test(gj)) {
                pg.edges[i].push_back(local[gj]);
            }
        });
        for_each_member(zs.downstream(gi), [&](std::size_t gj) {
            if (domain.test(gj)) {
                pg.downstream[i].set(local[gj]);
                pg.upstream[local[gj]].set(i);
            }
        });
    }
    return pg;
}

// Pair classes under mutual downstream reachability, partially ordered by
// the lifted downstream relation.
struct PairPoset {
    std::vector<std::vector<Pair>> classes;
    std::vector<std::size_t> class_of;    // pair graph vertex -> class
    std::vector<IndexSet> below;          // class i strictly precedes every class in below[i]
    std::vector<std::pair<std::size_t, std::size_t>> cover_edges;  // Hasse diagram
    std::size_t height = 0;               // longest chain, counted in edges
    std::size_t width = 0;                // largest antichain
};

namespace detail {

// Kuhn's augmenting paths on the comparability bipartite graph.
inline std::size_t max_comparability_matching(const std::vector<IndexSet>& below) {
    const auto k = below.size();
    std::vector<std::size_t> match_right(k, static_cast<std::size_t>(-1));
    std::vector<char> seen;
    auto augment = [&](auto&& self, std::size_t u) -> bool {
        for (auto v = below[u].find_first(); v != IndexSet::npos; v = below[u].find_next(v)) {
            if (seen[v]) {
                continue;
            }
            seen[v] = 1;
            if (match_right[v] == static_cast<std::size_t>(-1) || self(self, match_right[v])) {
                match_right[v] = u;
                return true;
            }
        }
        return false;
    };
    std::size_t matched = 0;
    for (std::size_t u = 0; u < k; ++u) {
        seen.assign(k, 0);
        if (augment(augment, u)) {
            ++matched;
        }
    }
    return matched;
}

}  // namespace detail

// Height of a transitively closed strict order given as successor sets.
inline std::size_t poset_height(const std::vector<IndexSet>& below) {
    const auto k = below.size();
    std::vector<std::optional<std::size_t>> memo(k);
    auto longest = [&](auto&& self, std::size_t i) -> std::size_t {
        if (memo[i]) {
            return *memo[i];
        }
        std::size_t best = 0;
        for_each_member(below[i], [&](std::size_t j) { best = std::max(best, 1 + self(self, j)); });
        memo[i] = best;
        return best;
    };
    std::size_t h = 0;
    for (std::size_t i = 0; i < k; ++i) {
        h = std::max(h, longest(longest, i));
    }
    return h;
}

// Width of a transitively closed strict order: by Dilworth, the number of
// elements minus a maximum matching in the comparability bipartite graph.
inline std::size_t poset_width(const std::vector<IndexSet>& below) {
    return below.size() - detail::max_comparability_matching(below);
}

inline PairPoset condensation_poset(const PairGraph& pg) {
    const auto k = pg.size();
    PairPoset poset;
    poset.class_of.assign(k, static_cast<std::size_t>(-1));
    for (std::size_t i = 0; i < k; ++i) {
        if (poset.class_of[i] != static_cast<std::size_t>(-1)) {
            continue;
        }
        const auto c = poset.classes.size();
        IndexSet cls = pg.downstream[i] & pg.upstream[i];
        cls.set(i);
        poset.classes.emplace_back();
        for_each_member(cls, [&](std::size_t j) {
            poset.class_of[j] = c;
            poset.classes[c].push_back(pg.vertices[j]);
        });
    }
    const auto nc = poset.classes.size();
    poset.below.assign(nc, IndexSet(nc));
    for (std::size_t i = 0; i < k; ++i) {
        for_each_member(pg.downstream[i], [&](std::size_t j) {
            if (poset.class_of[i] != poset.class_of[j]) {
                poset.below[poset.class_of[i]].set(poset.class_of[j]);
            }
        });
    }
    for (std::size_t a = 0; a < nc; ++a) {
        for_each_member(poset.below[a], [&](std::size_t b) {
            // covering relation: no class strictly between a and b
            bool direct = true;
            for_each_member(poset.below[a], [&](std::size_t c) {
                if (c != b && poset.below[c].test(b)) {
                    direct = false;
                }
            });
            if (direct) {
                poset.cover_edges.emplace_back(a, b);
            }
        });
    }
    poset.height = poset_height(poset.below);
    poset.width = poset_width(poset.below);
    return poset;
}

// Upper bound (2 + height)^width on the number of downstream-enabled
// prescriptions; saturates at the largest uint64_t.
inline std::uint64_t prescription_bound(std::size_t height, std::size_t width) {
    std::uint64_t bound = 1;
    const std::uint64_t base = 2 + static_cast<std::uint64_t>(height);
    for (std::size_t i = 0; i < width; ++i) {
        if (bound > std::numeric_limits<std::uint64_t>::max() / base) {
            return std::numeric_limits<std::uint64_t>::max();
        }
        bound *= base;
    }
    return bound;
}

}  // namespace zipcover

#endif /* zipcover_zipper_hpp */
