#ifndef zipcover_augmentation_hpp
#define zipcover_augmentation_hpp

#include <cstddef>
#include <vector>

#include "zipcover/clique_cover.hpp"
#include "zipcover/error.hpp"
#include "zipcover/graph.hpp"
#include "zipcover/index_set.hpp"
#include "zipcover/prescription.hpp"
#include "zipcover/zipper.hpp"

namespace zipcover {

// Graph whose vertices are the original vertices ("prior" copies, ids
// 0..n-1) followed by one new vertex per ON pair (ids n.., in pair order).
// Two vertices are adjacent iff the union of their underlying state sets is a
// clique once OFF pairs are removed from the original graph.
struct AugmentedGraph {
    Graph graph;
    std::size_t prior_count = 0;
    std::vector<Pair> new_pairs;          // underlying pair of vertex prior_count + i
    std::vector<VertexSet> underlying;    // vertex -> set of original vertices
    Graph reduced;                        // original graph minus OFF pairs

    std::size_t size() const { return graph.size(); }
    bool is_prior(std::size_t v) const { return v < prior_count; }
};

inline AugmentedGraph augment(const Graph& g, const ZipperSystem& zs, const Prescription& p) {
    const auto n = g.size();
    for_each_member(p.domain, [&](std::size_t i) {
        if (!g.has_edge(zs.pair(i))) {
            throw InputError("prescribed pair " + to_string(zs.pair(i)) +
                             " is not an edge of the graph");
        }
    });

    AugmentedGraph aug;
    aug.prior_count = n;
    aug.reduced = g;
    for_each_member(p.off(), [&](std::size_t i) {
        aug.reduced.remove_edge(zs.pair(i).first, zs.pair(i).second);
    });
    for (std::size_t v = 0; v < n; ++v) {
        aug.underlying.push_back(make_set(n, {v}));
    }
    for_each_member(p.on, [&](std::size_t i) {
        const auto& pr = zs.pair(i);
        aug.new_pairs.push_back(pr);
        aug.underlying.push_back(make_set(n, {pr.first, pr.second}));
    });

    const auto total = aug.underlying.size();
    aug.graph = Graph(total);
    for (std::size_t a = 0; a < total; ++a) {
        for (std::size_t b = a + 1; b < total; ++b) {
            if (aug.reduced.is_clique(aug.underlying[a] | aug.underlying[b])) {
                aug.graph.add_edge(a, b);
            }
        }
    }
    return aug;
}

// Union of the underlying state sets.
inline VertexSet distill(const AugmentedGraph& aug, const VertexSet& plus_set) {
    VertexSet out(aug.prior_count);
    for_each_member(plus_set, [&](std::size_t v) { out |= aug.underlying.at(v); });
    return out;
}

// Maps a cover of G+ to a cover of G, merging cliques that distil to the same
// set.
inline CliqueCover distill(const AugmentedGraph& aug, const CliqueCover& cover_plus) {
    if (!verify_cover(aug.graph, cover_plus).empty()) {
        throw ContractViolation("distill needs a clique cover of the augmented graph");
    }
    CliqueCover out{aug.prior_count, {}};
    for (const auto& k : cover_plus.cliques) {
        out.cliques.push_back(distill(aug, k));
    }
    return deduplicate(std::move(out));
}

// Every augmented vertex whose underlying set lies inside s.
inline VertexSet expand(const AugmentedGraph& aug, const VertexSet& s) {
    VertexSet out(aug.size());
    for (std::size_t v = 0; v < aug.size(); ++v) {
        if (aug.underlying[v].is_subset_of(s)) {
            out.set(v);
        }
    }
    return out;
}

inline CliqueCover expand(const AugmentedGraph& aug, const CliqueCover& cover) {
    CliqueCover out{aug.size(), {}};
    for (const auto& k : cover.cliques) {
        out.cliques.push_back(expand(aug, k));
    }
    return out;
}

// Faithful: every ON pair shares some clique, no OFF pair does.
inline bool is_faithful(const CliqueCover& cover, const ZipperSystem& zs, const Prescription& p) {
    auto merged = [&](const Pair& pr) {
        for (const auto& k : cover.cliques) {
            if (k.test(pr.first) && k.test(pr.second)) {
                return true;
            }
        }
        return false;
    };
    bool ok = true;
    for_each_member(p.on, [&](std::size_t i) { ok = ok && merged(zs.pair(i)); });
    for_each_member(p.off(), [&](std::size_t i) { ok = ok && !merged(zs.pair(i)); });
    return ok;
}

}  // namespace zipcover

#endif /* zipcover_augmentation_hpp */
