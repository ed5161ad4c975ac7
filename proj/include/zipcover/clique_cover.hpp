#ifndef zipcover_clique_cover_hpp
#define zipcover_clique_cover_hpp

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "zipcover/error.hpp"
#include "zipcover/graph.hpp"
#include "zipcover/index_set.hpp"

namespace zipcover {

// Collection of cliques jointly covering every vertex. Cliques may overlap.
struct CliqueCover {
    std::size_t vertex_count = 0;
    std::vector<VertexSet> cliques;

    std::size_t size() const { return cliques.size(); }

    friend bool operator==(const CliqueCover&, const CliqueCover&) = default;
};

inline CliqueCover singleton_cover(std::size_t n) {
    CliqueCover cover{n, {}};
    for (std::size_t v = 0; v < n; ++v) {
        cover.cliques.push_back(make_set(n, {v}));
    }
    return cover;
}

inline CliqueCover make_cover(std::size_t n, const std::vector<std::vector<std::size_t>>& sets) {
    CliqueCover cover{n, {}};
    for (const auto& s : sets) {
        cover.cliques.push_back(make_set(n, s));
    }
    return cover;
}

// Drops empty and repeated cliques, keeping first occurrences in order.
inline CliqueCover deduplicate(CliqueCover cover) {
    std::vector<VertexSet> kept;
    for (auto& k : cover.cliques) {
        if (k.none() || std::find(kept.begin(), kept.end(), k) != kept.end()) {
            continue;
        }
        kept.push_back(std::move(k));
    }
    cover.cliques = std::move(kept);
    return cover;
}

inline std::vector<std::vector<std::size_t>> as_lists(const CliqueCover& cover) {
    std::vector<std::vector<std::size_t>> out;
    for (const auto& k : cover.cliques) {
        out.push_back(members(k));
    }
    return out;
}

enum class CoverViolationCode { WrongUniverse, EmptyClique, NotAClique, DuplicateClique, Uncovered };

inline const char* to_string(CoverViolationCode code) {
    switch (code) {
        case CoverViolationCode::WrongUniverse: return "WrongUniverse";
        case CoverViolationCode::EmptyClique: return "EmptyClique";
        case CoverViolationCode::NotAClique: return "NotAClique";
        case CoverViolationCode::DuplicateClique: return "DuplicateClique";
        case CoverViolationCode::Uncovered: return "Uncovered";
    }
    return "Unknown";
}

struct CoverViolation {
    CoverViolationCode code;
    std::size_t index;  // clique index, or vertex for Uncovered

    friend bool operator==(const CoverViolation&, const CoverViolation&) = default;
};

inline std::vector<CoverViolation> verify_cover(const Graph& g, const CliqueCover& cover) {
    std::vector<CoverViolation> out;
    if (cover.vertex_count != g.size()) {
        out.push_back({CoverViolationCode::WrongUniverse, cover.vertex_count});
        return out;
    }
    VertexSet covered(g.size());
    for (std::size_t i = 0; i < cover.cliques.size(); ++i) {
        const auto& k = cover.cliques[i];
        if (k.size() != g.size()) {
            out.push_back({CoverViolationCode::WrongUniverse, i});
            continue;
        }
        if (k.none()) {
            out.push_back({CoverViolationCode::EmptyClique, i});
        } else if (!g.is_clique(k)) {
            out.push_back({CoverViolationCode::NotAClique, i});
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (cover.cliques[j] == k) {
                out.push_back({CoverViolationCode::DuplicateClique, i});
                break;
            }
        }
        covered |= k;
    }
    for (std::size_t v = 0; v < g.size(); ++v) {
        if (!covered.test(v)) {
            out.push_back({CoverViolationCode::Uncovered, v});
        }
    }
    return out;
}

// First-fit: each uncovered vertex (in id order) seeds a clique, which then
// absorbs compatible uncovered vertices by id, then covered ones.
inline CliqueCover greedy_cover(const Graph& g) {
    const auto n = g.size();
    CliqueCover cover{n, {}};
    VertexSet covered(n);
    for (std::size_t v = 0; v < n; ++v) {
        if (covered.test(v)) {
            continue;
        }
        VertexSet clique = make_set(n, {v});
        VertexSet candidates = g.adjacent(v);
        for (bool fresh : {true, false}) {
            for (std::size_t w = 0; w < n; ++w) {
                if (candidates.test(w) && covered.test(w) != fresh) {
                    clique.set(w);
                    candidates &= g.adjacent(w);
                }
            }
        }
        covered |= clique;
        cover.cliques.push_back(std::move(clique));
    }
    return cover;
}

namespace detail {

// Exact colouring of the complement graph by DSATUR branch and bound. Each
// colour class is an independent set of the complement, i.e. a clique of G.
class CoverSearch {
public:
    CoverSearch(const Graph& g, std::size_t limit)
        : n_(g.size()), conflict_(g.complement()), colour_(n_, kNone), best_size_(limit) {}

    // Finds a colouring with fewer than `limit` colours if one exists.
    std::optional<std::vector<VertexSet>> run() {
        seed_clique();
        search(seeded_, classes_.size());
        return best_;
    }

    std::size_t lower_bound() const { return lower_bound_; }

private:
    static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

    // Greedy clique of the complement (an independent set of G); its vertices
    // need pairwise different colours, so they are pre-coloured 0..k-1.
    void seed_clique() {
        VertexSet clique(n_);
        VertexSet candidates(n_);
        candidates.set();
        while (candidates.any()) {
            std::size_t pick = candidates.find_first();
            std::size_t pick_degree = 0;
            for_each_member(candidates, [&](std::size_t v) {
                const auto d = (conflict_.adjacent(v) & candidates).count();
                if (d > pick_degree) {
                    pick = v;
                    pick_degree = d;
                }
            });
            clique.set(pick);
            candidates &= conflict_.adjacent(pick);
        }
        for_each_member(clique, [&](std::size_t v) { assign(v, classes_.size()); });
        seeded_ = clique.count();
        lower_bound_ = seeded_;
    }

    void assign(std::size_t v, std::size_t c) {
        if (c == classes_.size()) {
            classes_.emplace_back(n_);
        }
        classes_[c].set(v);
        colour_[v] = c;
    }

    void unassign(std::size_t v) {
        const auto c = colour_[v];
        classes_[c].reset(v);
        colour_[v] = kNone;
        if (c + 1 == classes_.size() && classes_[c].none()) {
            classes_.pop_back();
        }
    }

    std::size_t pick_vertex() const {
        std::size_t pick = kNone;
        std::size_t pick_sat = 0;
        std::size_t pick_degree = 0;
        for (std::size_t v = 0; v < n_; ++v) {
            if (colour_[v] != kNone) {
                continue;
            }
            std::size_t sat = 0;
            for (const auto& cls : classes_) {
                if (conflict_.adjacent(v).intersects(cls)) {
                    ++sat;
                }
            }
            std::size_t degree = 0;
            for_each_member(conflict_.adjacent(v), [&](std::size_t w) {
                if (colour_[w] == kNone) {
                    ++degree;
                }
            });
            if (pick == kNone || sat > pick_sat || (sat == pick_sat && degree > pick_degree)) {
                pick = v;
                pick_sat = sat;
                pick_degree = degree;
            }
        }
        return pick;
    }

    void search(std::size_t coloured, std::size_t used) {
        if (done_) {
            return;
        }
        if (used >= best_size_) {
            return;
        }
        if (coloured == n_) {
            best_size_ = used;
            best_ = classes_;
            done_ = best_size_ <= lower_bound_;
            return;
        }
        const auto v = pick_vertex();
        for (std::size_t c = 0; c < used; ++c) {
            if (!conflict_.adjacent(v).intersects(classes_[c])) {
                assign(v, c);
                search(coloured + 1, used);
                unassign(v);
                if (done_) {
                    return;
                }
            }
        }
        if (used + 1 < best_size_) {
            assign(v, used);
            search(coloured + 1, used + 1);
            unassign(v);
        }
    }

    std::size_t n_;
    Graph conflict_;
    std::vector<std::size_t> colour_;
    std::vector<VertexSet> classes_;
    std::size_t seeded_ = 0;
    std::size_t lower_bound_ = 0;
    std::size_t best_size_;
    std::optional<std::vector<VertexSet>> best_;
    bool done_ = false;
};

}  // namespace detail

// Minimum-cardinality clique cover. The result is a partition into cliques,
// ordered by smallest member. `upper_bound`, when given, must be achievable;
// it only prunes the search.
inline CliqueCover min_clique_cover(const Graph& g, std::optional<std::size_t> upper_bound = {}) {
    const auto n = g.size();
    if (n == 0) {
        return {0, {}};
    }
    CliqueCover greedy = greedy_cover(g);
    std::size_t limit = greedy.size();
    const bool bounded = upper_bound && *upper_bound < limit;
    if (bounded) {
        limit = *upper_bound + 1;
    }
    detail::CoverSearch search(g, limit);
    auto found = search.run();
    CliqueCover cover{n, {}};
    if (found) {
        cover.cliques = std::move(*found);
    } else if (!bounded) {
        // greedy is already optimal; turn it into a partition for a uniform shape
        VertexSet taken(n);
        for (const auto& k : greedy.cliques) {
            cover.cliques.push_back(k - taken);
            taken |= k;
        }
    } else {
        throw ContractViolation("upper bound " + std::to_string(*upper_bound) +
                                " is below the minimum clique cover size");
    }
    std::sort(cover.cliques.begin(), cover.cliques.end(), canonical_less);
    return cover;
}

}  // namespace zipcover

#endif /* zipcover_clique_cover_hpp */
