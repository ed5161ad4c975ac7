#ifndef zipcover_graph_hpp
#define zipcover_graph_hpp

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "zipcover/error.hpp"
#include "zipcover/index_set.hpp"

namespace zipcover {

// Unordered pair of distinct vertices, stored with first < second.
struct Pair {
    std::size_t first = 0;
    std::size_t second = 0;

    Pair() = default;
    Pair(std::size_t a, std::size_t b) : first(a < b ? a : b), second(a < b ? b : a) {
        if (a == b) {
            throw InputError("a pair needs two distinct vertices, got " + std::to_string(a) +
                             " twice");
        }
    }

    bool contains(std::size_t v) const { return v == first || v == second; }

    friend bool operator==(const Pair&, const Pair&) = default;
    friend auto operator<=>(const Pair&, const Pair&) = default;
};

inline std::string to_string(const Pair& p) {
    return "{" + std::to_string(p.first) + "," + std::to_string(p.second) + "}";
}

// Simple undirected graph with bit-set adjacency. Self-loops are never
// stored.
class Graph {
public:
    Graph() = default;
    explicit Graph(std::size_t n) : adjacency_(n, VertexSet(n)) {}

    std::size_t size() const { return adjacency_.size(); }

    void add_edge(std::size_t u, std::size_t v) {
        check_vertex(u);
        check_vertex(v);
        if (u == v) {
            throw InputError("self-loop at vertex " + std::to_string(u));
        }
        adjacency_[u].set(v);
        adjacency_[v].set(u);
    }

    void remove_edge(std::size_t u, std::size_t v) {
        check_vertex(u);
        check_vertex(v);
        adjacency_[u].reset(v);
        adjacency_[v].reset(u);
    }

    bool has_edge(std::size_t u, std::size_t v) const {
        check_vertex(u);
        check_vertex(v);
        return adjacency_[u].test(v);
    }

    bool has_edge(const Pair& p) const { return has_edge(p.first, p.second); }

    const VertexSet& adjacent(std::size_t v) const {
        check_vertex(v);
        return adjacency_[v];
    }

    std::size_t degree(std::size_t v) const { return adjacent(v).count(); }

    std::size_t edge_count() const {
        std::size_t twice = 0;
        for (const auto& row : adjacency_) {
            twice += row.count();
        }
        return twice / 2;
    }

    std::vector<Pair> edges() const {
        std::vector<Pair> out;
        for (std::size_t u = 0; u < size(); ++u) {
            for_each_member(adjacency_[u], [&](std::size_t v) {
                if (u < v) {
                    out.emplace_back(u, v);
                }
            });
        }
        return out;
    }

    bool is_clique(const VertexSet& s) const {
        bool ok = true;
        for_each_member(s, [&](std::size_t v) {
            if (!ok) {
                return;
            }
            VertexSet others = s;
            others.reset(v);
            ok = others.is_subset_of(adjacency_[v]);
        });
        return ok;
    }

    Graph complement() const {
        Graph out(size());
        for (std::size_t v = 0; v < size(); ++v) {
            out.adjacency_[v] = ~adjacency_[v];
            out.adjacency_[v].reset(v);
        }
        return out;
    }

    friend bool operator==(const Graph&, const Graph&) = default;

private:
    void check_vertex(std::size_t v) const {
        if (v >= size()) {
            throw InputError("vertex " + std::to_string(v) + " out of range (graph has " +
                             std::to_string(size()) + " vertices)");
        }
    }

    std::vector<VertexSet> adjacency_;
};

}  // namespace zipcover

#endif /* zipcover_graph_hpp */
