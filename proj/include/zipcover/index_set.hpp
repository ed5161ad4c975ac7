#ifndef zipcover_index_set_hpp
#define zipcover_index_set_hpp

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <vector>

#include <boost/dynamic_bitset.hpp>

namespace zipcover {

// Fixed-universe set of small integer ids (states, graph vertices, or
// indices into a pair table).
using IndexSet = boost::dynamic_bitset<std::uint64_t>;
using VertexSet = IndexSet;
using PairSet = IndexSet;

inline IndexSet make_set(std::size_t universe, std::initializer_list<std::size_t> members) {
    IndexSet s(universe);
    for (auto m : members) {
        s.set(m);
    }
    return s;
}

inline IndexSet make_set(std::size_t universe, const std::vector<std::size_t>& members) {
    IndexSet s(universe);
    for (auto m : members) {
        s.set(m);
    }
    return s;
}

template <class Fn>
void for_each_member(const IndexSet& s, Fn&& fn) {
    for (auto i = s.find_first(); i != IndexSet::npos; i = s.find_next(i)) {
        fn(static_cast<std::size_t>(i));
    }
}

inline std::vector<std::size_t> members(const IndexSet& s) {
    std::vector<std::size_t> out;
    out.reserve(s.count());
    for_each_member(s, [&](std::size_t i) { out.push_back(i); });
    return out;
}

// Lexicographic order on the sorted member lists. Unlike the bitset's own
// operator< this is independent of the universe size.
inline bool canonical_less(const IndexSet& a, const IndexSet& b) {
    auto i = a.find_first();
    auto j = b.find_first();
    while (i != IndexSet::npos && j != IndexSet::npos) {
        if (i != j) {
            return i < j;
        }
        i = a.find_next(i);
        j = b.find_next(j);
    }
    return i == IndexSet::npos && j != IndexSet::npos;
}

}  // namespace zipcover

#endif /* zipcover_index_set_hpp */
