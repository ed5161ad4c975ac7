#ifndef zipcover_prescription_hpp
#define zipcover_prescription_hpp

#include <cstddef>
#include <type_traits>
#include <utility>
#include <vector>

#include "zipcover/error.hpp"
#include "zipcover/index_set.hpp"
#include "zipcover/zipper.hpp"

namespace zipcover {

// ON/OFF assignment to a domain of pairs. Both sets index the pair table of
// a ZipperSystem; OFF pairs are domain minus on.
struct Prescription {
    PairSet domain;
    PairSet on;

    PairSet off() const { return domain - on; }

    friend bool operator==(const Prescription&, const Prescription&) = default;
};

// ON status must flow downstream: an ON pair's downstream pairs are either ON
// or outside the domain. Uses the strict downstream relation of the whole
// collection, not only of the domain.
inline bool is_downstream_enabled(const Prescription& p, const ZipperSystem& zs) {
    if (!p.on.is_subset_of(p.domain)) {
        return false;
    }
    const auto off = p.off();
    bool ok = true;
    for_each_member(p.on, [&](std::size_t i) {
        if (zs.downstream(i).intersects(off)) {
            ok = false;
        }
    });
    return ok;
}

namespace detail {

template <class Visitor>
bool enum_ds_rec(const PairGraph& pg, IndexSet alive, IndexSet on, Visitor& emit) {
    if (alive.none()) {
        return emit(on);
    }
    // pivot: the live pair with the most live downstream pairs, lowest index on ties
    std::size_t pivot = alive.find_first();
    std::size_t best = 0;
    for_each_member(alive, [&](std::size_t i) {
        const auto count = (pg.downstream[i] & alive).count();
        if (count > best) {
            best = count;
            pivot = i;
        }
    });

    // OFF: the pivot and everything upstream of it are OFF
    IndexSet off_removed = pg.upstream[pivot] & alive;
    off_removed.set(pivot);
    if (!enum_ds_rec(pg, alive - off_removed, on, emit)) {
        return false;
    }

    // ON: the pivot and everything downstream of it are ON
    IndexSet on_added = pg.downstream[pivot] & alive;
    on_added.set(pivot);
    return enum_ds_rec(pg, alive - on_added, on | on_added, emit);
}

}  // namespace detail

// Streams every downstream-enabled prescription on the pair graph's domain
// exactly once. The visitor receives a `const Prescription&`; if it returns
// bool, returning false stops the enumeration.
template <class Visitor>
void enum_ds(const PairGraph& pg, Visitor&& visit) {
    const auto domain = pg.domain();
    auto emit = [&](const IndexSet& local_on) -> bool {
        Prescription p{domain, PairSet(pg.universe)};
        for_each_member(local_on, [&](std::size_t i) { p.on.set(pg.pair_index[i]); });
        if constexpr (std::is_same_v<std::invoke_result_t<Visitor&, const Prescription&>, bool>) {
            return visit(static_cast<const Prescription&>(p));
        } else {
            visit(static_cast<const Prescription&>(p));
            return true;
        }
    };
    IndexSet alive(pg.size());
    alive.set();
    detail::enum_ds_rec(pg, alive, IndexSet(pg.size()), emit);
}

inline std::vector<Prescription> enumerate_prescriptions(const PairGraph& pg) {
    std::vector<Prescription> out;
    enum_ds(pg, [&](const Prescription& p) { out.push_back(p); });
    return out;
}

// Grows the domain by the outside pairs forced by the prescription: those
// upstream of an OFF pair become OFF, those downstream of an ON pair become ON.
inline Prescription boundary_inclusion(const Prescription& p, const ZipperSystem& zs) {
    if (!is_downstream_enabled(p, zs)) {
        throw ContractViolation("boundary inclusion needs a downstream-enabled prescription");
    }
    const PairSet outside = ~p.domain;
    PairSet forced_off(zs.size());
    PairSet forced_on(zs.size());
    for_each_member(p.off(), [&](std::size_t i) { forced_off |= zs.upstream(i) & outside; });
    for_each_member(p.on, [&](std::size_t i) { forced_on |= zs.downstream(i) & outside; });
    return {p.domain | forced_off | forced_on, p.on | forced_on};
}

}  // namespace zipcover

#endif /* zipcover_prescription_hpp */
