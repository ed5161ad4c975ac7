#ifndef zipcover_mzcc_hpp
#define zipcover_mzcc_hpp

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <optional>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include "zipcover/augmentation.hpp"
#include "zipcover/clique_cover.hpp"
#include "zipcover/compatibility.hpp"
#include "zipcover/error.hpp"
#include "zipcover/filter.hpp"
#include "zipcover/graph.hpp"
#include "zipcover/prescription.hpp"
#include "zipcover/zipper.hpp"

namespace zipcover {

// Minimum zipped clique cover instance: a graph plus zipper constraints whose
// pairs are edges of the graph.
struct MzccInstance {
    Graph graph;
    std::vector<ZipperConstraint> constraints;
    std::vector<std::string> symbols;  // optional names for constraint symbols
};

inline void check_instance(const MzccInstance& inst) {
    for (const auto& c : inst.constraints) {
        for (const auto& p : {c.source, c.target}) {
            if (p.second >= inst.graph.size() || !inst.graph.has_edge(p)) {
                throw InputError("constraint " + to_string(c) + " uses pair " + to_string(p) +
                                 ", which is not an edge of the graph");
            }
        }
    }
}

inline MzccInstance instance_from_filter(const Filter& filter) {
    MzccInstance inst;
    inst.graph = build_compatibility_graph(filter);
    inst.constraints = build_zipper_constraints(filter, inst.graph);
    inst.symbols = filter.observations();
    return inst;
}

inline bool merged(const CliqueCover& cover, const Pair& p) {
    return std::any_of(cover.cliques.begin(), cover.cliques.end(), [&](const VertexSet& k) {
        return k.test(p.first) && k.test(p.second);
    });
}

inline bool satisfies(const CliqueCover& cover, const ZipperConstraint& c) {
    return !merged(cover, c.source) || merged(cover, c.target);
}

// satisfied[i] for each constraint i
inline std::vector<bool> satisfied_constraints(const CliqueCover& cover,
                                               const std::vector<ZipperConstraint>& constraints) {
    std::vector<bool> out;
    out.reserve(constraints.size());
    for (const auto& c : constraints) {
        out.push_back(satisfies(cover, c));
    }
    return out;
}

struct ZipperViolated {
    std::size_t constraint;  // index into the instance's constraint list

    friend bool operator==(const ZipperViolated&, const ZipperViolated&) = default;
};

using ZippedCoverViolation = std::variant<CoverViolation, ZipperViolated>;

inline std::vector<ZippedCoverViolation> verify_zipped_cover(const MzccInstance& inst,
                                                             const CliqueCover& cover) {
    std::vector<ZippedCoverViolation> out;
    for (const auto& v : verify_cover(inst.graph, cover)) {
        out.emplace_back(v);
    }
    if (!out.empty()) {
        return out;
    }
    for (std::size_t i = 0; i < inst.constraints.size(); ++i) {
        if (!satisfies(cover, inst.constraints[i])) {
            out.emplace_back(ZipperViolated{i});
        }
    }
    return out;
}

inline std::string describe(const std::vector<ZippedCoverViolation>& violations,
                            const MzccInstance& inst) {
    std::string msg;
    for (const auto& v : violations) {
        if (!msg.empty()) {
            msg += "; ";
        }
        if (const auto* cv = std::get_if<CoverViolation>(&v)) {
            msg += to_string(cv->code);
            msg += "(" + std::to_string(cv->index) + ")";
        } else {
            const auto& zv = std::get<ZipperViolated>(v);
            const auto& c = inst.constraints[zv.constraint];
            const auto name =
                c.symbol < inst.symbols.size() ? inst.symbols[c.symbol] : std::to_string(c.symbol);
            msg += "ZipperViolated(<" + to_string(c.source) + "," + to_string(c.target) + ">_" +
                   name + ")";
        }
    }
    return msg;
}

// Grows cliques along neighbourhood containment so that every constraint
// with both pairs in `r_under` holds, without adding cliques. For a target
// pair {u,w} with N(u) a subset of N(w), w joins every clique holding u.
inline CliqueCover repair(const CliqueCover& cover, const PairSet& r_under, const Graph& g,
                          const ZipperSystem& zs) {
    std::vector<std::size_t> interior;
    PairSet queued(zs.size());
    for (const auto& link : zs.links()) {
        if (r_under.test(link.source) && r_under.test(link.target) && !queued.test(link.target)) {
            queued.set(link.target);
            interior.push_back(link.target);
        }
    }
    for_each_member(r_under, [&](std::size_t i) {
        const auto& p = zs.pair(i);
        if (!comparable_neighborhoods(g, p.first, p.second)) {
            throw ContractViolation("repair needs comparable neighbourhoods, pair " + to_string(p) +
                                    " has none");
        }
    });

    CliqueCover out = cover;
    for (auto i : interior) {
        const auto& p = zs.pair(i);
        std::size_t keep = p.first;
        std::size_t grow = p.second;
        if (!neighborhood(g, p.first).is_subset_of(neighborhood(g, p.second))) {
            std::swap(keep, grow);
        }
        for (auto& k : out.cliques) {
            if (k.test(keep)) {
                k.set(grow);
            }
        }
    }
    return deduplicate(std::move(out));
}

inline CliqueCover repair(const CliqueCover& cover, const std::vector<Pair>& r_under,
                          const Graph& g, const ZipperSystem& zs) {
    return repair(cover, zs.to_set(r_under), g, zs);
}

enum class SolveMode {
    Full,      // enumerate over Z^2 minus the repairable pairs, then repair
    NoRepair   // enumerate over all of Z^2
};

struct SolveOptions {
    SolveMode mode = SolveMode::Full;
    std::size_t jobs = 1;
    bool keep_log = true;
    // also run the other mode and fail loudly if the optimum differs
    bool cross_check = false;
    // On instances not derived from a filter the repair step can break a
    // constraint outside the repaired pairs. When set, such a failure reruns
    // the solve without repair instead of throwing; the report says so.
    bool repair_fallback = false;
};

// A repaired cover failed verification.
class RepairFailure : public InternalError {
public:
    using InternalError::InternalError;
};

struct PrescriptionRecord {
    std::size_t index = 0;
    Prescription prescription;   // as enumerated, on D
    Prescription included;       // after boundary inclusion
    std::size_t augmented_vertices = 0;
    std::size_t plus_size = 0;       // minimum cover of G+
    std::size_t distilled_size = 0;
    std::size_t repaired_size = 0;
};

struct PosetStats {
    std::size_t pairs = 0;        // |Z^2|
    std::size_t repairable = 0;   // |R|
    std::size_t domain = 0;       // |D|
    std::size_t classes = 0;
    std::size_t height = 0;       // of the domain's pair poset
    std::size_t width = 0;
    std::uint64_t bound = 1;      // (2 + height)^width
};

struct SolveReport {
    CliqueCover best;
    std::optional<std::size_t> best_index;  // absent when the singletons won
    std::size_t prescriptions = 0;
    std::vector<PrescriptionRecord> log;
    PosetStats stats;
    double elapsed_ms = 0.0;
    bool fell_back = false;  // Full mode gave up on repair and ran NoRepair
};

namespace detail {

struct Evaluation {
    PrescriptionRecord record;
    CliqueCover cover;
};

struct SolveContext {
    const MzccInstance& inst;
    const ZipperSystem& zs;
    PairSet repairable;
};

inline Evaluation evaluate_prescription(const SolveContext& ctx, std::size_t index,
                                        const Prescription& p) {
    Evaluation ev;
    ev.record.index = index;
    ev.record.prescription = p;
    ev.record.included = boundary_inclusion(p, ctx.zs);
    const auto aug = augment(ctx.inst.graph, ctx.zs, ev.record.included);
    ev.record.augmented_vertices = aug.size();
    const auto cover_plus = min_clique_cover(aug.graph);
    ev.record.plus_size = cover_plus.size();
    const auto distilled = distill(aug, cover_plus);
    ev.record.distilled_size = distilled.size();
    if (!is_faithful(distilled, ctx.zs, ev.record.included)) {
        throw InternalError("distilled cover is not faithful to prescription " +
                            std::to_string(index));
    }
    ev.cover = repair(distilled, ctx.repairable - ev.record.included.domain, ctx.inst.graph,
                      ctx.zs);
    ev.record.repaired_size = ev.cover.size();
    const auto violations = verify_zipped_cover(ctx.inst, ev.cover);
    if (!violations.empty()) {
        throw RepairFailure("repaired cover for prescription " + std::to_string(index) +
                            " fails verification: " + describe(violations, ctx.inst));
    }
    return ev;
}

inline SolveReport solve_once(const MzccInstance& inst, const SolveOptions& options) {
    const auto start = std::chrono::steady_clock::now();
    check_instance(inst);
    const ZipperSystem zs(inst.constraints);

    SolveContext ctx{inst, zs, zs.empty_set()};
    if (options.mode == SolveMode::Full) {
        ctx.repairable = zs.to_set(repairable_pairs(inst.graph, zs.pairs()));
    }
    const PairSet domain = zs.full_set() - ctx.repairable;
    const auto pg = build_pair_graph(zs, domain);
    const auto poset = condensation_poset(pg);

    SolveReport report;
    report.best = singleton_cover(inst.graph.size());
    report.stats.pairs = zs.size();
    report.stats.repairable = ctx.repairable.count();
    report.stats.domain = domain.count();
    report.stats.classes = poset.classes.size();
    report.stats.height = poset.height;
    report.stats.width = poset.width;
    report.stats.bound = prescription_bound(poset.height, poset.width);

    auto consider = [&](Evaluation&& ev) {
        if (ev.cover.size() < report.best.size()) {
            report.best = std::move(ev.cover);
            report.best_index = ev.record.index;
        }
        if (options.keep_log) {
            report.log.push_back(std::move(ev.record));
        }
    };

    const std::size_t jobs = std::max<std::size_t>(1, options.jobs);
    if (jobs == 1) {
        enum_ds(pg, [&](const Prescription& p) {
            consider(evaluate_prescription(ctx, report.prescriptions++, p));
        });
    } else {
        // Batches are evaluated in parallel, then folded in index order so the
        // result matches the serial run exactly.
        const std::size_t batch_size = jobs * 16;
        std::vector<Prescription> batch;
        auto flush = [&] {
            std::vector<std::optional<Evaluation>> results(batch.size());
            std::vector<std::exception_ptr> errors(batch.size());
            const std::size_t base = report.prescriptions;
            std::vector<std::thread> workers;
            for (std::size_t t = 0; t < jobs; ++t) {
                workers.emplace_back([&, t] {
                    for (std::size_t i = t; i < batch.size(); i += jobs) {
                        try {
                            results[i] = evaluate_prescription(ctx, base + i, batch[i]);
                        } catch (...) {
                            errors[i] = std::current_exception();
                        }
                    }
                });
            }
            for (auto& w : workers) {
                w.join();
            }
            for (std::size_t i = 0; i < batch.size(); ++i) {
                if (errors[i]) {
                    std::rethrow_exception(errors[i]);
                }
                consider(std::move(*results[i]));
            }
            report.prescriptions += batch.size();
            batch.clear();
        };
        enum_ds(pg, [&](const Prescription& p) {
            batch.push_back(p);
            if (batch.size() == batch_size) {
                flush();
            }
        });
        if (!batch.empty()) {
            flush();
        }
    }

    report.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    return report;
}

}  // namespace detail

// Enumerates downstream-enabled prescriptions on D = Z^2 minus the
// repairable pairs; for each one: boundary inclusion, augmentation, exact
// cover, distillation and repair. Keeps the smallest repaired cover (the
// singletons on ties with nothing smaller, otherwise the first found).
inline SolveReport solve_mzcc(const MzccInstance& inst, const SolveOptions& options = {}) {
    SolveReport report;
    try {
        report = detail::solve_once(inst, options);
    } catch (const RepairFailure&) {
        if (!options.repair_fallback || options.mode != SolveMode::Full) {
            throw;
        }
        SolveOptions plain = options;
        plain.mode = SolveMode::NoRepair;
        report = detail::solve_once(inst, plain);
        report.fell_back = true;
    }
    if (options.cross_check && !report.fell_back) {
        SolveOptions other = options;
        other.cross_check = false;
        other.keep_log = false;
        other.mode = options.mode == SolveMode::Full ? SolveMode::NoRepair : SolveMode::Full;
        const auto alt = detail::solve_once(inst, other);
        if (alt.best.size() != report.best.size()) {
            throw InternalError("solver modes disagree: " + std::to_string(report.best.size()) +
                                " vs " + std::to_string(alt.best.size()));
        }
    }
    return report;
}

// All cliques of g in canonical (lexicographic member) order.
inline std::vector<VertexSet> enumerate_cliques(const Graph& g) {
    const auto n = g.size();
    std::vector<VertexSet> out;
    VertexSet current(n);
    auto extend = [&](auto&& self, std::size_t from, const VertexSet& candidates) -> void {
        for (std::size_t v = from; v < n; ++v) {
            if (!candidates.test(v)) {
                continue;
            }
            current.set(v);
            out.push_back(current);
            self(self, v + 1, candidates & g.adjacent(v));
            current.reset(v);
        }
    };
    VertexSet all(n);
    all.set();
    extend(extend, 0, all);
    return out;
}

// Exhaustive search for a smallest zipped cover with at most max_size
// cliques. Iterative deepening; each step adds a clique holding the lowest
// uncovered vertex or, once everything is covered, a clique holding the
// target of the first violated constraint. Any zipped cover contains such a
// clique at every step, so the search is complete.
inline std::optional<CliqueCover> brute_force_mzcc(const MzccInstance& inst, std::size_t max_size,
                                                   std::size_t guard = 10) {
    const auto n = inst.graph.size();
    if (n > guard) {
        throw SizeError("brute-force MZCC is limited to " + std::to_string(guard) +
                        " vertices, got " + std::to_string(n));
    }
    check_instance(inst);
    if (n == 0) {
        return CliqueCover{0, {}};
    }
    const auto cliques = enumerate_cliques(inst.graph);
    std::vector<std::size_t> chosen;
    CliqueCover current{n, {}};

    auto search = [&](auto&& self, std::size_t limit) -> bool {
        VertexSet covered(n);
        for (const auto& k : current.cliques) {
            covered |= k;
        }
        std::optional<VertexSet> need;
        if (!covered.all()) {
            VertexSet v(n);
            v.set((~covered).find_first());
            need = v;
        } else {
            for (const auto& c : inst.constraints) {
                if (!satisfies(current, c)) {
                    need = make_set(n, {c.target.first, c.target.second});
                    break;
                }
            }
        }
        if (!need) {
            return true;
        }
        if (current.size() == limit) {
            return false;
        }
        for (std::size_t i = 0; i < cliques.size(); ++i) {
            if (!need->is_subset_of(cliques[i]) ||
                std::find(chosen.begin(), chosen.end(), i) != chosen.end()) {
                continue;
            }
            chosen.push_back(i);
            current.cliques.push_back(cliques[i]);
            if (self(self, limit)) {
                return true;
            }
            chosen.pop_back();
            current.cliques.pop_back();
        }
        return false;
    };

    for (std::size_t k = 1; k <= max_size; ++k) {
        chosen.clear();
        current.cliques.clear();
        if (search(search, k)) {
            return current;
        }
    }
    return std::nullopt;
}

// Builds a deterministic filter whose states are the cliques of a zipped
// cover. The y-successor of a clique is the lowest-index clique holding all
// y-children of its members.
inline Filter cover_to_filter(const Filter& filter, const CliqueCover& cover) {
    const auto n = filter.num_states();
    if (cover.vertex_count != n) {
        throw ReconstructionError("cover does not match the filter's state count");
    }
    VertexSet covered(n);
    for (const auto& k : cover.cliques) {
        covered |= k;
    }
    if (!covered.all()) {
        throw ReconstructionError("cover leaves state " + std::to_string((~covered).find_first()) +
                                  " uncovered");
    }

    FilterData data;
    data.num_states = cover.size();
    data.observations = filter.observations();
    for (std::size_t i = 0; i < cover.size(); ++i) {
        const auto& k = cover.cliques[i];
        if (k.none()) {
            throw ReconstructionError("cover contains an empty clique");
        }
        const auto out = filter.output(k.find_first());
        std::string label;
        for_each_member(k, [&](std::size_t s) {
            if (filter.output(s) != out) {
                throw ReconstructionError("clique " + std::to_string(i) + " mixes outputs");
            }
            label += (label.empty() ? "" : "+") + filter.label(s);
        });
        data.outputs.push_back(out);
        data.labels.push_back(label);
    }
    for (std::size_t i = 0; i < cover.size(); ++i) {
        if (cover.cliques[i].test(filter.initial())) {
            data.initial = i;
            break;
        }
    }
    for (std::size_t i = 0; i < cover.size(); ++i) {
        for (ObservationId y = 0; y < filter.num_observations(); ++y) {
            VertexSet children(n);
            for_each_member(cover.cliques[i], [&](std::size_t s) {
                if (auto t = filter.next(s, y)) {
                    children.set(*t);
                }
            });
            if (children.none()) {
                continue;
            }
            std::optional<std::size_t> target;
            for (std::size_t j = 0; j < cover.size(); ++j) {
                if (children.is_subset_of(cover.cliques[j])) {
                    target = j;
                    break;
                }
            }
            if (!target) {
                throw ReconstructionError("no clique holds all '" + filter.observations()[y] +
                                          "'-children of clique " + std::to_string(i));
            }
            data.transitions.push_back({i, y, *target});
        }
    }
    auto result = Filter::from(std::move(data));
    if (auto sim = output_simulates(filter, result); !sim) {
        throw ReconstructionError("reconstructed filter does not output-simulate the input");
    }
    return result;
}

struct MinimizeResult {
    Filter filter;
    SolveReport report;
};

inline MinimizeResult minimize_filter(const Filter& filter, const SolveOptions& options = {}) {
    const auto pruned = prune_unreachable(filter).filter;
    const auto inst = instance_from_filter(pruned);
    auto report = solve_mzcc(inst, options);
    auto minimal = cover_to_filter(pruned, report.best);
    return {std::move(minimal), std::move(report)};
}

}  // namespace zipcover

#endif /* zipcover_mzcc_hpp */
