#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "oracles.hpp"

using namespace zipcover;

namespace {

using Lists = std::vector<std::vector<std::size_t>>;

MzccInstance line_instance() { return instance_from_filter(fixtures::line()); }
MzccInstance cycle_instance() { return instance_from_filter(fixtures::cycle()); }

}  // namespace

TEST(VerifyZipped, LineExamples) {
    const auto inst = line_instance();
    EXPECT_TRUE(verify_zipped_cover(inst, make_cover(3, {{0, 1, 2}})).empty());
    const auto bad = verify_zipped_cover(inst, make_cover(3, {{0, 1}, {2}}));
    ASSERT_EQ(bad.size(), 1u);
    ASSERT_TRUE(std::holds_alternative<ZipperViolated>(bad[0]));
    EXPECT_EQ(std::get<ZipperViolated>(bad[0]).constraint, 0u);
    EXPECT_EQ(describe(bad, inst), "ZipperViolated(<{0,1},{1,2}>_a)");
    EXPECT_TRUE(verify_zipped_cover(inst, singleton_cover(3)).empty());
}

TEST(VerifyZipped, ReportsCoverFaultsToo) {
    const auto inst = line_instance();
    const auto v = verify_zipped_cover(inst, make_cover(3, {{0, 1}}));
    ASSERT_FALSE(v.empty());
    EXPECT_TRUE(std::holds_alternative<CoverViolation>(v[0]));
}

TEST(Repair, EmptyInteriorLeavesCoverAlone) {
    const auto inst = cycle_instance();
    const ZipperSystem zs(inst.constraints);
    const auto k = make_cover(4, {{0, 1}, {2}, {3}});
    EXPECT_EQ(repair(k, zs.empty_set(), inst.graph, zs), k);
}

TEST(Repair, CycleGrowsTargets) {
    const auto inst = cycle_instance();
    const ZipperSystem zs(inst.constraints);
    const auto k = make_cover(4, {{0, 1}, {2}, {3}});
    const auto out = repair(k, zs.full_set(), inst.graph, zs);
    EXPECT_LE(out.size(), 3u);
    EXPECT_TRUE(verify_zipped_cover(inst, out).empty());
    EXPECT_LE(oracle::mzcc_by_subsets(inst), 3u);
}

TEST(Repair, SatisfiedInteriorStaysSatisfied) {
    const auto inst = cycle_instance();
    const ZipperSystem zs(inst.constraints);
    const auto k = make_cover(4, {{0, 1}, {2, 3}});
    const auto out = repair(k, zs.full_set(), inst.graph, zs);
    EXPECT_LE(out.size(), k.size());
    EXPECT_TRUE(verify_zipped_cover(inst, out).empty());
}

TEST(Repair, RejectsIncomparablePairs) {
    // N(0)={0,1,2}, N(1)={0,1,3}: incomparable
    const auto g = fixtures::from_edges(4, {{0, 1}, {0, 2}, {1, 3}});
    const ZipperSystem zs({{Pair(0, 2), Pair(0, 1), 0}, {Pair(0, 1), Pair(0, 2), 0}});
    EXPECT_THROW(repair(singleton_cover(4), zs.full_set(), g, zs), ContractViolation);
}

TEST(Solve, Line) {
    const auto r = solve_mzcc(line_instance());
    EXPECT_EQ(as_lists(r.best), (Lists{{0, 1, 2}}));
}

TEST(Solve, Cycle) {
    const auto r = solve_mzcc(cycle_instance());
    EXPECT_EQ(as_lists(r.best), (Lists{{0, 1, 2, 3}}));
    EXPECT_EQ(r.stats.pairs, 2u);
    EXPECT_EQ(r.stats.repairable, 2u);
    EXPECT_EQ(r.stats.domain, 0u);
    EXPECT_EQ(r.prescriptions, 1u);
}

TEST(Solve, NoConstraintsIsPlainCover) {
    MzccInstance inst;
    inst.graph = fixtures::cycle_graph(5);
    const auto r = solve_mzcc(inst);
    EXPECT_EQ(r.best, min_clique_cover(inst.graph));
    EXPECT_EQ(r.prescriptions, 1u);
}

TEST(Solve, ModesAndJobsAgree) {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        const auto f = random_filter({6, 2, 2, 0.8, seed});
        const auto inst = instance_from_filter(f);
        const auto full = solve_mzcc(inst);
        SolveOptions alt;
        alt.mode = SolveMode::NoRepair;
        alt.jobs = 3;
        const auto plain = solve_mzcc(inst, alt);
        EXPECT_EQ(full.best.size(), plain.best.size()) << "seed " << seed;
        SolveOptions par;
        par.jobs = 4;
        const auto threaded = solve_mzcc(inst, par);
        EXPECT_EQ(threaded.best, full.best);
        EXPECT_EQ(threaded.best_index, full.best_index);
        EXPECT_EQ(threaded.log.size(), full.log.size());
    }
}

TEST(Solve, RepairGapIsReportedNotHidden) {
    // comparable-neighbourhood growth merges the OFF pair {0,2}
    MzccInstance inst;
    inst.graph = fixtures::from_edges(5, {{0, 2}, {0, 3}, {0, 4}, {1, 3}, {2, 3}, {2, 4}});
    inst.constraints = {{Pair(0, 2), Pair(2, 3), 1},
                        {Pair(1, 3), Pair(0, 2), 0},
                        {Pair(1, 3), Pair(2, 4), 1},
                        {Pair(2, 4), Pair(0, 4), 1}};
    inst.symbols = {"a", "b"};
    EXPECT_THROW(solve_mzcc(inst), RepairFailure);
    SolveOptions opt;
    opt.repair_fallback = true;
    const auto r = solve_mzcc(inst, opt);
    EXPECT_TRUE(r.fell_back);
    EXPECT_TRUE(verify_zipped_cover(inst, r.best).empty());
    EXPECT_EQ(r.best.size(), oracle::mzcc_by_subsets(inst));
    SolveOptions plain;
    plain.mode = SolveMode::NoRepair;
    EXPECT_EQ(solve_mzcc(inst, plain).best.size(), r.best.size());
}

TEST(Solve, RejectsConstraintOnNonEdge) {
    MzccInstance inst;
    inst.graph = fixtures::from_edges(3, {{0, 1}});
    inst.constraints = {{Pair(0, 1), Pair(1, 2), 0}};
    EXPECT_THROW(solve_mzcc(inst), InputError);
}

TEST(BruteForce, Examples) {
    const auto line = brute_force_mzcc(line_instance(), 3);
    ASSERT_TRUE(line);
    EXPECT_EQ(line->size(), 1u);
    MzccInstance empty3;
    empty3.graph = Graph(3);
    EXPECT_EQ(brute_force_mzcc(empty3, 3)->size(), 3u);
    EXPECT_FALSE(brute_force_mzcc(line_instance(), 0));
    MzccInstance big;
    big.graph = Graph(11);
    EXPECT_THROW(brute_force_mzcc(big, 11), SizeError);
}

TEST(BruteForce, MatchesLiteralSubsetSearch) {
    for (std::uint64_t seed = 0; seed < 400; ++seed) {
        InstanceSpec spec;
        spec.vertices = 2 + seed % 4;
        spec.edge_density = 0.4 + 0.1 * static_cast<double>(seed % 6);
        spec.constraints = 1 + seed % 6;
        spec.seed = seed;
        const auto inst = random_instance(spec);
        const auto bf = brute_force_mzcc(inst, inst.graph.size());
        ASSERT_TRUE(bf);
        EXPECT_TRUE(verify_zipped_cover(inst, *bf).empty());
        EXPECT_EQ(bf->size(), oracle::mzcc_by_subsets(inst)) << "seed " << seed;
    }
}

TEST(Reconstruct, SingletonsGiveSameFilter) {
    for (const auto& f : {fixtures::line(), fixtures::cycle(), fixtures::fork()}) {
        const auto g = cover_to_filter(f, singleton_cover(f.num_states()));
        EXPECT_EQ(g.num_states(), f.num_states());
        EXPECT_EQ(g.data().transitions, f.data().transitions);
        EXPECT_TRUE(output_simulates(f, g));
    }
}

TEST(Reconstruct, LineCollapses) {
    const auto g = cover_to_filter(fixtures::line(), make_cover(3, {{0, 1, 2}}));
    EXPECT_EQ(g.num_states(), 1u);
    EXPECT_EQ(g.next(0, 0), StateId{0});
    EXPECT_EQ(g.output(0), 0u);
    EXPECT_EQ(g.label(0), "1+2+3");
}

TEST(Reconstruct, CycleCollapses) {
    const auto g = cover_to_filter(fixtures::cycle(), make_cover(4, {{0, 1, 2, 3}}));
    EXPECT_EQ(g.num_states(), 1u);
    EXPECT_EQ(g.next(0, 0), StateId{0});
    EXPECT_EQ(g.next(0, 1), StateId{0});
}

TEST(Reconstruct, RejectsUnzippedCover) {
    EXPECT_THROW(cover_to_filter(fixtures::line(), make_cover(3, {{0, 1}, {2}})),
                 ReconstructionError);
}

TEST(Minimize, Examples) {
    EXPECT_EQ(minimize_filter(fixtures::line()).filter.num_states(), 1u);
    // no transitions: the second state is unreachable and pruned away
    const auto two = fixtures::make(2, {0, 1}, {"a"}, {});
    const auto reach = fixtures::make(2, {0, 1}, {"a"}, {{0, 0, 1}});
    const auto m = minimize_filter(reach).filter;
    EXPECT_EQ(m.num_states(), 2u);
    EXPECT_EQ(m.data().transitions, reach.data().transitions);
    EXPECT_EQ(minimize_filter(two).filter.num_states(), 1u);
    const auto one = fixtures::one_state(0);
    EXPECT_EQ(minimize_filter(one).filter.data().transitions, one.data().transitions);
    EXPECT_EQ(minimize_filter(one).filter.num_states(), 1u);
}

TEST(Generator, SeedsReproduce) {
    const GenSpec spec{7, 2, 3, 0.6, 99};
    EXPECT_EQ(random_filter(spec), random_filter(spec));
    EXPECT_NE(random_filter(spec), random_filter({7, 2, 3, 0.6, 100}));
}

TEST(Generator, SplitMixReferenceValues) {
    // first outputs for seed 0 of the published recurrence
    SplitMix64 rng(0);
    EXPECT_EQ(rng.next(), 0xE220A8397B1DCDAFULL);
    EXPECT_EQ(rng.next(), 0x6E789E6AA1B965F4ULL);
    EXPECT_EQ(rng.next(), 0x06C45D188009454FULL);
}

TEST(Generator, DensityExtremes) {
    const auto none = random_filter({5, 2, 2, 0.0, 3});
    EXPECT_EQ(none.num_states(), 1u);
    EXPECT_TRUE(none.data().transitions.empty());
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto full = random_filter({4, 2, 2, 1.0, seed});
        EXPECT_TRUE(validate(full).empty());
        for (StateId s = 0; s < full.num_states(); ++s) {
            for (ObservationId y = 0; y < 2; ++y) {
                EXPECT_TRUE(full.next(s, y));
            }
        }
    }
}

TEST(Generator, ValidReachableBounded) {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const GenSpec spec{2 + seed % 7, 1 + seed % 3, 1 + seed % 3, 0.5, seed};
        const auto f = random_filter(spec);
        EXPECT_TRUE(validate(f).empty());
        EXPECT_TRUE(is_reachable(f));
        EXPECT_LE(f.num_states(), spec.states);
    }
    EXPECT_THROW(random_filter({0, 1, 1, 0.5, 0}), InputError);
    EXPECT_THROW(random_filter({2, 1, 1, 1.5, 0}), InputError);
}

TEST(Enumerate, SmallCounts) {
    EXPECT_EQ(enumerate_filters(1, 1, 1).size(), 2u);
    EXPECT_EQ(enumerate_filters(1, 1, 2).size(), 4u);
    EXPECT_TRUE(enumerate_filters(0, 1, 1).empty());
    EXPECT_THROW(enumerate_filters(5, 1, 1), SizeError);
}

namespace {

// Relabels states in breadth-first discovery order from the initial state.
std::pair<std::vector<OutputId>, std::vector<Transition>> canonical(const FilterData& d) {
    std::vector<std::optional<StateId>> id(d.num_states);
    std::vector<StateId> order{d.initial};
    id[d.initial] = 0;
    for (std::size_t head = 0; head < order.size(); ++head) {
        for (ObservationId y = 0; y < d.observations.size(); ++y) {
            for (const auto& t : d.transitions) {
                if (t.from == order[head] && t.obs == y && !id[t.to]) {
                    id[t.to] = order.size();
                    order.push_back(t.to);
                }
            }
        }
    }
    std::vector<OutputId> outs;
    for (auto s : order) {
        outs.push_back(d.outputs[s]);
    }
    std::vector<Transition> ts;
    for (const auto& t : d.transitions) {
        if (id[t.from]) {
            ts.push_back({*id[t.from], t.obs, *id[t.to]});
        }
    }
    std::sort(ts.begin(), ts.end());
    return {outs, ts};
}

}  // namespace

TEST(Enumerate, ExactlyOneRepresentativePerReachableFilter) {
    // every raw table with initial state 0, reduced to canonical form
    std::set<std::pair<std::vector<OutputId>, std::vector<Transition>>> expected;
    for (std::size_t n = 1; n <= 3; ++n) {
        const std::size_t cells = 2 * n;
        std::size_t tables = 1;
        for (std::size_t c = 0; c < cells; ++c) {
            tables *= n + 1;
        }
        for (std::size_t code = 0; code < tables; ++code) {
            for (std::size_t outs = 0; outs < (std::size_t{1} << n); ++outs) {
                FilterData d;
                d.num_states = n;
                d.observations = {"a", "b"};
                for (std::size_t s = 0; s < n; ++s) {
                    d.outputs.push_back((outs >> s) & 1U);
                }
                std::size_t rest = code;
                for (std::size_t c = 0; c < cells; ++c, rest /= n + 1) {
                    if (rest % (n + 1) < n) {
                        d.transitions.push_back({c / 2, c % 2, rest % (n + 1)});
                    }
                }
                const auto form = canonical(d);
                if (form.first.size() == n) {
                    expected.insert(form);
                }
            }
        }
    }
    std::set<std::pair<std::vector<OutputId>, std::vector<Transition>>> got;
    std::size_t count = 0;
    enumerate_filters(3, 2, 2, [&](const Filter& f) {
        ++count;
        got.insert({std::vector<OutputId>(f.data().outputs), f.data().transitions});
        EXPECT_EQ(canonical(f.data()).second, f.data().transitions);
    });
    EXPECT_EQ(count, got.size());
    EXPECT_EQ(got, expected);
}
