#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "oracles.hpp"

using namespace zipcover;

namespace {

ZipperSystem line_system() {
    const auto f = fixtures::line();
    return ZipperSystem(build_zipper_constraints(f, build_compatibility_graph(f)));
}

ZipperSystem cycle_system() {
    const auto f = fixtures::cycle();
    return ZipperSystem(build_zipper_constraints(f, build_compatibility_graph(f)));
}

std::set<std::vector<Pair>> on_sets(const ZipperSystem& zs, const std::vector<Prescription>& ps) {
    std::set<std::vector<Pair>> out;
    for (const auto& p : ps) {
        out.insert(zs.to_pairs(p.on));
    }
    return out;
}

}  // namespace

TEST(DownstreamEnabled, Examples) {
    const auto zs = line_system();
    EXPECT_TRUE(is_downstream_enabled({zs.full_set(), zs.empty_set()}, zs));
    EXPECT_TRUE(is_downstream_enabled({zs.full_set(), zs.full_set()}, zs));
    EXPECT_FALSE(is_downstream_enabled({zs.full_set(), zs.to_set({Pair(0, 1)})}, zs));
    EXPECT_TRUE(is_downstream_enabled({zs.full_set(), zs.to_set({Pair(1, 2)})}, zs));
}

TEST(EnumDS, Line) {
    const auto zs = line_system();
    const auto ps = enumerate_prescriptions(build_pair_graph(zs, zs.full_set()));
    EXPECT_EQ(ps.size(), 3u);
    EXPECT_EQ(on_sets(zs, ps), (std::set<std::vector<Pair>>{
                                   {}, {Pair(1, 2)}, {Pair(0, 1), Pair(1, 2)}}));
}

TEST(EnumDS, CycleIsAllOrNothing) {
    const auto zs = cycle_system();
    const auto ps = enumerate_prescriptions(build_pair_graph(zs, zs.full_set()));
    EXPECT_EQ(on_sets(zs, ps), (std::set<std::vector<Pair>>{{}, {Pair(0, 1), Pair(2, 3)}}));
    EXPECT_EQ(ps.size(), 2u);
}

TEST(EnumDS, AntichainGivesEverySubset) {
    // four isolated constraints between disjoint pairs; only sources in the domain
    std::vector<ZipperConstraint> cs;
    std::vector<Pair> sources;
    for (std::size_t i = 0; i < 4; ++i) {
        cs.push_back({Pair(4 * i, 4 * i + 1), Pair(4 * i + 2, 4 * i + 3), 0});
        sources.push_back(cs.back().source);
    }
    const ZipperSystem zs(cs);
    const auto ps = enumerate_prescriptions(build_pair_graph(zs, zs.to_set(sources)));
    EXPECT_EQ(ps.size(), 16u);
    EXPECT_EQ(on_sets(zs, ps).size(), 16u);
}

TEST(EnumDS, EmptyDomainYieldsOneEmptyPrescription) {
    const auto zs = line_system();
    const auto ps = enumerate_prescriptions(build_pair_graph(zs, zs.empty_set()));
    ASSERT_EQ(ps.size(), 1u);
    EXPECT_TRUE(ps[0].domain.none());
}

TEST(EnumDS, VisitorCanStopEarly) {
    const auto zs = cycle_system();
    std::size_t seen = 0;
    enum_ds(build_pair_graph(zs, zs.full_set()), [&](const Prescription&) {
        ++seen;
        return false;
    });
    EXPECT_EQ(seen, 1u);
}

TEST(BoundaryInclusion, FullDomainUnchanged) {
    const auto zs = line_system();
    for (const auto& p : enumerate_prescriptions(build_pair_graph(zs, zs.full_set()))) {
        EXPECT_EQ(boundary_inclusion(p, zs), p);
    }
}

TEST(BoundaryInclusion, NothingUpstreamOutside) {
    const auto zs = line_system();
    const Prescription p{zs.to_set({Pair(0, 1)}), zs.empty_set()};
    EXPECT_EQ(boundary_inclusion(p, zs), p);
}

TEST(BoundaryInclusion, ChainPullsInDownstreamPair) {
    const Pair p1(0, 1), p2(2, 3), p3(4, 5);
    const ZipperSystem zs({{p1, p2, 0}, {p2, p3, 0}});
    const auto d = zs.to_set({p2});
    const auto out = boundary_inclusion({d, d}, zs);
    EXPECT_EQ(zs.to_pairs(out.domain), (std::vector<Pair>{p2, p3}));
    EXPECT_EQ(zs.to_pairs(out.on), (std::vector<Pair>{p2, p3}));
    // OFF side: P2 off drags P1 in as OFF
    const auto off = boundary_inclusion({d, zs.empty_set()}, zs);
    EXPECT_EQ(zs.to_pairs(off.domain), (std::vector<Pair>{p1, p2}));
    EXPECT_TRUE(off.on.none());
}

TEST(BoundaryInclusion, RejectsNonEnabled) {
    const auto zs = line_system();
    EXPECT_THROW(boundary_inclusion({zs.full_set(), zs.to_set({Pair(0, 1)})}, zs), ContractViolation);
}

TEST(Augment, EmptyDomainCopiesGraph) {
    const auto g = build_compatibility_graph(fixtures::fork());
    const ZipperSystem zs({{Pair(0, 2), Pair(1, 2), 0}});
    const auto aug = augment(g, zs, {zs.empty_set(), zs.empty_set()});
    EXPECT_EQ(aug.size(), g.size());
    EXPECT_EQ(aug.graph, g);
}

TEST(Augment, LineAllOn) {
    const auto g = fixtures::complete(3);
    const auto zs = line_system();
    const auto aug = augment(g, zs, {zs.full_set(), zs.full_set()});
    EXPECT_EQ(aug.size(), 5u);
    EXPECT_EQ(aug.prior_count, 3u);
    EXPECT_EQ(aug.new_pairs, (std::vector<Pair>{{0, 1}, {1, 2}}));
    EXPECT_TRUE(aug.graph.has_edge(3, 4));
    EXPECT_EQ(aug.graph, fixtures::complete(5));
}

TEST(Augment, LineAllOff) {
    const auto zs = line_system();
    const auto aug = augment(fixtures::complete(3), zs, {zs.full_set(), zs.empty_set()});
    EXPECT_EQ(aug.size(), 3u);
    EXPECT_EQ(aug.graph, fixtures::from_edges(3, {{0, 2}}));
}

TEST(Augment, RejectsNonEdgePair) {
    const ZipperSystem zs({{Pair(0, 1), Pair(1, 2), 0}});
    EXPECT_THROW(augment(fixtures::from_edges(3, {{0, 1}}), zs, {zs.full_set(), zs.empty_set()}),
                 InputError);
}

TEST(Distill, PriorSingletons) {
    const auto zs = line_system();
    const auto aug = augment(fixtures::complete(3), zs, {zs.full_set(), zs.empty_set()});
    const auto out = distill(aug, singleton_cover(3));
    EXPECT_EQ(out, singleton_cover(3));
}

TEST(Distill, LineWholeAugmentedGraph) {
    const auto zs = line_system();
    const auto aug = augment(fixtures::complete(3), zs, {zs.full_set(), zs.full_set()});
    const auto out = distill(aug, make_cover(5, {{0, 1, 2, 3, 4}}));
    EXPECT_EQ(as_lists(out), (std::vector<std::vector<std::size_t>>{{0, 1, 2}}));
}

TEST(Distill, SameDistillateMerged) {
    const auto zs = line_system();
    const auto aug = augment(fixtures::complete(3), zs, {zs.full_set(), zs.full_set()});
    // {New(0,1), Prior 2} and {Prior 0, Prior 1, Prior 2} both distil to {0,1,2}
    const auto in = make_cover(5, {{3, 2}, {0, 1, 2}, {4}});
    const auto out = distill(aug, in);
    EXPECT_LT(out.size(), in.size());
    EXPECT_EQ(as_lists(out), (std::vector<std::vector<std::size_t>>{{0, 1, 2}, {1, 2}}));
}

TEST(Distill, RequiresAugmentedCover) {
    const auto zs = line_system();
    const auto aug = augment(fixtures::complete(3), zs, {zs.full_set(), zs.empty_set()});
    EXPECT_THROW(distill(aug, make_cover(3, {{0, 1, 2}})), ContractViolation);
}

TEST(Expand, Examples) {
    const auto zs = line_system();
    const auto aug = augment(fixtures::complete(3), zs, {zs.full_set(), zs.full_set()});
    EXPECT_EQ(members(expand(aug, make_set(3, {2}))), (std::vector<std::size_t>{2}));
    EXPECT_EQ(members(expand(aug, make_set(3, {0, 1, 2}))),
              (std::vector<std::size_t>{0, 1, 2, 3, 4}));
    EXPECT_TRUE(expand(aug, VertexSet(3)).none());
}

TEST(Faithful, Definition) {
    const auto zs = line_system();
    const Prescription on_target{zs.full_set(), zs.to_set({Pair(1, 2)})};
    EXPECT_TRUE(is_faithful(make_cover(3, {{0}, {1, 2}}), zs, on_target));
    EXPECT_FALSE(is_faithful(make_cover(3, {{0, 1, 2}}), zs, on_target));
    EXPECT_FALSE(is_faithful(singleton_cover(3), zs, on_target));
}

TEST(GreedyCover, Examples) {
    EXPECT_EQ(greedy_cover(fixtures::complete(5)).size(), 1u);
    EXPECT_EQ(greedy_cover(Graph(4)).size(), 4u);
    const auto c5 = fixtures::cycle_graph(5);
    const auto g = greedy_cover(c5);
    EXPECT_EQ(g.size(), 3u);
    EXPECT_TRUE(verify_cover(c5, g).empty());
}

TEST(MinCliqueCover, Examples) {
    EXPECT_EQ(min_clique_cover(fixtures::complete(6)).size(), 1u);
    EXPECT_EQ(min_clique_cover(Graph(5)).size(), 5u);
    EXPECT_EQ(min_clique_cover(fixtures::cycle_graph(5)).size(), 3u);
    EXPECT_EQ(min_clique_cover(Graph(0)).size(), 0u);
    // two disjoint triangles joined by a perfect matching minus one edge
    const auto g = fixtures::from_edges(
        6, {{0, 1}, {0, 2}, {1, 2}, {3, 4}, {3, 5}, {4, 5}, {0, 3}, {1, 4}});
    const auto k = min_clique_cover(g);
    EXPECT_EQ(k.size(), oracle::min_cover_size(g));
    EXPECT_TRUE(verify_cover(g, k).empty());
}

TEST(MinCliqueCover, UpperBound) {
    const auto c5 = fixtures::cycle_graph(5);
    EXPECT_EQ(min_clique_cover(c5, 3).size(), 3u);
    EXPECT_EQ(min_clique_cover(c5, 4).size(), 3u);
    EXPECT_THROW(min_clique_cover(c5, 2), ContractViolation);
}

TEST(MinCliqueCover, MatchesSubsetDynamicProgram) {
    oracle::Mask seed = 12345;
    for (std::size_t trial = 0; trial < 300; ++trial) {
        InstanceSpec spec;
        spec.vertices = 1 + trial % 9;
        spec.edge_density = 0.2 + 0.1 * static_cast<double>(trial % 7);
        spec.constraints = 0;
        spec.seed = seed + trial;
        const auto g = random_instance(spec).graph;
        const auto k = min_clique_cover(g);
        ASSERT_EQ(k.size(), oracle::min_cover_size(g)) << "trial " << trial;
        ASSERT_TRUE(verify_cover(g, k).empty());
    }
}

TEST(VerifyCover, Examples) {
    const auto g = fixtures::from_edges(3, {{0, 1}});
    EXPECT_TRUE(verify_cover(g, make_cover(3, {{0, 1}, {2}})).empty());
    EXPECT_EQ(verify_cover(g, make_cover(3, {{0, 1}, {1, 2}})),
              (std::vector<CoverViolation>{{CoverViolationCode::NotAClique, 1}}));
    EXPECT_EQ(verify_cover(g, make_cover(3, {{0, 1}})),
              (std::vector<CoverViolation>{{CoverViolationCode::Uncovered, 2}}));
    EXPECT_EQ(verify_cover(g, make_cover(3, {{0, 1}, {2}, {2}})),
              (std::vector<CoverViolation>{{CoverViolationCode::DuplicateClique, 2}}));
    EXPECT_EQ(verify_cover(g, make_cover(4, {{0, 1}, {2}})).front().code,
              CoverViolationCode::WrongUniverse);
}
