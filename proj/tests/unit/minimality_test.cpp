#include <gtest/gtest.h>

#include "cremona/error.hpp"
#include "cremona/minimality.hpp"
#include "curves.hpp"
#include "generators.hpp"

using namespace cremona;
using gen::point;

TEST(Resolve, ConsumesOnlyOnC0Points) {
  const auto on = resolve_along_c0(curves::f3_node(true));
  EXPECT_EQ(on.base.a, 4);
  EXPECT_EQ(on.base.beta, 12);
  EXPECT_EQ(on.consumed, (std::vector<std::int64_t>{2}));
  EXPECT_EQ(on.trace.size(), 1u);
  const auto off = resolve_along_c0(curves::f3_node(false));
  EXPECT_EQ(off.base, curves::f3_node(false));
  EXPECT_TRUE(off.consumed.empty());
  EXPECT_THROW(resolve_along_c0(RuledPair{1, 3, 3, {}}), InvalidInput);
}

TEST(MinimalPlaneModel, RuledNode) {
  const auto on = minimal_plane_model(resolve_along_c0(curves::f3_node(true)));
  EXPECT_EQ(on.degree, 9);
  EXPECT_EQ(on.pair.cluster.max_mult(), 6);
  const auto off = minimal_plane_model(resolve_along_c0(curves::f3_node(false)));
  EXPECT_EQ(off.degree, 8);
  EXPECT_EQ(off.pair.degree, 8);
  EXPECT_EQ(off.pair.cluster.max_mult(), 5);
  EXPECT_EQ(combinatorial_genus(off.pair), combinatorial_genus(curves::f3_node(false)));
}

TEST(MinimalPlaneModel, TwoGenericCenters) {
  const auto pm = minimal_plane_model(resolve_along_c0(RuledPair{3, 3, 9, {}}));
  EXPECT_EQ(pm.degree, 7);
  EXPECT_FALSE(pm.assumptions.empty());
}

TEST(MinimalPlaneModel, TraceReplays) {
  for (bool on : {true, false}) {
    const auto r = resolve_along_c0(curves::f3_node(on));
    const auto pm = minimal_plane_model(r);
    const auto end = replay(r.base, pm.trace);
    ASSERT_TRUE(is_plane(end));
    EXPECT_EQ(std::get<PlanePair>(end).degree, pm.degree);
  }
}

TEST(CenterSequence, ChildrenWaitForParents) {
  const RuledPair r{3, 3, 11, WeightedCluster({point("a", 2), point("b", 2, "a"), point("c", 1)})};
  const auto seq = optimal_center_sequence(resolve_along_c0(r));
  ASSERT_EQ(seq.centers.size(), 2u);
  EXPECT_EQ(seq.total, 4);
  EXPECT_EQ(seq.mults, (std::vector<std::int64_t>{2, 2}));
  EXPECT_THROW(optimal_center_sequence(resolve_along_c0(RuledPair{0, 2, 3, {}})), InvalidInput);
}

TEST(PlanarSystem, Examples) {
  const auto r = resolve_along_c0(curves::f3_node(false));
  EXPECT_EQ(planar_system_degree(r, 3, {1, 1, 1, 1}), 10);
  EXPECT_EQ(planar_system_degree(r, 2, {2, 1}), 8);
  EXPECT_THROW(planar_system_degree(r, 2, {2}), InvalidInput);
}

TEST(PlanarSystem, MonotoneConsistency) {
  gen::Rng rng(41);
  int seen = 0;
  for (int i = 0; i < 3000 && seen < 300; ++i) {
    const auto p = gen::plane_pair(rng, 12, 6);
    const auto m = standard_model(p);
    if (m.kind != ModelKind::FaCanonical || !m.kappa || *m.kappa != 1) continue;
    const auto r = resolve_along_c0(std::get<RuledPair>(m.pair));
    if (r.base.a == 0) continue;
    ++seen;
    const auto pm = minimal_plane_model(r);
    EXPECT_LE(pm.degree, r.base.beta);
    EXPECT_EQ(pm.degree == r.base.beta, r.base.a == 1) << to_string(SurfaceState::of(r.base));
  }
  EXPECT_GE(seen, 50);
}

TEST(Verdict, Examples) {
  const auto v = is_minimal_degree(curves::septic_two_children());
  EXPECT_EQ(v.status, MinimalityStatus::Minimal);
  EXPECT_EQ(v.minimal_degree, 7);
  const auto w = is_minimal_degree(curves::septic_chain());
  EXPECT_EQ(w.status, MinimalityStatus::NotMinimal);
  EXPECT_EQ(w.minimal_degree, 6);
  const auto nine = is_minimal_degree(curves::nonic_chain());
  EXPECT_EQ(nine.status, MinimalityStatus::NotMinimal);
  EXPECT_EQ(nine.minimal_degree, 8);
  EXPECT_EQ(is_minimal_degree(curves::nodal(3, 1)).status, MinimalityStatus::Line);
  const auto j = is_minimal_degree(curves::nodal(7, 1));
  EXPECT_EQ(j.status, MinimalityStatus::Minimal);
  EXPECT_EQ(j.reason, MinimalityReason::SubcriticalMult);
  EXPECT_TRUE(j.certificate && j.certificate->holds);
  const auto k = is_minimal_degree(curves::nodal(6, 3));
  EXPECT_EQ(k.status, MinimalityStatus::Minimal);
  EXPECT_EQ(k.reason, MinimalityReason::KappaZeroDegree);
}

TEST(Verdict, SubcriticalAndJungPairsAreMinimal) {
  gen::Rng rng(42);
  for (int i = 0; i < 500; ++i) {
    const auto p = gen::jung_pair(rng, 12, 8);
    const auto v = is_minimal_degree(p);
    ASSERT_EQ(v.status, MinimalityStatus::Minimal) << "sample " << i << " degree " << p.degree;
    EXPECT_EQ(v.minimal_degree, p.degree);
  }
}

TEST(Verdict, WitnessesReplay) {
  gen::Rng rng(43);
  for (int i = 0; i < 300; ++i) {
    const auto p = gen::plane_pair(rng, 12, 6);
    const auto v = is_minimal_degree(p);
    EXPECT_LE(v.minimal_degree, p.degree);
    if (v.status == MinimalityStatus::Minimal) EXPECT_EQ(v.minimal_degree, p.degree);
    if (!v.witness_trace) {
      EXPECT_NE(v.status, MinimalityStatus::NotMinimal) << "sample " << i;
      continue;
    }
    const auto end = replay(p, *v.witness_trace);
    const auto* pl = std::get_if<PlanePair>(&end);
    ASSERT_NE(pl, nullptr) << "sample " << i;
    EXPECT_EQ(pl->degree, v.minimal_degree) << "sample " << i;
    EXPECT_EQ(combinatorial_genus(*pl), combinatorial_genus(p));
  }
}

TEST(LineWitness, EndsAtALine) {
  for (const Pair& p : {Pair(curves::nodal(3, 1)), Pair(PlanePair{4, WeightedCluster({point("a", 3)})}),
                        Pair(RuledPair{2, 1, 5, {}})}) {
    const auto end = replay(p, line_witness(p));
    ASSERT_TRUE(is_plane(end));
    EXPECT_EQ(std::get<PlanePair>(end).degree, 1);
  }
  EXPECT_THROW(line_witness(curves::node_tacnode_sextic()), InvalidInput);
}
