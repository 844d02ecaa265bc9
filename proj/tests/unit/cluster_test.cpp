#include <gtest/gtest.h>

#include "cremona/cluster.hpp"
#include "cremona/error.hpp"
#include "cremona/lattice.hpp"
#include "curves.hpp"
#include "generators.hpp"

using namespace cremona;
using gen::point;

namespace {

Rational q(std::int64_t p, std::int64_t d = 1) { return make_rational(p, d); }

// Discrepancies read off the blown-up lattice: write K_Y - pi^*K - c(pi^*C - C~)
// in the basis of strict exceptional curves by solving against their Gram matrix.
std::vector<Rational> lattice_discrepancies(const WeightedCluster& cl, const Rational& c) {
  auto s = BlowupSurface::plane();
  for (const auto& p : cl.points()) s = s.blow_up("e" + p.id);
  const auto n = cl.size();
  std::vector<DivisorClass> E;
  for (std::size_t i = 0; i < n; ++i) {
    auto e = s.basis("e" + cl[i].id);
    for (auto j : cl.proximate_points(i)) e -= s.basis("e" + cl[j].id);
    E.push_back(e);
  }
  const auto den = c.get_den().get_si(), num = c.get_num().get_si();
  DivisorClass D = den * (s.canonical() + 3 * s.basis("e0"));
  for (std::size_t i = 0; i < n; ++i) D -= (num * cl[i].mult) * s.basis("e" + cl[i].id);
  std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n + 1));
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) m[k][i] = intersect(s, E[i], E[k]);
    m[k][n] = Rational(intersect(s, D, E[k])) / den;
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (m[piv][col] == 0) ++piv;
    std::swap(m[piv], m[col]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || m[r][col] == 0) continue;
      const Rational f = m[r][col] / m[col][col];
      for (std::size_t k = col; k <= n; ++k) m[r][k] -= f * m[col][k];
    }
  }
  std::vector<Rational> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(m[i][n] / m[i][i]);
  return out;
}

}  // namespace

TEST(Validate, NodeAndTacnodeAreValid) {
  EXPECT_TRUE(validate_cluster(WeightedCluster({point("p1", 2)}), ClusterContext::Plane).ok());
  EXPECT_TRUE(validate_cluster(WeightedCluster({point("p1", 2), point("p2", 2, "p1")}), ClusterContext::Plane).ok());
}

TEST(Validate, ProximityInequality) {
  const auto r = validate_cluster(WeightedCluster({point("p1", 2), point("p2", 3, "p1")}), ClusterContext::Plane);
  ASSERT_FALSE(r.ok());
  EXPECT_NE(r.summary().find("proximity: 2 < 3 at p1"), std::string::npos) << r.summary();
}

TEST(Validate, StructuralErrors) {
  EXPECT_FALSE(validate_cluster(WeightedCluster({point("a", 2), point("a", 2)}), ClusterContext::Plane).ok());
  EXPECT_FALSE(validate_cluster(WeightedCluster({point("b", 1, "a"), point("a", 2)}), ClusterContext::Plane).ok());
  EXPECT_FALSE(validate_cluster(WeightedCluster({point("a", 0)}), ClusterContext::Plane).ok());
  auto sat = point("c", 1, "b");
  sat.proximate_to = {"b", "a", "x"};
  EXPECT_FALSE(validate_cluster(WeightedCluster({point("a", 3), point("b", 1, "a"), point("x", 1), sat}),
                                ClusterContext::Plane)
                   .ok());
  EXPECT_FALSE(validate(PlanePair{4, WeightedCluster({point("a", 3), point("b", 2)})}).ok());
  EXPECT_FALSE(validate(PlanePair{5, WeightedCluster({point("a", 5)})}).ok());
}

TEST(Validate, ConicThroughFiveHeaviestPoints) {
  EXPECT_FALSE(validate(PlanePair{7, WeightedCluster({point("a", 3), point("b", 3), point("c", 3, "a"),
                                                      point("d", 3, "c"), point("e", 3, "b")})})
                   .ok());
  EXPECT_TRUE(validate(curves::nodal(5, 6)).ok());
}

TEST(Validate, RuledPairs) {
  EXPECT_TRUE(validate(curves::f3_node(true)).ok());
  EXPECT_FALSE(validate(RuledPair{3, 3, 8, {}}).ok());
  EXPECT_FALSE(validate(RuledPair{1, 2, 4, WeightedCluster({point("a", 3)})}).ok());
  EXPECT_FALSE(validate(RuledPair{1, 3, 4, WeightedCluster({point("a", 2, {}, true)})}).ok());
  EXPECT_FALSE(validate(RuledPair{0, 3, 2, WeightedCluster({point("a", 3)})}).ok());
}

TEST(Genus, Examples) {
  EXPECT_EQ(combinatorial_genus(curves::nodal(3, 1)), 0);
  EXPECT_EQ(combinatorial_genus(curves::node_tacnode_sextic()), 7);
  EXPECT_EQ(combinatorial_genus(curves::f3_node(true)), 10);
  EXPECT_EQ(arithmetic_genus(RuledPair{3, 3, 11, {}}), 11);
  // The degree-9 plane model with a six-fold point and three doubles.
  EXPECT_EQ(combinatorial_genus(curves::nonic_chain()), 28 - 15 - 3);
}

TEST(Genus, RuledAgreesWithLattice) {
  gen::Rng rng(11);
  for (int i = 0; i < 200; ++i) {
    const auto r = gen::ruled_pair(rng, 5, 6, 0);
    const auto s = BlowupSurface::hirzebruch(r.a);
    const DivisorClass C({r.alpha, r.beta});
    const auto twice = intersect(s, C, C) + intersect(s, s.canonical(), C);
    ASSERT_EQ(twice % 2, 0);
    EXPECT_EQ(arithmetic_genus(r), twice / 2 + 1);
  }
}

TEST(Discrepancies, Examples) {
  const auto node = log_discrepancies(curves::nodal(3, 1), q(1, 2));
  EXPECT_EQ(node.entry("n0"), 0);
  const PlanePair tac{4, WeightedCluster({point("p1", 2), point("p2", 2, "p1")})};
  const auto t = log_discrepancies(tac, q(1, 2));
  EXPECT_EQ(t.entry("p1"), 0);
  EXPECT_EQ(t.entry("p2"), 0);
  const auto four = log_discrepancies(PlanePair{7, WeightedCluster({point("p", 4)})}, q(3, 7));
  EXPECT_EQ(four.entry("p"), q(-5, 7));
  EXPECT_EQ(to_string(four.entry("p")), "-5/7");
}

TEST(Discrepancies, CoefficientRange) {
  EXPECT_THROW(log_discrepancies(curves::nodal(3, 1), q(0)), InvalidInput);
  EXPECT_THROW(log_discrepancies(curves::nodal(3, 1), q(3, 2)), InvalidInput);
}

TEST(Discrepancies, AgreeWithLattice) {
  gen::Rng rng(12);
  const std::vector<Rational> cs = {q(1, 2), q(1, 3), q(2, 5), q(3, 7), q(1)};
  for (int i = 0; i < 300; ++i) {
    const auto p = gen::plane_pair(rng, 12, 7);
    if (p.cluster.empty()) continue;
    const auto& c = rng.pick(cs);
    const auto rep = log_discrepancies(p, c);
    const auto want = lattice_discrepancies(p.cluster, c);
    for (std::size_t k = 0; k < p.cluster.size(); ++k) {
      ASSERT_EQ(rep.entry(p.cluster[k].id), want[k]) << "sample " << i << " point " << p.cluster[k].id;
    }
  }
}

TEST(Classify, Examples) {
  const auto k = classify_singularities(curves::node_tacnode_sextic(), q(1, 2));
  EXPECT_EQ(k.kind, SingularityClass::Canonical);
  EXPECT_EQ(k.witness, "n");
  EXPECT_EQ(classify_singularities(curves::nodal(7, 1), q(3, 7)).kind, SingularityClass::Terminal);
  EXPECT_NE(classify_singularities(curves::nodal(6, 1), q(3, 6)).kind, SingularityClass::Terminal);
}

TEST(Classify, MonotoneInCoefficient) {
  gen::Rng rng(13);
  for (int i = 0; i < 300; ++i) {
    const auto p = gen::plane_pair(rng, 12, 6);
    const auto k = rng.uniform(1, 9);
    const auto c1 = q(k, 10), c2 = q(k + rng.uniform(1, 10 - k), 10);
    const auto lo = log_discrepancies(p, c1), hi = log_discrepancies(p, c2);
    for (std::size_t k = 0; k < lo.entries.size(); ++k) EXPECT_GT(lo.entries[k].second, hi.entries[k].second);
    EXPECT_GE(static_cast<int>(classify_singularities(p, c1).kind),
              static_cast<int>(classify_singularities(p, c2).kind));
  }
}

TEST(Classify, SubcriticalMultiplicityIsTerminal) {
  gen::Rng rng(14);
  int seen = 0;
  while (seen < 500) {
    const auto p = gen::plane_pair(rng, 15, 8);
    if (p.degree < 3 || 3 * std::max<std::int64_t>(1, p.cluster.max_mult()) >= p.degree) continue;
    ++seen;
    ASSERT_EQ(classify_singularities(p, q(3, p.degree)).kind, SingularityClass::Terminal) << "degree " << p.degree;
  }
}

TEST(Classify, SaturationIsSound) {
  gen::Rng rng(15);
  for (int i = 0; i < 300; ++i) {
    const auto p = gen::plane_pair(rng, 10, 5);
    const auto c = q(rng.uniform(1, 10), 10);
    const auto before = log_discrepancies(p, c);
    auto pts = p.cluster.points();
    std::optional<std::string> at;
    std::vector<std::size_t> ends;
    for (std::size_t k = 0; k < pts.size(); ++k) {
      if (gen::room(pts, k) >= 1) ends.push_back(k);
    }
    if (!ends.empty() && rng.coin(0.7)) at = pts[rng.pick(ends)].id;
    const auto depth = rng.uniform(1, 6);
    for (std::int64_t k = 0; k < depth; ++k) {
      const std::string id = "s" + std::to_string(k);
      pts.push_back(point(id, 1, at));
      at = id;
    }
    const PlanePair longer{p.degree, WeightedCluster(pts)};
    if (!validate(longer).ok()) continue;
    EXPECT_GE(log_discrepancies(longer, c).minimum, before.minimum) << "sample " << i;
  }
}

TEST(Certificates, NoetherFanoNumeric) {
  EXPECT_TRUE(noether_fano_certificate(3, 8, 7, 2).holds);
  EXPECT_TRUE(noether_fano_certificate(2, 7, 6, 2).holds);
  EXPECT_FALSE(noether_fano_certificate(2, 6, 5, 3).holds);
  EXPECT_THROW(noether_fano_certificate(1, 6, 5, 1), InvalidInput);
  EXPECT_THROW(noether_fano_certificate(2, 5, 5, 1), InvalidInput);
}

TEST(Certificates, NoetherFanoPlane) {
  EXPECT_TRUE(noether_fano_certificate(curves::nodal(7, 1)).holds);
  EXPECT_FALSE(noether_fano_certificate(curves::septic_two_children()).holds);
  EXPECT_THROW(noether_fano_certificate(PlanePair{2, {}}), InvalidInput);
}

TEST(Certificates, Jung) {
  EXPECT_TRUE(jung_test(curves::nodal(6, 3)).holds);
  EXPECT_FALSE(jung_test(curves::nonic_chain()).holds);
  EXPECT_FALSE(jung_test(curves::septic_two_children()).holds);
  EXPECT_FALSE(jung_test(PlanePair{2, {}}).holds);
}
