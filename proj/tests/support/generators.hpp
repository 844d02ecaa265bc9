#pragma once

// Hand-rolled random pairs for the property tests. Everything is driven by a
// seeded mt19937_64 so failures reproduce from the printed seed.

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "cremona/cluster.hpp"
#include "cremona/hirzebruch.hpp"

namespace gen {

using namespace cremona;

struct Rng {
  explicit Rng(std::uint64_t seed) : eng(seed) {}
  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(eng);
  }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(eng); }
  template <class T>
  const T& pick(const std::vector<T>& v) {
    return v[static_cast<std::size_t>(uniform(0, static_cast<std::int64_t>(v.size()) - 1))];
  }
  std::mt19937_64 eng;
};

inline ClusterPoint point(std::string id, std::int64_t m, std::optional<std::string> parent = {},
                          std::optional<bool> on_c0 = {}) {
  ClusterPoint p;
  p.id = std::move(id);
  p.mult = m;
  p.parent = parent;
  if (parent) p.proximate_to = {*parent};
  p.on_c0 = on_c0;
  return p;
}

// Room left under the proximity inequality at point i.
inline std::int64_t room(const std::vector<ClusterPoint>& pts, std::size_t i) {
  std::int64_t used = 0;
  for (const auto& q : pts) {
    if (std::find(q.proximate_to.begin(), q.proximate_to.end(), pts[i].id) != q.proximate_to.end()) used += q.mult;
  }
  return pts[i].mult - used;
}

struct ClusterShape {
  std::size_t max_points = 6;
  std::int64_t max_mult = 4;
  bool ruled = false;
  double child_rate = 0.4;
  double satellite_rate = 0.1;
};

// Free points mostly; satellites now and then. Not validated.
inline WeightedCluster cluster(Rng& r, const ClusterShape& s) {
  std::vector<ClusterPoint> pts;
  const auto n = static_cast<std::size_t>(r.uniform(0, static_cast<std::int64_t>(s.max_points)));
  for (std::size_t k = 0; k < n; ++k) {
    const std::string id = "p" + std::to_string(k);
    std::vector<std::size_t> hosts;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (room(pts, i) >= 1) hosts.push_back(i);
    }
    if (!hosts.empty() && r.coin(s.child_rate)) {
      const auto h = r.pick(hosts);
      auto q = point(id, r.uniform(1, room(pts, h)), pts[h].id);
      if (pts[h].parent && r.coin(s.satellite_rate)) {
        const auto g = *pts[h].parent;
        const auto gi = static_cast<std::size_t>(std::find_if(pts.begin(), pts.end(), [&](auto& p) { return p.id == g; }) - pts.begin());
        if (room(pts, gi) >= q.mult) q.proximate_to.push_back(g);
      }
      pts.push_back(q);
    } else {
      std::optional<bool> on;
      if (s.ruled) on = r.coin(0.35);
      pts.push_back(point(id, r.uniform(1, s.max_mult), {}, on));
    }
  }
  return WeightedCluster(std::move(pts));
}

inline PlanePair plane_pair(Rng& r, std::int64_t max_degree, std::size_t max_points) {
  for (;;) {
    const auto d = r.uniform(1, max_degree);
    PlanePair p{d, cluster(r, {max_points, std::max<std::int64_t>(1, d - 1)})};
    if (validate(p).ok()) return p;
  }
}

// m1 + m2 + m3 <= d with missing multiplicities counted as 1.
inline PlanePair jung_pair(Rng& r, std::int64_t max_degree, std::size_t max_points) {
  for (;;) {
    const auto d = r.uniform(3, max_degree);
    PlanePair p{d, cluster(r, {max_points, std::max<std::int64_t>(1, d / 2)})};
    auto m = p.cluster.sorted_mults();
    m.resize(std::max<std::size_t>(m.size(), 3), 1);
    if (m[0] + m[1] + m[2] <= d && validate(p).ok()) return p;
  }
}

// Spends the genus budget (d-1)(d-2)/2 on singular points, then sprinkles
// a few simple points.
inline PlanePair rational_plane(Rng& r, std::int64_t min_degree, std::int64_t max_degree) {
  for (;;) {
    const auto d = r.uniform(min_degree, max_degree);
    std::int64_t budget = (d - 1) * (d - 2) / 2;
    std::vector<ClusterPoint> pts;
    int guard = 0;
    while (budget > 0 && ++guard < 64) {
      const std::string id = "p" + std::to_string(pts.size());
      std::vector<std::size_t> hosts;
      for (std::size_t i = 0; i < pts.size(); ++i) {
        if (room(pts, i) >= 2) hosts.push_back(i);
      }
      std::int64_t cap = d - 1;
      std::optional<std::string> parent;
      if (!hosts.empty() && r.coin(0.5)) {
        const auto h = r.pick(hosts);
        cap = room(pts, h);
        parent = pts[h].id;
      }
      while (cap > 1 && cap * (cap - 1) / 2 > budget) --cap;
      if (cap < 2) continue;
      const auto m = r.uniform(2, cap);
      budget -= m * (m - 1) / 2;
      pts.push_back(point(id, m, parent));
    }
    if (budget != 0) continue;
    const auto extra = r.uniform(0, 2);
    for (std::int64_t k = 0; k < extra; ++k) {
      std::vector<std::size_t> hosts;
      for (std::size_t i = 0; i < pts.size(); ++i) {
        if (room(pts, i) >= 1) hosts.push_back(i);
      }
      std::optional<std::string> parent;
      if (!hosts.empty() && r.coin(0.5)) parent = pts[r.pick(hosts)].id;
      pts.push_back(point("p" + std::to_string(pts.size()), 1, parent));
    }
    PlanePair p{d, WeightedCluster(std::move(pts))};
    if (validate(p).ok()) return p;
  }
}

inline RuledPair ruled_pair(Rng& r, std::int64_t max_a, std::int64_t max_alpha, std::size_t max_points) {
  for (;;) {
    const auto a = r.uniform(0, max_a);
    const auto alpha = r.uniform(1, max_alpha);
    const auto beta = a * alpha + r.uniform(0, 2 * alpha + 2);
    RuledPair p{a, alpha, beta, cluster(r, {max_points, alpha, true})};
    if (validate(p).ok()) return p;
  }
}

// Centers an elm accepts: level-0 points and general points of multiplicity
// 0 or 1, on C0 only where C0 still meets the curve freely.
inline std::vector<Center> elm_centers(Rng& r, const RuledPair& p) {
  std::int64_t free = p.meets_c0();
  for (auto i : p.cluster.roots()) {
    if (p.cluster[i].lies_on_c0()) free -= p.cluster[i].mult;
  }
  const std::int64_t m = p.a == 0 && p.beta == 0 ? 0 : r.uniform(0, 1);
  std::vector<Center> cs = {Center::generic(false, m)};
  if (p.a > 0 && free >= 1) cs.push_back(Center::generic(true, r.uniform(0, 1)));
  // A curve of class C0 on F0 would become the negative section.
  if (p.a == 0 && p.beta == 0) return cs;
  for (auto i : p.cluster.roots()) cs.push_back(Center::point(p.cluster[i].id));
  return cs;
}

}  // namespace gen
