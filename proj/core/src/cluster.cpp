#include "cremona/cluster.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

#include "cremona/error.hpp"

namespace cremona {

// ---------------------------------------------------------------------------
// WeightedCluster

std::optional<std::size_t> WeightedCluster::index_of(std::string_view id) const {
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (points_[i].id == id) return i;
  }
  return std::nullopt;
}

const ClusterPoint& WeightedCluster::at(std::string_view id) const {
  auto i = index_of(id);
  if (!i) throw InvalidInput("unknown cluster point '" + std::string(id) + "'");
  return points_[*i];
}

std::vector<std::size_t> WeightedCluster::roots() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (points_[i].is_root()) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> WeightedCluster::children(std::size_t i) const {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < points_.size(); ++j) {
    if (points_[j].parent && *points_[j].parent == points_[i].id) out.push_back(j);
  }
  return out;
}

std::vector<std::size_t> WeightedCluster::proximate_points(std::size_t i) const {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < points_.size(); ++j) {
    const auto& prox = points_[j].proximate_to;
    if (std::find(prox.begin(), prox.end(), points_[i].id) != prox.end()) out.push_back(j);
  }
  return out;
}

std::vector<std::size_t> WeightedCluster::subtree(std::size_t root) const {
  std::vector<bool> inside(points_.size(), false);
  inside[root] = true;
  std::vector<std::size_t> out{root};
  for (std::size_t j = root + 1; j < points_.size(); ++j) {
    if (!points_[j].parent) continue;
    auto p = index_of(*points_[j].parent);
    if (p && inside[*p]) {
      inside[j] = true;
      out.push_back(j);
    }
  }
  return out;
}

std::size_t WeightedCluster::root_of(std::size_t i) const {
  std::size_t guard = 0;
  while (points_[i].parent && guard++ <= points_.size()) {
    auto p = index_of(*points_[i].parent);
    if (!p) break;
    i = *p;
  }
  return i;
}

std::size_t WeightedCluster::depth(std::size_t i) const {
  std::size_t d = 0;
  while (points_[i].parent && d <= points_.size()) {
    auto p = index_of(*points_[i].parent);
    if (!p) break;
    i = *p;
    ++d;
  }
  return d;
}

std::int64_t WeightedCluster::max_mult() const {
  std::int64_t m = 0;
  for (const auto& p : points_) m = std::max(m, p.mult);
  return m;
}

std::vector<std::int64_t> WeightedCluster::sorted_mults() const {
  std::vector<std::int64_t> out;
  for (const auto& p : points_) out.push_back(p.mult);
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

std::int64_t WeightedCluster::delta_sum() const {
  std::int64_t s = 0;
  for (const auto& p : points_) s += p.mult * (p.mult - 1) / 2;
  return s;
}

std::int64_t WeightedCluster::excess(std::size_t i) const {
  std::int64_t e = points_[i].mult;
  for (auto j : proximate_points(i)) e -= points_[j].mult;
  return e;
}

std::string WeightedCluster::shape_key() const {
  std::function<std::string(std::size_t)> encode = [&](std::size_t i) {
    const auto& p = points_[i];
    std::string s = "(" + std::to_string(p.mult);
    if (p.lies_on_c0()) s += "c";
    for (const auto& q : p.proximate_to) {
      if (p.parent && q == *p.parent) continue;
      if (auto k = index_of(q)) s += "s" + std::to_string(depth(i) - depth(*k));
    }
    std::vector<std::string> kids;
    for (auto c : children(i)) kids.push_back(encode(c));
    std::sort(kids.begin(), kids.end());
    for (const auto& k : kids) s += k;
    return s + ")";
  };
  std::vector<std::string> parts;
  for (auto r : roots()) parts.push_back(encode(r));
  std::sort(parts.begin(), parts.end());
  std::string out;
  for (const auto& p : parts) out += p;
  return out;
}

void WeightedCluster::remove_and_promote(std::size_t i, std::optional<bool> promoted_on_c0) {
  const std::string gone = points_[i].id;
  for (auto& p : points_) {
    if (p.parent && *p.parent == gone) {
      p.parent.reset();
      p.proximate_to.clear();
      p.on_c0 = promoted_on_c0;
    } else {
      std::erase(p.proximate_to, gone);
    }
  }
  points_.erase(points_.begin() + static_cast<std::ptrdiff_t>(i));
}

// ---------------------------------------------------------------------------
// Validation

std::string ValidationReport::summary() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < violations.size(); ++i) {
    if (i) os << "; ";
    os << violations[i].message;
    if (!violations[i].id.empty()) os << " [" << violations[i].id << "]";
  }
  return os.str();
}

ValidationReport validate_cluster(const WeightedCluster& cluster, ClusterContext context) {
  ValidationReport report;
  auto fail = [&](const std::string& id, std::string msg) {
    report.violations.push_back({id, std::move(msg)});
  };
  const auto& pts = cluster.points();
  std::set<std::string> seen;
  bool forest_ok = true;

  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto& p = pts[i];
    if (p.id.empty()) fail(p.id, "id: empty identifier");
    if (!seen.insert(p.id).second) {
      fail(p.id, "id: duplicate '" + p.id + "'");
      forest_ok = false;
    }
    if (p.mult < 1) fail(p.id, "mult: " + std::to_string(p.mult) + " < 1 at " + p.id);

    if (p.parent) {
      auto j = cluster.index_of(*p.parent);
      if (!j) {
        fail(p.id, "forest: unknown parent '" + *p.parent + "' of " + p.id);
        forest_ok = false;
      } else if (*j >= i) {
        fail(p.id, "forest: parent '" + *p.parent + "' must precede " + p.id);
        forest_ok = false;
      }
      if (std::find(p.proximate_to.begin(), p.proximate_to.end(), *p.parent) ==
          p.proximate_to.end()) {
        fail(p.id, "proximity: " + p.id + " must be proximate to its parent " + *p.parent);
      }
    } else if (!p.proximate_to.empty()) {
      fail(p.id, "proximity: level-0 point " + p.id + " cannot be proximate to anything");
    }

    if (p.proximate_to.size() > 2) {
      fail(p.id, "proximity: " + p.id + " is proximate to more than two points");
    }
    std::set<std::string> prox_seen;
    for (const auto& q : p.proximate_to) {
      if (!prox_seen.insert(q).second) fail(p.id, "proximity: repeated entry '" + q + "' at " + p.id);
      if (!cluster.index_of(q)) fail(p.id, "proximity: unknown point '" + q + "' at " + p.id);
    }

    if (p.on_c0.has_value()) {
      if (context == ClusterContext::Plane) {
        fail(p.id, "flag: on_c0 is only meaningful on ruled surfaces (" + p.id + ")");
      } else if (p.parent) {
        fail(p.id, "flag: on_c0 is only allowed on level-0 points (" + p.id + ")");
      }
    }
  }

  if (!forest_ok) return report;

  // Satellite structure: the extra proximity must point at a strict ancestor
  // of the parent, and the parent itself must lie on that exceptional curve.
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto& p = pts[i];
    if (!p.parent) continue;
    for (const auto& q : p.proximate_to) {
      if (q == *p.parent) continue;
      auto qi = cluster.index_of(q);
      if (!qi) continue;
      std::size_t cur = *cluster.index_of(*p.parent);
      bool ancestor = false;
      while (pts[cur].parent) {
        cur = *cluster.index_of(*pts[cur].parent);
        if (cur == *qi) {
          ancestor = true;
          break;
        }
      }
      if (!ancestor) {
        fail(p.id, "proximity: satellite entry '" + q + "' of " + p.id +
                       " is not a strict ancestor of its parent");
        continue;
      }
      const auto& par = pts[*cluster.index_of(*p.parent)];
      if (std::find(par.proximate_to.begin(), par.proximate_to.end(), q) ==
          par.proximate_to.end()) {
        fail(p.id, "proximity: satellite " + p.id + " needs its parent " + par.id +
                       " to be proximate to " + q);
      }
    }
  }

  for (std::size_t i = 0; i < pts.size(); ++i) {
    std::int64_t load = 0;
    for (auto j : cluster.proximate_points(i)) load += pts[j].mult;
    if (pts[i].mult < load) {
      fail(pts[i].id, "proximity: " + std::to_string(pts[i].mult) + " < " + std::to_string(load) +
                          " at " + pts[i].id);
    }
  }
  return report;
}

namespace {

// A line through two level-0 points (or tangent to a free first-order point)
// meets an irreducible curve of degree d in at most d points.
void check_lines(const PlanePair& pair, ValidationReport& report) {
  const auto& cl = pair.cluster;
  const auto roots = cl.roots();
  for (std::size_t x = 0; x < roots.size(); ++x) {
    for (std::size_t y = x + 1; y < roots.size(); ++y) {
      const auto& p = cl[roots[x]];
      const auto& q = cl[roots[y]];
      if (p.mult + q.mult > pair.degree) {
        report.violations.push_back(
            {p.id, "line: " + p.id + " + " + q.id + " multiplicities " + std::to_string(p.mult) +
                       " + " + std::to_string(q.mult) + " exceed degree " +
                       std::to_string(pair.degree)});
      }
    }
    for (auto c : cl.children(roots[x])) {
      if (cl[roots[x]].mult + cl[c].mult > pair.degree) {
        report.violations.push_back(
            {cl[c].id, "line: tangent line at " + cl[roots[x]].id + " through " + cl[c].id +
                           " would meet the curve more than degree times"});
      }
    }
  }
}

// Same for the conic through the five heaviest points. Multiplicities never
// grow from a point to its successors, so the heaviest points can be taken
// closed under ancestors.
void check_conic(const PlanePair& pair, ValidationReport& report) {
  if (pair.degree < 3) return;
  const auto m = pair.cluster.sorted_mults();
  std::int64_t sum = 0;
  for (std::size_t i = 0; i < m.size() && i < 5; ++i) sum += m[i];
  if (sum > 2 * pair.degree) {
    report.violations.push_back({"", "conic: five heaviest multiplicities sum to " + std::to_string(sum) +
                                         " > 2 * degree = " + std::to_string(2 * pair.degree)});
  }
}

}  // namespace

ValidationReport validate(const PlanePair& pair) {
  if (pair.degree < 1) {
    return ValidationReport{{{"", "degree: must be positive, got " + std::to_string(pair.degree)}}};
  }
  auto report = validate_cluster(pair.cluster, ClusterContext::Plane);
  if (!report.ok()) return report;
  if (pair.degree == 1 && !pair.cluster.empty()) {
    report.violations.push_back({pair.cluster[0].id, "degree: a line carries no singular points"});
  }
  for (const auto& p : pair.cluster.points()) {
    if (pair.degree >= 2 && p.mult > pair.degree - 1) {
      report.violations.push_back({p.id, "mult: " + std::to_string(p.mult) + " > degree - 1 at " +
                                             p.id});
    }
  }
  if (!report.ok()) return report;
  check_lines(pair, report);
  check_conic(pair, report);
  if (const auto g = combinatorial_genus(pair); g < 0) {
    report.violations.push_back({"", "genus: combinatorial genus " + std::to_string(g) + " < 0"});
  }
  return report;
}

ValidationReport validate(const RuledPair& pair) {
  ValidationReport report;
  if (pair.a < 0) report.violations.push_back({"", "surface: Hirzebruch index must be >= 0"});
  if (pair.alpha < 1) report.violations.push_back({"", "class: alpha must be >= 1"});
  if (pair.beta < 0) report.violations.push_back({"", "class: beta must be >= 0"});
  if (!report.ok()) return report;
  if (pair.a >= 1 && pair.meets_c0() < 0) {
    report.violations.push_back(
        {"", "class: C.C0 = beta - a*alpha = " + std::to_string(pair.meets_c0()) + " < 0"});
    return report;
  }
  report = validate_cluster(pair.cluster, ClusterContext::Ruled);
  if (!report.ok()) return report;
  std::int64_t on_c0 = 0;
  for (auto r : pair.cluster.roots()) {
    const auto& p = pair.cluster[r];
    if (p.lies_on_c0()) on_c0 += p.mult;
    if (p.mult > pair.alpha) {
      report.violations.push_back({p.id, "mult: " + std::to_string(p.mult) +
                                             " > alpha = C.f at " + p.id});
    }
    if (pair.a == 0 && p.mult > pair.beta && !(pair.alpha == 1 && pair.beta == 0)) {
      report.violations.push_back({p.id, "mult: " + std::to_string(p.mult) +
                                             " > beta = C.C0 at " + p.id + " on F0"});
    }
  }
  if (on_c0 > pair.meets_c0()) {
    report.violations.push_back({"", "c0: on-C0 multiplicities " + std::to_string(on_c0) +
                                         " exceed C.C0 = " + std::to_string(pair.meets_c0())});
  }
  if (const auto g = combinatorial_genus(pair); g < 0) {
    report.violations.push_back({"", "genus: combinatorial genus " + std::to_string(g) + " < 0"});
  }
  return report;
}

void require_valid(const PlanePair& pair) {
  if (auto r = validate(pair); !r.ok()) throw InvalidInput("invalid plane pair: " + r.summary());
}

void require_valid(const RuledPair& pair) {
  if (auto r = validate(pair); !r.ok()) throw InvalidInput("invalid ruled pair: " + r.summary());
}

// ---------------------------------------------------------------------------
// Genus

std::int64_t arithmetic_genus(const PlanePair& pair) {
  return (pair.degree - 1) * (pair.degree - 2) / 2;
}

std::int64_t arithmetic_genus(const RuledPair& pair) {
  // C.(C + K) / 2 + 1 with K = -2C0 - (a+2)f, which factors as below.
  return (pair.alpha - 1) * (2 * pair.beta - pair.a * pair.alpha - 2) / 2;
}

std::int64_t combinatorial_genus(const PlanePair& pair) {
  return arithmetic_genus(pair) - pair.cluster.delta_sum();
}

std::int64_t combinatorial_genus(const RuledPair& pair) {
  return arithmetic_genus(pair) - pair.cluster.delta_sum();
}

// ---------------------------------------------------------------------------
// Discrepancies

const Rational& DiscrepancyReport::entry(std::string_view id) const {
  for (const auto& [k, v] : entries) {
    if (k == id) return v;
  }
  throw InvalidInput("no discrepancy entry for '" + std::string(id) + "'");
}

namespace {

void check_coefficient(const Rational& c) {
  if (c <= 0 || c > 1) {
    throw InvalidInput("coefficient " + to_string(c) +
                       " outside (0,1]: saturation by smooth blowups only stabilises for c <= 1");
  }
}

}  // namespace

DiscrepancyReport cluster_discrepancies(const WeightedCluster& cluster, const Rational& c,
                                        const std::vector<bool>& in_scope, bool smooth_points) {
  check_coefficient(c);
  if (in_scope.size() != cluster.size()) throw InvalidInput("scope mask size mismatch");
  const auto& pts = cluster.points();
  std::vector<Rational> value(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    Rational v = 1 - c * pts[i].mult;
    for (const auto& q : pts[i].proximate_to) v += value[*cluster.index_of(q)];
    value[i] = v;
  }

  DiscrepancyReport out;
  out.coefficient = c;
  bool have_min = false;
  auto offer = [&](const Rational& v, const std::string& who) {
    if (!have_min || v < out.minimum) {
      out.minimum = v;
      out.witness = who;
      have_min = true;
    }
  };
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (!in_scope[i]) continue;
    out.entries.emplace_back(pts[i].id, value[i]);
    offer(value[i], pts[i].id);
  }

  // Saturation: virtual mult-1 blowups where the strict transform still meets
  // the exceptional configuration, then chains on top of them.
  std::vector<std::pair<Rational, std::string>> frontier;
  if (smooth_points) frontier.emplace_back(1 - c, "@smooth");
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (in_scope[i] && cluster.excess(i) > 0) {
      frontier.emplace_back(1 + value[i] - c, "@sat(" + pts[i].id + ")");
    }
  }
  const std::size_t depth_cap = 2 * pts.size() + 3;
  for (std::size_t depth = 0; depth < depth_cap && !frontier.empty(); ++depth) {
    for (const auto& [v, who] : frontier) offer(v, who);
    bool stable = true;
    for (auto& [v, who] : frontier) {
      Rational next = 1 + v - c;
      if (next < out.minimum) stable = false;
      v = next;
    }
    if (stable) break;
  }
  if (!have_min) {
    out.vacuous = true;
    out.minimum = 1;
  }
  return out;
}

DiscrepancyReport log_discrepancies(const PlanePair& pair, const Rational& c) {
  return cluster_discrepancies(pair.cluster, c, std::vector<bool>(pair.cluster.size(), true), true);
}

DiscrepancyReport log_discrepancies(const RuledPair& pair, const Rational& c, Scope scope) {
  const auto& cl = pair.cluster;
  if (scope == Scope::Global) {
    return cluster_discrepancies(cl, c, std::vector<bool>(cl.size(), true), true);
  }
  std::vector<bool> in_scope(cl.size(), false);
  std::int64_t on_c0 = 0;
  for (auto r : cl.roots()) {
    if (!cl[r].lies_on_c0()) continue;
    on_c0 += cl[r].mult;
    for (auto j : cl.subtree(r)) in_scope[j] = true;
  }
  const std::int64_t meets = pair.a == 0 ? pair.beta : pair.meets_c0();
  return cluster_discrepancies(cl, c, in_scope, meets > on_c0);
}

namespace {

Classification classify(const DiscrepancyReport& r) {
  Classification out;
  out.minimum = r.minimum;
  out.witness = r.witness;
  if (r.minimum > 0) {
    out.kind = SingularityClass::Terminal;
  } else if (r.minimum == 0) {
    out.kind = SingularityClass::Canonical;
  } else {
    out.kind = SingularityClass::NonCanonical;
  }
  return out;
}

}  // namespace

Classification classify_singularities(const PlanePair& pair, const Rational& c) {
  return classify(log_discrepancies(pair, c));
}

Classification classify_singularities(const RuledPair& pair, const Rational& c, Scope scope) {
  return classify(log_discrepancies(pair, c, scope));
}

std::string to_string(SingularityClass kind) {
  switch (kind) {
    case SingularityClass::Terminal: return "Terminal";
    case SingularityClass::Canonical: return "Canonical";
    case SingularityClass::NonCanonical: return "NonCanonical";
  }
  return "?";
}

std::string to_string(CertificateKind kind) {
  return kind == CertificateKind::Jung ? "Jung" : "NoetherFano";
}

// ---------------------------------------------------------------------------
// Certificates

Certificate noether_fano_certificate(std::int64_t n, std::int64_t d_high, std::int64_t d_low,
                                     std::int64_t max_mult) {
  if (n < 2) throw InvalidInput("noether-fano: ambient dimension must be >= 2");
  if (d_low < 1) throw InvalidInput("noether-fano: lower degree must be >= 1");
  if (d_high <= d_low) {
    throw InvalidInput("noether-fano: needs d_high > d_low (got " + std::to_string(d_high) +
                       " <= " + std::to_string(d_low) + ")");
  }
  Certificate cert;
  cert.kind = CertificateKind::NoetherFano;
  const std::int64_t lhs = max_mult * (n + 1);
  cert.holds = lhs <= d_high;
  cert.data = {
      {"ambient_dimension", std::to_string(n)},
      {"d_high", std::to_string(d_high)},
      {"d_low", std::to_string(d_low)},
      {"max_mult", std::to_string(max_mult)},
      {"inequality", std::to_string(max_mult) + "*" + std::to_string(n + 1) + " = " +
                         std::to_string(lhs) + (cert.holds ? " <= " : " > ") +
                         std::to_string(d_high)},
  };
  return cert;
}

Certificate noether_fano_certificate(const PlanePair& pair) {
  require_valid(pair);
  if (pair.degree < 3) throw InvalidInput("noether-fano: plane form needs degree >= 3");
  const Rational c = make_rational(3, pair.degree);
  const auto cls = classify_singularities(pair, c);
  Certificate cert;
  cert.kind = CertificateKind::NoetherFano;
  cert.holds = cls.kind != SingularityClass::NonCanonical;
  cert.data = {
      {"ambient_dimension", "2"},
      {"d_high", std::to_string(pair.degree)},
      {"coefficient", to_string(c)},
      {"classification", to_string(cls.kind)},
      {"minimum_discrepancy", to_string(cls.minimum)},
      {"witness", cls.witness},
      {"inequality", "disc(P2, " + to_string(c) + " C) = " + to_string(cls.minimum) +
                         (cert.holds ? " >= 0" : " < 0")},
  };
  return cert;
}

Certificate jung_test(const PlanePair& pair) {
  require_valid(pair);
  auto m = pair.cluster.sorted_mults();
  while (m.size() < 3) m.push_back(1);
  const std::int64_t sum = m[0] + m[1] + m[2];
  Certificate cert;
  cert.kind = CertificateKind::Jung;
  cert.holds = sum <= pair.degree;
  cert.data = {
      {"m1", std::to_string(m[0])},
      {"m2", std::to_string(m[1])},
      {"m3", std::to_string(m[2])},
      {"degree", std::to_string(pair.degree)},
      {"inequality", std::to_string(m[0]) + "+" + std::to_string(m[1]) + "+" +
                         std::to_string(m[2]) + " = " + std::to_string(sum) +
                         (cert.holds ? " <= " : " > ") + std::to_string(pair.degree)},
  };
  return cert;
}

}  // namespace cremona
