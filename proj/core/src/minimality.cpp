#include "cremona/minimality.hpp"

#include <algorithm>

#include "cremona/error.hpp"

namespace cremona {

namespace {

void append(Trace& to, const Trace& from) { to.insert(to.end(), from.begin(), from.end()); }

std::int64_t total_weight(const WeightedCluster& cl) {
  std::int64_t w = 0;
  for (const auto& p : cl.points()) w += p.mult;
  return w;
}

struct Pick {
  std::int64_t gain = -1;
  std::vector<std::size_t> nodes;
};

// best[s] = most valuable order ideal of size s inside the subtree of i that
// contains i (s >= 1); best[0] is the empty choice.
std::vector<Pick> subtree_table(const WeightedCluster& cl, std::size_t i, std::size_t k) {
  std::vector<Pick> acc(k + 1);
  acc[0].gain = 0;
  for (auto c : cl.children(i)) {
    const auto child = subtree_table(cl, c, k);
    std::vector<Pick> next = acc;
    for (std::size_t s = 0; s <= k; ++s) {
      if (acc[s].gain < 0) continue;
      for (std::size_t t = 1; s + t <= k; ++t) {
        if (child[t].gain < 0) continue;
        const auto g = acc[s].gain + child[t].gain;
        if (g > next[s + t].gain) {
          next[s + t].gain = g;
          next[s + t].nodes = acc[s].nodes;
          next[s + t].nodes.insert(next[s + t].nodes.end(), child[t].nodes.begin(), child[t].nodes.end());
        }
      }
    }
    acc = std::move(next);
  }
  std::vector<Pick> out(k + 1);
  out[0].gain = 0;
  for (std::size_t s = 1; s <= k; ++s) {
    if (acc[s - 1].gain < 0) continue;
    out[s].gain = acc[s - 1].gain + cl[i].mult - 1;
    out[s].nodes = acc[s - 1].nodes;
    out[s].nodes.push_back(i);
  }
  return out;
}

}  // namespace

ResolvedRuledPair resolve_along_c0(const RuledPair& model) {
  if (!adjoint(model).nef) throw InvalidInput("resolve_along_c0: adjoint class is not nef");
  ResolvedRuledPair out;
  out.base = model;
  const std::int64_t guard = total_weight(model.cluster) + 1;
  for (std::int64_t step = 0;; ++step) {
    const auto& cl = out.base.cluster;
    std::optional<std::size_t> pick;
    for (auto r : cl.roots()) {
      if (!cl[r].lies_on_c0() || cl[r].mult < 2) continue;
      if (!pick || cl[r].mult > cl[*pick].mult) pick = r;
    }
    if (!pick) break;
    if (step >= guard) throw InvariantViolation("resolve_along_c0: no progress after " + std::to_string(step) + " elms");
    out.consumed.push_back(cl[*pick].mult);
    Move mv;
    out.base = elm(out.base, Center::point(cl[*pick].id), &mv);
    out.trace.push_back(std::move(mv));
  }
  for (auto r : out.base.cluster.roots()) {
    const auto& p = out.base.cluster[r];
    if (p.lies_on_c0() && p.mult >= 2) throw InvariantViolation("resolve_along_c0: " + p.id + " still on C0");
  }
  if (out.base.meets_c0() < 0) throw InvariantViolation("resolve_along_c0: negative C.C0");
  return out;
}

CenterSequence optimal_center_sequence(const ResolvedRuledPair& r) {
  const auto& base = r.base;
  if (base.a < 1) throw InvalidInput("optimal_center_sequence: needs b >= 1");
  const auto k = static_cast<std::size_t>(base.a - 1);
  const auto& cl = base.cluster;

  std::vector<Pick> forest(k + 1);
  forest[0].gain = 0;
  for (auto root : cl.roots()) {
    if (cl[root].lies_on_c0()) continue;
    const auto t = subtree_table(cl, root, k);
    std::vector<Pick> next = forest;
    for (std::size_t s = 0; s <= k; ++s) {
      if (forest[s].gain < 0) continue;
      for (std::size_t u = 1; s + u <= k; ++u) {
        if (t[u].gain < 0) continue;
        const auto g = forest[s].gain + t[u].gain;
        if (g > next[s + u].gain) {
          next[s + u].gain = g;
          next[s + u].nodes = forest[s].nodes;
          next[s + u].nodes.insert(next[s + u].nodes.end(), t[u].nodes.begin(), t[u].nodes.end());
        }
      }
    }
    forest = std::move(next);
  }
  std::size_t best = 0;
  for (std::size_t s = 1; s <= k; ++s) {
    if (forest[s].gain > forest[best].gain) best = s;
  }
  auto nodes = forest[best].nodes;
  std::sort(nodes.begin(), nodes.end());

  CenterSequence seq;
  for (auto i : nodes) {
    seq.centers.push_back(Center::point(cl[i].id));
    seq.mults.push_back(cl[i].mult);
  }
  while (seq.centers.size() < k) {
    seq.centers.push_back(Center::generic(false, 1));
    seq.mults.push_back(1);
  }
  for (auto m : seq.mults) seq.total += m;
  return seq;
}

PlaneModel minimal_plane_model(const ResolvedRuledPair& r) {
  PlaneModel out;
  RuledPair state = r.base;
  std::int64_t expected = 0;
  if (state.a == 0) {
    std::optional<std::size_t> pick;
    for (auto root : state.cluster.roots()) {
      if (!pick || state.cluster[root].mult > state.cluster[*pick].mult) pick = root;
    }
    const Center c = pick ? Center::point(state.cluster[*pick].id) : Center::generic(false, 1);
    const std::int64_t m = pick ? state.cluster[*pick].mult : 1;
    expected = state.beta + state.alpha - m;
    Move mv;
    state = elm(state, c, &mv);
    out.trace.push_back(std::move(mv));
  } else {
    const auto seq = optimal_center_sequence(r);
    expected = state.beta - seq.total;
    for (const auto& c : seq.centers) {
      Move mv;
      state = elm(state, c, &mv);
      out.trace.push_back(std::move(mv));
    }
  }
  Move mv;
  out.pair = blow_down_to_plane(state, &mv);
  out.trace.push_back(std::move(mv));
  out.degree = out.pair.degree;
  if (out.degree != expected) {
    throw InvariantViolation("minimal_plane_model: degree " + std::to_string(out.degree) +
                             " != expected " + std::to_string(expected));
  }
  for (const auto& m : out.trace) {
    for (const auto& a : m.assumptions) {
      if (std::find(out.assumptions.begin(), out.assumptions.end(), a) == out.assumptions.end()) {
        out.assumptions.push_back(a);
      }
    }
  }
  out.assumptions.push_back("plane cluster assembled in general position");
  return out;
}

std::int64_t planar_system_degree(const ResolvedRuledPair& r, std::int64_t gamma,
                                  const std::vector<std::int64_t>& mus) {
  const auto& s = r.base;
  const std::int64_t n = 2 * gamma + 1 - s.a;
  if (n < 0 || static_cast<std::int64_t>(mus.size()) != n) {
    throw InvalidInput("planar_system_degree: expected " + std::to_string(std::max<std::int64_t>(n, 0)) +
                       " multiplicities for gamma = " + std::to_string(gamma) + ", got " +
                       std::to_string(mus.size()));
  }
  std::int64_t sum = 0;
  for (auto m : mus) {
    if (m < 0 || m > s.alpha) throw InvalidInput("planar_system_degree: multiplicity out of range");
    sum += m;
  }
  return s.alpha * (gamma - s.a + 1) + s.beta - sum;
}

std::string to_string(MinimalityStatus s) {
  switch (s) {
    case MinimalityStatus::Minimal: return "Minimal";
    case MinimalityStatus::NotMinimal: return "NotMinimal";
    case MinimalityStatus::Line: return "Line";
  }
  return "?";
}

std::string to_string(MinimalityReason r) {
  switch (r) {
    case MinimalityReason::SubcriticalMult: return "SubcriticalMult";
    case MinimalityReason::MinimalPlaneModel: return "MinimalPlaneModel";
    case MinimalityReason::KappaZeroDegree: return "KappaZeroDegree";
    case MinimalityReason::Witness: return "Witness";
  }
  return "?";
}

Trace line_witness(const Pair& pair) {
  Trace out;
  RuledPair r;
  if (const auto* p = std::get_if<PlanePair>(&pair)) {
    if (p->degree == 1) return out;
    const auto& cl = p->cluster;
    const std::int64_t m1 = std::max<std::int64_t>(cl.max_mult(), 1);
    if (p->degree - m1 > 1) throw InvalidInput("line_witness: degree minus top multiplicity exceeds 1");
    std::string choice = kGenericCenter;
    if (cl.max_mult() >= 2) {
      for (auto root : cl.roots()) {
        if (cl[root].mult == m1) {
          choice = cl[root].id;
          break;
        }
      }
    }
    Move mv;
    r = blow_up_max_point(*p, choice, &mv);
    out.push_back(std::move(mv));
  } else {
    r = std::get<RuledPair>(pair);
  }
  if (r.alpha != 1) throw InvalidInput("line_witness: ruled state needs alpha = 1");
  const std::int64_t guard = 2 * (r.a + r.beta) + 4;
  for (std::int64_t i = 0; !(r.a == 1 && r.beta == 1); ++i) {
    if (i > guard) throw InvariantViolation("line_witness: no progress");
    Move mv;
    r = elm(r, Center::generic(false, 1), &mv);
    out.push_back(std::move(mv));
  }
  Move mv;
  blow_down_to_plane(r, &mv);
  out.push_back(std::move(mv));
  return out;
}

MinimalityVerdict is_minimal_degree(const PlanePair& pair, std::size_t branch_bound) {
  require_valid(pair);
  MinimalityVerdict v;
  const std::int64_t d = pair.degree;
  const std::int64_t m1 = std::max<std::int64_t>(pair.cluster.max_mult(), 1);
  if (d == 1 || d - m1 <= 1) {
    v.status = MinimalityStatus::Line;
    v.reason = MinimalityReason::Witness;
    v.minimal_degree = 1;
    if (d > 1) v.witness_trace = line_witness(pair);
    return v;
  }
  if (3 * m1 < d) {
    v.status = MinimalityStatus::Minimal;
    v.reason = MinimalityReason::SubcriticalMult;
    v.minimal_degree = d;
    v.certificate = noether_fano_certificate(pair);
    if (!v.certificate->holds) throw InvariantViolation("is_minimal_degree: m1 < d/3 but no certificate");
    return v;
  }

  const auto set = enumerate_standard_models(pair, branch_bound);
  v.truncated = set.truncated;
  std::optional<std::int64_t> best;
  bool all_kappa0 = true;
  std::int64_t alpha = 0;
  for (const auto& m : set.models) {
    Trace w = m.trace;
    std::int64_t deg = 0;
    switch (m.kind) {
      case ModelKind::Line:
        append(w, line_witness(m.pair));
        deg = 1;
        all_kappa0 = false;
        break;
      case ModelKind::TerminalPlane:
        deg = std::get<PlanePair>(m.pair).degree;
        all_kappa0 = false;
        break;
      default: {
        const auto& r = std::get<RuledPair>(m.pair);
        const auto res = resolve_along_c0(r);
        const auto pm = minimal_plane_model(res);
        append(w, res.trace);
        append(w, pm.trace);
        deg = pm.degree;
        if (m.kappa != 0) all_kappa0 = false;
        alpha = r.alpha;
      }
    }
    if (!best || deg < *best) {
      best = deg;
      v.witness_trace = std::move(w);
      v.model = m;
    }
  }
  if (!best) throw InvariantViolation("is_minimal_degree: no standard model");
  v.minimal_degree = *best;

  if (*best < d) {
    const Pair end = replay(pair, *v.witness_trace);
    const auto* pl = std::get_if<PlanePair>(&end);
    if (!pl || pl->degree != *best || combinatorial_genus(*pl) != combinatorial_genus(pair)) {
      throw InvariantViolation("is_minimal_degree: witness does not reach a plane curve of degree " +
                               std::to_string(*best));
    }
    v.status = *best == 1 ? MinimalityStatus::Line : MinimalityStatus::NotMinimal;
    v.reason = MinimalityReason::Witness;
    return v;
  }
  if (*best > d) {
    throw InvariantViolation("is_minimal_degree: minimal plane model degree " + std::to_string(*best) +
                             " exceeds the input degree " + std::to_string(d));
  }
  v.status = MinimalityStatus::Minimal;
  v.witness_trace.reset();
  v.reason = all_kappa0 && 2 * d == 3 * alpha ? MinimalityReason::KappaZeroDegree
                                             : MinimalityReason::MinimalPlaneModel;
  return v;
}

}  // namespace cremona
