#include "cremona/hirzebruch.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include "cremona/error.hpp"

namespace cremona {

namespace {

constexpr const char* kGenericPosition = "generic-position assumption";

std::string fresh_id(const WeightedCluster& cl, const std::string& prefix) {
  std::int64_t top = 0;
  for (const auto& p : cl.points()) {
    if (p.id.rfind(prefix, 0) != 0) continue;
    try {
      top = std::max<std::int64_t>(top, std::stoll(p.id.substr(prefix.size())));
    } catch (const std::exception&) {
    }
  }
  return prefix + std::to_string(top + 1);
}

std::int64_t on_c0_weight(const WeightedCluster& cl) {
  std::int64_t s = 0;
  for (auto r : cl.roots()) {
    if (cl[r].lies_on_c0()) s += cl[r].mult;
  }
  return s;
}

void clear_flags(WeightedCluster& cl) {
  for (auto& p : cl.mutable_points()) {
    p.on_c0 = p.is_root() ? std::optional<bool>(false) : std::nullopt;
  }
}

// Drops `gone` and notes any satellite relation that had to be forgotten.
void remove_center(WeightedCluster& cl, std::size_t idx, bool promoted_on_c0,
                   std::vector<std::string>& assumptions) {
  const std::string gone = cl[idx].id;
  for (const auto& p : cl.points()) {
    if (p.parent && *p.parent == gone) continue;
    if (std::find(p.proximate_to.begin(), p.proximate_to.end(), gone) != p.proximate_to.end()) {
      assumptions.push_back("satellite proximity of " + p.id + " to " + gone + " dropped");
    }
  }
  cl.remove_and_promote(idx, promoted_on_c0);
}

}  // namespace

bool is_plane(const Pair& p) { return std::holds_alternative<PlanePair>(p); }

std::int64_t combinatorial_genus(const Pair& p) {
  return std::visit([](const auto& x) { return combinatorial_genus(x); }, p);
}

void require_valid(const Pair& p) {
  std::visit([](const auto& x) { require_valid(x); }, p);
}

std::string Center::label() const {
  if (id) return *id;
  return std::string(kGenericCenter) + (on_c0 ? "/on/" : "/off/") + std::to_string(mult);
}

Center Center::parse(const std::string& label) {
  const std::string g = kGenericCenter;
  if (label.rfind(g, 0) != 0) return Center::point(label);
  const std::string rest = label.substr(g.size());
  for (const char* side : {"/on/", "/off/"}) {
    const std::string s = side;
    if (rest.rfind(s, 0) == 0) {
      const std::string m = rest.substr(s.size());
      if (m == "0" || m == "1") return Center::generic(s == "/on/", m == "1" ? 1 : 0);
    }
  }
  throw InvalidInput("malformed generic center '" + label + "'");
}

std::string to_string(MoveOp op) {
  switch (op) {
    case MoveOp::Blowup: return "blowup";
    case MoveOp::Elm: return "elm";
    case MoveOp::Blowdown: return "blowdown";
    case MoveOp::Swap: return "swap";
  }
  return "?";
}

std::string to_string(Direction d) {
  switch (d) {
    case Direction::None: return "none";
    case Direction::Up: return "up";
    case Direction::Down: return "down";
  }
  return "?";
}

MoveOp parse_move_op(const std::string& s) {
  for (auto op : {MoveOp::Blowup, MoveOp::Elm, MoveOp::Blowdown, MoveOp::Swap}) {
    if (to_string(op) == s) return op;
  }
  throw InvalidInput("unknown move op '" + s + "'");
}

Direction parse_direction(const std::string& s) {
  for (auto d : {Direction::None, Direction::Up, Direction::Down}) {
    if (to_string(d) == s) return d;
  }
  throw InvalidInput("unknown direction '" + s + "'");
}

SurfaceState SurfaceState::of(const Pair& p) {
  SurfaceState s;
  if (const auto* pl = std::get_if<PlanePair>(&p)) {
    s.plane = true;
    s.degree = pl->degree;
  } else {
    const auto& r = std::get<RuledPair>(p);
    s.a = r.a;
    s.alpha = r.alpha;
    s.beta = r.beta;
  }
  return s;
}

std::string to_string(const SurfaceState& s) {
  if (s.plane) return "P2 degree " + std::to_string(s.degree);
  return "F" + std::to_string(s.a) + " " + std::to_string(s.alpha) + "C0+" +
         std::to_string(s.beta) + "f";
}

RuledPair blow_up_max_point(const PlanePair& pair, const std::string& choice, Move* record) {
  const auto& cl = pair.cluster;
  const std::int64_t top = cl.max_mult();
  RuledPair out;
  out.cluster = cl;
  clear_flags(out.cluster);
  std::vector<std::string> assumptions;
  std::int64_t m1 = 1;
  if (choice == kGenericCenter) {
    if (top > 1) {
      throw InvalidInput("blow_up_max_point: generic point chosen but the cluster has a point of multiplicity " +
                         std::to_string(top));
    }
  } else {
    auto idx = cl.index_of(choice);
    if (!idx) throw InvalidInput("blow_up_max_point: unknown point '" + choice + "'");
    if (!cl[*idx].is_root()) throw InvalidInput("blow_up_max_point: '" + choice + "' is not a level-0 point");
    if (cl[*idx].mult != top) {
      throw InvalidInput("blow_up_max_point: '" + choice + "' has multiplicity " +
                         std::to_string(cl[*idx].mult) + " < " + std::to_string(top));
    }
    m1 = top;
    remove_center(out.cluster, *idx, true, assumptions);
  }
  if (pair.degree - m1 < 1) throw InvalidInput("blow_up_max_point: degree must exceed the multiplicity");
  out.a = 1;
  out.alpha = pair.degree - m1;
  out.beta = pair.degree;
  if (record) {
    *record = Move{};
    record->op = MoveOp::Blowup;
    record->center = choice;
    record->after = SurfaceState::of(out);
    record->assumptions = std::move(assumptions);
  }
  return out;
}

RuledPair elm(const RuledPair& pair, const Center& center, Move* record) {
  const auto& cl = pair.cluster;
  std::int64_t m = center.mult;
  bool on_c0 = center.on_c0;
  std::optional<std::size_t> idx;
  if (center.id) {
    idx = cl.index_of(*center.id);
    if (!idx) throw InvalidInput("elm: unknown center '" + *center.id + "'");
    if (!cl[*idx].is_root()) throw InvalidInput("elm: center '" + *center.id + "' is not a level-0 point");
    m = cl[*idx].mult;
    on_c0 = cl[*idx].lies_on_c0();
  } else {
    if (m < 0 || m > 1) throw InvalidInput("elm: generic centers have multiplicity 0 or 1");
    if (on_c0 && pair.a > 0 && m > pair.meets_c0() - on_c0_weight(cl)) {
      throw InvalidInput("elm: no free intersection point of the curve with C0");
    }
  }
  if (pair.alpha < 1) throw InvalidInput("elm: alpha must be >= 1");
  if (m > pair.alpha) {
    throw InvalidInput("elm: center multiplicity " + std::to_string(m) + " > alpha = " +
                       std::to_string(pair.alpha));
  }
  const bool up = on_c0 || pair.a == 0;

  RuledPair out;
  out.alpha = pair.alpha;
  out.cluster = cl;
  std::vector<std::string> assumptions;
  if (idx) {
    remove_center(out.cluster, *idx, false, assumptions);
    if (!cl.children(*idx).empty()) assumptions.push_back(kGenericPosition);
  }
  if (up) {
    out.a = pair.a + 1;
    out.beta = pair.beta + pair.alpha - m;
    if (pair.a == 0) clear_flags(out.cluster);
  } else {
    out.a = pair.a - 1;
    out.beta = pair.beta - m;
  }
  if (out.meets_c0() < 0) throw InvalidInput("elm: the curve would contain the new C0");
  const std::int64_t q = pair.alpha - m;
  std::string qid;
  if (q >= 2) {
    qid = fresh_id(out.cluster, "@q");
    ClusterPoint p;
    p.id = qid;
    p.mult = q;
    p.on_c0 = !up;
    out.cluster.append(std::move(p));
  }
  if (record) {
    *record = Move{};
    record->op = MoveOp::Elm;
    record->center = center.id ? *center.id : center.label();
    record->direction = up ? Direction::Up : Direction::Down;
    record->after = SurfaceState::of(out);
    record->new_point_mult = q;
    record->new_point_id = qid;
    record->assumptions = std::move(assumptions);
  }
  return out;
}

PlanePair blow_down_to_plane(const RuledPair& pair, Move* record) {
  if (pair.a != 1) throw InvalidInput("blow_down_to_plane: needs F_1, got F_" + std::to_string(pair.a));
  const auto& cl = pair.cluster;
  const std::int64_t top = pair.beta - pair.alpha;
  std::vector<std::size_t> on;
  for (auto r : cl.roots()) {
    if (cl[r].lies_on_c0()) on.push_back(r);
  }
  PlanePair out;
  out.degree = pair.beta;
  std::string tid;
  std::vector<ClusterPoint> pts;
  if (top >= 2 || !on.empty()) {
    tid = fresh_id(cl, "@c");
    ClusterPoint t;
    t.id = tid;
    t.mult = top;
    pts.push_back(std::move(t));
  }
  for (std::size_t i = 0; i < cl.size(); ++i) {
    ClusterPoint p = cl[i];
    if (std::find(on.begin(), on.end(), i) != on.end()) {
      p.parent = tid;
      p.proximate_to = {tid};
    }
    p.on_c0.reset();
    pts.push_back(std::move(p));
  }
  out.cluster = WeightedCluster(std::move(pts));
  if (record) {
    *record = Move{};
    record->op = MoveOp::Blowdown;
    record->center = "C0";
    record->after = SurfaceState::of(out);
    record->new_point_mult = top;
    record->new_point_id = tid;
  }
  return out;
}

RuledPair swap_rulings(const RuledPair& pair, Move* record) {
  if (pair.a != 0) throw InvalidInput("swap_rulings: needs F_0, got F_" + std::to_string(pair.a));
  if (pair.beta < 1) throw InvalidInput("swap_rulings: beta must be >= 1");
  RuledPair out = pair;
  std::swap(out.alpha, out.beta);
  clear_flags(out.cluster);
  if (record) {
    *record = Move{};
    record->op = MoveOp::Swap;
    record->center = "rulings";
    record->after = SurfaceState::of(out);
  }
  return out;
}

AdjointData adjoint(const RuledPair& pair, const Rational& c) {
  AdjointData d;
  d.c = c;
  d.dot_f = c * pair.alpha - 2;
  d.dot_c0 = Rational(pair.a - 2) + c * pair.meets_c0();
  if (c * pair.alpha == 2) d.lambda = d.dot_c0;
  d.nef = d.dot_f >= 0 && d.dot_c0 >= 0;
  return d;
}

AdjointData adjoint(const RuledPair& pair) {
  if (pair.alpha < 1) throw InvalidInput("adjoint: alpha must be >= 1");
  return adjoint(pair, make_rational(2, pair.alpha));
}

int kodaira_dimension(const RuledPair& pair) {
  if (!adjoint(pair).nef) throw InvalidInput("kodaira_dimension: adjoint class is not nef");
  return 2 * pair.beta == pair.alpha * (pair.a + 2) ? 0 : 1;
}

Pair apply_move(const Pair& state, const Move& move) {
  Move got;
  Pair next;
  switch (move.op) {
    case MoveOp::Blowup:
      if (!is_plane(state)) throw InvariantViolation("replay: blowup on a ruled state");
      next = blow_up_max_point(std::get<PlanePair>(state), move.center, &got);
      break;
    case MoveOp::Elm:
      if (is_plane(state)) throw InvariantViolation("replay: elm on a plane state");
      next = elm(std::get<RuledPair>(state), Center::parse(move.center), &got);
      break;
    case MoveOp::Blowdown:
      if (is_plane(state)) throw InvariantViolation("replay: blowdown on a plane state");
      next = blow_down_to_plane(std::get<RuledPair>(state), &got);
      break;
    case MoveOp::Swap:
      if (is_plane(state)) throw InvariantViolation("replay: swap on a plane state");
      next = swap_rulings(std::get<RuledPair>(state), &got);
      break;
  }
  if (got.after != move.after || got.direction != move.direction ||
      got.new_point_mult != move.new_point_mult || got.new_point_id != move.new_point_id) {
    throw InvariantViolation("replay: recorded " + to_string(move.after) + ", computed " +
                             to_string(got.after));
  }
  return next;
}

Pair replay(const Pair& start, const Trace& trace) {
  Pair state = start;
  for (std::size_t i = 0; i < trace.size(); ++i) {
    try {
      state = apply_move(state, trace[i]);
    } catch (const Error& e) {
      throw InvariantViolation("replay diverges at step " + std::to_string(i) + ": " + e.what());
    }
  }
  return state;
}

std::string to_string(ModelKind k) {
  switch (k) {
    case ModelKind::Line: return "Line";
    case ModelKind::TerminalPlane: return "TerminalPlane";
    case ModelKind::F0Terminal: return "F0Terminal";
    case ModelKind::FaCanonical: return "FaCanonical";
  }
  return "?";
}

void check_standard_model(const StandardModel& m) {
  auto fail = [&](const std::string& why) {
    throw InvariantViolation(to_string(m.kind) + " model fails: " + why);
  };
  if (m.kind == ModelKind::Line) {
    if (const auto* p = std::get_if<PlanePair>(&m.pair)) {
      if (p->degree - std::max<std::int64_t>(p->cluster.max_mult(), 1) > 1 && p->degree != 1) {
        fail("degree minus top multiplicity exceeds 1");
      }
    } else if (std::get<RuledPair>(m.pair).alpha != 1) {
      fail("ruled line model needs alpha = 1");
    }
    return;
  }
  if (m.kind == ModelKind::TerminalPlane) {
    const auto& p = std::get<PlanePair>(m.pair);
    if (p.degree < 3 || classify_singularities(p, make_rational(3, p.degree)).kind != SingularityClass::Terminal) {
      fail("plane pair is not terminal");
    }
    return;
  }
  const auto& r = std::get<RuledPair>(m.pair);
  const auto adj = adjoint(r);
  if (!adj.nef) fail("adjoint not nef");
  const Rational c = make_rational(2, r.alpha);
  if (m.kind == ModelKind::F0Terminal) {
    if (r.a != 0) fail("not on F_0");
    if (classify_singularities(r, c).kind != SingularityClass::Terminal) fail("not terminal");
  } else {
    if (classify_singularities(r, c).kind == SingularityClass::NonCanonical) fail("not canonical");
    if (classify_singularities(r, c, Scope::AlongC0).kind != SingularityClass::Terminal) {
      fail("not terminal along C0");
    }
  }
  if (m.kappa != kodaira_dimension(r)) fail("kappa mismatch");
}

namespace {

struct Step {
  Move move;
  Pair next;
};

struct Expansion {
  std::optional<StandardModel> done;
  std::vector<Step> next;
};

struct Candidate {
  Center center;
  std::int64_t mult;
  std::size_t order;
  std::string id;
};

void sort_candidates(std::vector<Candidate>& cs, const TieBreak& policy) {
  auto rank = [&](const Candidate& c) {
    auto it = std::find(policy.prefer.begin(), policy.prefer.end(), c.id);
    return it == policy.prefer.end() ? policy.prefer.size()
                                     : static_cast<std::size_t>(it - policy.prefer.begin());
  };
  std::stable_sort(cs.begin(), cs.end(), [&](const Candidate& x, const Candidate& y) {
    return std::make_tuple(rank(x), -x.mult, x.order) < std::make_tuple(rank(y), -y.mult, y.order);
  });
}

StandardModel finish(ModelKind kind, Pair pair) {
  StandardModel m;
  m.kind = kind;
  m.pair = std::move(pair);
  if (!is_plane(m.pair) && kind != ModelKind::Line) m.kappa = kodaira_dimension(std::get<RuledPair>(m.pair));
  return m;
}

Expansion expand_plane(const PlanePair& p, const TieBreak& policy) {
  Expansion e;
  const auto& cl = p.cluster;
  const std::int64_t m1 = std::max<std::int64_t>(cl.max_mult(), 1);
  if (p.degree == 1 || p.degree - m1 <= 1) {
    e.done = finish(ModelKind::Line, p);
    return e;
  }
  if (p.degree >= 3 &&
      classify_singularities(p, make_rational(3, p.degree)).kind == SingularityClass::Terminal) {
    e.done = finish(ModelKind::TerminalPlane, p);
    return e;
  }
  std::vector<Candidate> cs;
  if (cl.max_mult() >= 2) {
    for (auto r : cl.roots()) {
      if (cl[r].mult == m1) cs.push_back({Center::point(cl[r].id), m1, r, cl[r].id});
    }
  } else {
    cs.push_back({Center::point(kGenericCenter), 1, 0, kGenericCenter});
  }
  sort_candidates(cs, policy);
  for (const auto& c : cs) {
    Step s;
    s.next = blow_up_max_point(p, c.id, &s.move);
    e.next.push_back(std::move(s));
  }
  return e;
}

Expansion expand_ruled(const RuledPair& r, const TieBreak& policy) {
  Expansion e;
  if (r.alpha == 1) {
    e.done = finish(ModelKind::Line, r);
    return e;
  }
  if (r.a == 0 && r.beta < r.alpha) {
    Step s;
    s.next = swap_rulings(r, &s.move);
    e.next.push_back(std::move(s));
    return e;
  }
  const Rational c = make_rational(2, r.alpha);
  const auto& cl = r.cluster;
  std::vector<Candidate> cs;
  for (auto root : cl.roots()) {
    std::vector<bool> scope(cl.size(), false);
    for (auto j : cl.subtree(root)) scope[j] = true;
    const auto rep = cluster_discrepancies(cl, c, scope, false);
    const bool strict = r.a == 0 || cl[root].lies_on_c0();
    if (strict ? rep.minimum <= 0 : rep.minimum < 0) {
      cs.push_back({Center::point(cl[root].id), cl[root].mult, root, cl[root].id});
    }
  }
  if (r.alpha <= 2) {
    if (r.a == 0) {
      cs.push_back({Center::generic(false), 1, cl.size(), kGenericCenter});
    } else if (r.meets_c0() > on_c0_weight(cl)) {
      cs.push_back({Center::generic(true), 1, cl.size(), kGenericCenter});
    }
  }
  if (!cs.empty()) {
    sort_candidates(cs, policy);
    for (const auto& cand : cs) {
      Step s;
      s.next = elm(r, cand.center, &s.move);
      e.next.push_back(std::move(s));
    }
    return e;
  }
  if (r.a == 0) {
    e.done = finish(ModelKind::F0Terminal, r);
  } else if (r.a >= 2 || adjoint(r).nef) {
    e.done = finish(ModelKind::FaCanonical, r);
  } else {
    Step s;
    s.next = blow_down_to_plane(r, &s.move);
    e.next.push_back(std::move(s));
  }
  return e;
}

Expansion expand(const Pair& p, const TieBreak& policy) {
  if (const auto* pl = std::get_if<PlanePair>(&p)) return expand_plane(*pl, policy);
  return expand_ruled(std::get<RuledPair>(p), policy);
}

std::string trace_prefix(const Trace& t) {
  std::string s;
  for (const auto& m : t) {
    if (!s.empty()) s += " -> ";
    s += to_string(m.op) + "(" + m.center + ")";
  }
  return s.empty() ? "<start>" : s;
}

struct Walker {
  Pair pair;
  Trace trace;
  std::int64_t last_degree = INT64_MAX;

  // Runtime check of the termination measure at each return to the plane.
  void advance(Step s) {
    if (s.move.op == MoveOp::Blowdown) {
      const auto d = std::get<PlanePair>(s.next).degree;
      if (d >= last_degree) {
        throw InvariantViolation("standard_model: degree did not drop (" + std::to_string(d) +
                                 " >= " + std::to_string(last_degree) + ") after " +
                                 trace_prefix(trace));
      }
    }
    if (const auto* pl = std::get_if<PlanePair>(&s.next)) last_degree = pl->degree;
    pair = std::move(s.next);
    trace.push_back(std::move(s.move));
  }
};

constexpr std::size_t kStepCap = 10000;

std::size_t step_cap(const Pair& p) {
  std::int64_t w = 0;
  std::visit([&](const auto& x) {
    for (const auto& q : x.cluster.points()) w += q.mult;
  }, p);
  const auto s = SurfaceState::of(p);
  return kStepCap + static_cast<std::size_t>(8 * (w + s.degree + s.alpha + s.beta));
}

StandardModel close(StandardModel m, const Walker& w) {
  m.trace = w.trace;
  try {
    check_standard_model(m);
  } catch (const InvariantViolation& e) {
    throw InvariantViolation(std::string(e.what()) + " after " + trace_prefix(w.trace));
  }
  return m;
}

}  // namespace

StandardModel standard_model(const Pair& pair, const TieBreak& policy) {
  require_valid(pair);
  Walker w;
  w.pair = pair;
  if (const auto* pl = std::get_if<PlanePair>(&pair)) w.last_degree = pl->degree;
  const std::size_t cap = step_cap(pair);
  for (std::size_t i = 0; i < cap; ++i) {
    Expansion e;
    try {
      e = expand(w.pair, policy);
    } catch (const InvalidInput& err) {
      throw InvariantViolation(std::string("standard_model: ") + err.what() + " after " +
                               trace_prefix(w.trace));
    }
    if (e.done) return close(std::move(*e.done), w);
    w.advance(std::move(e.next.front()));
  }
  throw InvariantViolation("standard_model: step cap exceeded after " + trace_prefix(w.trace));
}

ModelSet enumerate_standard_models(const Pair& pair, std::size_t branch_bound) {
  require_valid(pair);
  ModelSet out;
  std::map<std::tuple<int, bool, std::int64_t, std::int64_t, std::int64_t, std::int64_t, int>,
           StandardModel>
      found;
  std::set<std::string> seen;
  std::size_t branches = 0;
  const std::size_t cap = step_cap(pair);

  Walker root;
  root.pair = pair;
  if (const auto* pl = std::get_if<PlanePair>(&pair)) root.last_degree = pl->degree;
  std::vector<Walker> stack{root};
  while (!stack.empty()) {
    Walker w = std::move(stack.back());
    stack.pop_back();
    if (w.trace.size() > cap) throw InvariantViolation("enumerate_standard_models: step cap exceeded");
    const auto st = SurfaceState::of(w.pair);
    const std::string key = to_string(st) + "|" +
                            std::visit([](const auto& x) { return x.cluster.shape_key(); }, w.pair) +
                            "|" + std::to_string(w.last_degree);
    if (!seen.insert(key).second) continue;

    Expansion e;
    try {
      e = expand(w.pair, {});
    } catch (const InvalidInput& err) {
      throw InvariantViolation(std::string("enumerate_standard_models: ") + err.what() + " after " +
                               trace_prefix(w.trace));
    }
    if (e.done) {
      auto m = close(std::move(*e.done), w);
      const auto s = SurfaceState::of(m.pair);
      auto k = std::make_tuple(static_cast<int>(m.kind), s.plane, s.degree, s.a, s.alpha, s.beta,
                               m.kappa.value_or(-1));
      found.try_emplace(k, std::move(m));
      continue;
    }
    std::size_t take = e.next.size();
    if (take > 1) {
      if (branches >= branch_bound) {
        out.truncated = true;
        take = 1;
      } else {
        ++branches;
      }
    }
    // Push in reverse so the policy-preferred branch is explored first.
    for (std::size_t i = take; i-- > 0;) {
      Walker child = w;
      child.advance(e.next[i]);
      stack.push_back(std::move(child));
    }
  }
  for (auto& [k, m] : found) out.models.push_back(std::move(m));
  return out;
}

}  // namespace cremona
