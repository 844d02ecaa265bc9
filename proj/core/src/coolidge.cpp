#include "cremona/coolidge.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <set>
#include <sstream>

#include "cremona/error.hpp"

namespace cremona {

namespace {

std::string label_of(const std::string& id) { return "e(" + id + ")"; }

std::vector<std::vector<std::size_t>> proximate_points(const std::vector<std::vector<std::size_t>>& prox) {
  std::vector<std::vector<std::size_t>> out(prox.size());
  for (std::size_t j = 0; j < prox.size(); ++j) {
    for (auto i : prox[j]) out[i].push_back(j);
  }
  return out;
}

std::string class_text(const BlowupModel& m, const DivisorClass& c) {
  std::ostringstream os;
  os << "(" << c[0] << ";";
  for (std::size_t i = 1; i < c.size(); ++i) os << (i > 1 ? "," : "") << c[i];
  os << ")";
  (void)m;
  return os.str();
}

void require_rational(const PlanePair& pair) {
  require_valid(pair);
  const auto g = combinatorial_genus(pair);
  if (g != 0) throw InvalidInput("curve is not rational (combinatorial genus " + std::to_string(g) + ")");
}

// Free points: level-0, or proximate only to a free parent.
std::vector<bool> free_points(const BlowupModel& m) {
  std::vector<bool> out(m.ids.size(), false);
  for (std::size_t i = 0; i < m.ids.size(); ++i) {
    if (m.proper[i]) {
      out[i] = true;
    } else if (m.prox[i].size() == 1 && out[m.prox[i][0]]) {
      out[i] = true;
    }
  }
  return out;
}

std::optional<std::size_t> parent_of(const BlowupModel& m, std::size_t i) {
  if (m.proper[i] || m.prox[i].empty()) return std::nullopt;
  return m.prox[i][0];
}

}  // namespace

BlowupModel resolve_to_lattice(const PlanePair& pair) {
  require_rational(pair);
  const auto& cl = pair.cluster;
  BlowupModel m;
  m.surface = BlowupSurface::plane();
  for (const auto& p : cl.points()) m.surface = m.surface.blow_up(label_of(p.id));
  m.curve = m.surface.zero();
  m.curve[0] = pair.degree;
  for (std::size_t i = 0; i < cl.size(); ++i) {
    const auto& p = cl[i];
    m.curve[i + 1] = -p.mult;
    m.ids.push_back(p.id);
    std::vector<std::size_t> pr;
    // Parent first so parent_of() can read it off.
    if (p.parent) pr.push_back(*cl.index_of(*p.parent));
    for (const auto& q : p.proximate_to) {
      const auto k = *cl.index_of(q);
      if (std::find(pr.begin(), pr.end(), k) == pr.end()) pr.push_back(k);
    }
    m.prox.push_back(std::move(pr));
    m.proper.push_back(p.is_root());
    m.auxiliary.push_back(false);
  }
  return m;
}

std::string to_string(const VirtualClass& v) {
  std::ostringstream os;
  os << "(" << v.delta << ";";
  for (std::size_t i = 0; i < v.mu.size(); ++i) os << (i ? "," : "") << v.mu[i];
  os << ")";
  return os.str();
}

VirtualClass unloading(VirtualClass v, const std::vector<std::vector<std::size_t>>& prox) {
  if (prox.size() != v.mu.size()) throw InvalidInput("unloading: proximity size mismatch");
  const auto near = proximate_points(prox);
  std::size_t guard = 0;
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < v.mu.size(); ++i) {
      if (near[i].empty()) continue;
      std::int64_t s = 0;
      for (auto j : near[i]) s += v.mu[j];
      if (v.mu[i] >= s) continue;
      v.mu[i] += 1;
      for (auto j : near[i]) v.mu[j] -= 1;
      changed = true;
      if (++guard > 1000000) throw InvariantViolation("unloading: no fixed point");
      break;
    }
  }
  return v;
}

std::string to_string(Emptiness e) {
  switch (e) {
    case Emptiness::Empty: return "Empty";
    case Emptiness::NonEmpty: return "NonEmpty";
    case Emptiness::Unknown: return "Unknown";
  }
  return "?";
}

EmptinessResult km_empty_test(const PlanePair& pair) {
  require_rational(pair);
  const auto model = resolve_to_lattice(pair);
  const auto& ids = model.ids;
  const auto near = proximate_points(model.prox);
  EmptinessResult out;
  VirtualClass v;
  v.delta = pair.degree - 6;
  for (const auto& p : pair.cluster.points()) v.mu.push_back(p.mult - 2);
  out.steps.push_back("2K+C = " + to_string(v));

  for (std::size_t round = 0;; ++round) {
    if (round > 10000) throw InvariantViolation("km_empty_test: reductions do not terminate");
    for (bool changed = true; changed;) {
      changed = false;
      const auto u = unloading(v, model.prox);
      if (u != v) {
        out.steps.push_back("unload fixed exceptional components -> " + to_string(u));
        v = u;
        changed = true;
      }
      for (std::size_t j = 0; j < v.mu.size(); ++j) {
        if (near[j].empty() && v.mu[j] < 0) {
          out.steps.push_back("remove " + std::to_string(-v.mu[j]) + " E(" + ids[j] + ")");
          v.mu[j] = 0;
          changed = true;
        }
      }
    }
    if (v.delta < 0) {
      out.verdict = Emptiness::Empty;
      out.reduced = v;
      out.steps.push_back("degree " + std::to_string(v.delta) + " < 0");
      return out;
    }
    for (std::size_t i = 0; i < v.mu.size(); ++i) {
      if (model.proper[i] && v.mu[i] > v.delta) {
        out.verdict = Emptiness::Empty;
        out.reduced = v;
        out.steps.push_back("multiplicity " + std::to_string(v.mu[i]) + " at " + ids[i] + " exceeds degree " +
                            std::to_string(v.delta));
        return out;
      }
    }
    // Quadratic reduction at the heaviest triple of childless level-0 points.
    std::optional<std::array<std::size_t, 3>> best;
    std::int64_t best_sum = v.delta;
    std::vector<std::size_t> pts;
    for (std::size_t i = 0; i < v.mu.size(); ++i) {
      if (model.proper[i] && near[i].empty()) pts.push_back(i);
    }
    for (std::size_t x = 0; x < pts.size(); ++x) {
      for (std::size_t y = x + 1; y < pts.size(); ++y) {
        for (std::size_t z = y + 1; z < pts.size(); ++z) {
          const auto s = v.mu[pts[x]] + v.mu[pts[y]] + v.mu[pts[z]];
          if (s > best_sum) {
            best_sum = s;
            best = std::array<std::size_t, 3>{pts[x], pts[y], pts[z]};
          }
        }
      }
    }
    if (!best) break;
    const auto [i, j, k] = *best;
    const auto d = v.delta;
    const auto mi = v.mu[i], mj = v.mu[j], mk = v.mu[k];
    v.delta = 2 * d - mi - mj - mk;
    v.mu[i] = d - mj - mk;
    v.mu[j] = d - mi - mk;
    v.mu[k] = d - mi - mj;
    out.steps.push_back("quadratic map at " + ids[i] + "," + ids[j] + "," + ids[k] + " -> " + to_string(v));
    const std::string note = "general position of " + ids[i] + "," + ids[j] + "," + ids[k];
    if (std::find(out.assumptions.begin(), out.assumptions.end(), note) == out.assumptions.end()) {
      out.assumptions.push_back(note);
    }
  }
  out.reduced = v;
  std::int64_t conditions = 0;
  for (auto m : v.mu) {
    if (m > 0) conditions += m * (m + 1) / 2;
  }
  const std::int64_t room = (v.delta + 1) * (v.delta + 2) / 2 - conditions;
  if (room >= 1) {
    out.verdict = Emptiness::NonEmpty;
    out.steps.push_back("dimension count " + std::to_string(room) + " >= 1 for " + to_string(v));
  } else {
    out.verdict = Emptiness::Unknown;
    out.steps.push_back("dimension count " + std::to_string(room) + " < 1 for " + to_string(v));
  }
  return out;
}

std::string to_string(CandidateKind k) {
  switch (k) {
    case CandidateKind::ClusterEnd: return "ClusterEnd";
    case CandidateKind::Line: return "Line";
    case CandidateKind::Conic: return "Conic";
    case CandidateKind::SearchFound: return "SearchFound";
  }
  return "?";
}

std::vector<CandidateClass> find_contractible(const BlowupModel& model, std::int64_t max_degree) {
  const auto& s = model.surface;
  const auto K = s.canonical();
  const std::size_t n = model.ids.size();
  const auto near = proximate_points(model.prox);
  const auto freep = free_points(model);
  std::vector<CandidateClass> raw;

  auto e = [&](std::size_t i) { return s.basis(label_of(model.ids[i])); };
  for (std::size_t i = 0; i < n; ++i) {
    if (model.auxiliary[i]) continue;
    DivisorClass c = e(i);
    for (auto j : near[i]) c -= e(j);
    raw.push_back({c, CandidateKind::ClusterEnd, true, 0, "E~(" + model.ids[i] + ")"});
  }
  const auto e0 = s.basis("e0");
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool two_points = model.proper[i] && model.proper[j];
      const bool chain = model.proper[i] && freep[j] && parent_of(model, j) == i;
      if (!two_points && !chain) continue;
      raw.push_back({e0 - e(i) - e(j), CandidateKind::Line, true, 0,
                     "L(" + model.ids[i] + "," + model.ids[j] + ")"});
    }
  }
  std::vector<std::size_t> fr;
  for (std::size_t i = 0; i < n; ++i) {
    if (freep[i]) fr.push_back(i);
  }
  std::vector<std::size_t> pick;
  std::function<void(std::size_t)> conics = [&](std::size_t from) {
    if (pick.size() == 5) {
      for (auto i : pick) {
        auto p = parent_of(model, i);
        if (p && std::find(pick.begin(), pick.end(), *p) == pick.end()) return;
      }
      DivisorClass c = 2 * e0;
      std::string lab = "Q(";
      for (std::size_t t = 0; t < 5; ++t) {
        c -= e(pick[t]);
        lab += (t ? "," : "") + model.ids[pick[t]];
      }
      raw.push_back({c, CandidateKind::Conic, true, 0, lab + ")"});
      return;
    }
    for (std::size_t t = from; t < fr.size(); ++t) {
      pick.push_back(fr[t]);
      conics(t + 1);
      pick.pop_back();
    }
  };
  conics(0);

  // Diophantine (-1)-classes: delta^2 - sum mu^2 = -1, 3 delta - sum mu = 1.
  // C.E is linear in mu; with C.e_i >= 0 it bounds the search from both sides.
  std::set<std::vector<std::int64_t>> known;
  for (const auto& c : raw) known.insert(c.cls.coeffs());
  const std::int64_t c_e0 = s.intersect(model.curve, e0);
  std::vector<std::int64_t> c_e(n), free_left(n + 1, 0), c_max(n + 1, 0);
  bool bounded = true;
  for (std::size_t i = 0; i < n; ++i) {
    c_e[i] = s.intersect(model.curve, e(i));
    if (c_e[i] < 0) bounded = false;
  }
  for (std::size_t i = n; i-- > 0;) {
    free_left[i] = free_left[i + 1] + (model.auxiliary[i] ? 0 : 1);
    c_max[i] = std::max(c_max[i + 1], model.auxiliary[i] ? 0 : c_e[i]);
  }
  for (std::int64_t delta = 1; delta <= max_degree; ++delta) {
    std::vector<std::int64_t> mu(n, 0);
    std::function<void(std::size_t, std::int64_t, std::int64_t, std::int64_t)> rec =
        [&](std::size_t i, std::int64_t sum, std::int64_t sq, std::int64_t dot) {
      const std::int64_t need = 3 * delta - 1 - sum;
      const std::int64_t need_sq = delta * delta + 1 - sq;
      if (need < 0 || need_sq < need || need_sq > delta * need) return;
      if (need * need > free_left[i] * need_sq) return;
      if (bounded) {
        const std::int64_t ce = delta * c_e0 - dot;
        if (ce < 0 || ce - c_max[i] * need > 1) return;
      }
      if (i == n) {
        if (need != 0 || need_sq != 0) return;
        for (std::size_t a = 0; a < n; ++a) {
          std::int64_t t = 0;
          for (auto b : near[a]) t += mu[b];
          if (mu[a] < t) return;
        }
        DivisorClass c = delta * e0;
        for (std::size_t a = 0; a < n; ++a) c -= mu[a] * e(a);
        if (known.insert(c.coeffs()).second) {
          raw.push_back({c, CandidateKind::SearchFound, false, 0, "S" + class_text(model, c)});
        }
        return;
      }
      if (model.auxiliary[i]) {
        mu[i] = 0;
        rec(i + 1, sum, sq, dot);
        return;
      }
      for (std::int64_t m = std::min(delta, need); m >= 0; --m) {
        if (m * m > need_sq) continue;
        mu[i] = m;
        rec(i + 1, sum + m, sq + m * m, dot + m * c_e[i]);
      }
      mu[i] = 0;
    };
    rec(0, 0, 0, 0);
  }

  std::vector<CandidateClass> out;
  for (auto& c : raw) {
    if (s.project(c.cls).is_zero()) continue;
    if (s.intersect(c.cls, c.cls) != -1 || s.intersect(K, c.cls) != -1) continue;
    c.curve_dot = s.intersect(model.curve, c.cls);
    if (c.curve_dot < 0 || c.curve_dot > 1) continue;
    out.push_back(std::move(c));
  }
  std::stable_sort(out.begin(), out.end(), [](const CandidateClass& a, const CandidateClass& b) {
    return std::make_tuple(static_cast<int>(a.kind), a.cls[0], a.label) <
           std::make_tuple(static_cast<int>(b.kind), b.cls[0], b.label);
  });
  return out;
}

std::string to_string(EndState e) {
  switch (e) {
    case EndState::PlaneConic: return "PlaneConic";
    case EndState::Fibre: return "Fibre";
    case EndState::Section: return "Section";
    case EndState::ConicBundleF1: return "ConicBundleF1";
    case EndState::Stalled: return "Stalled";
  }
  return "?";
}

namespace {

std::optional<std::pair<EndState, std::string>> end_state(const BlowupModel& m) {
  const auto& s = m.surface;
  const auto& C = m.curve;
  const auto K = s.canonical();
  if (s.effective_rank() == 1) {
    const auto kc = s.intersect(K, C);
    if (kc % 3 != 0) throw InvariantViolation("half_mmp: K.C not divisible by 3 on a rank-1 surface");
    const auto d = -kc / 3;
    if (d <= 2) return std::make_pair(EndState::PlaneConic, "plane curve of degree " + std::to_string(d));
    return std::nullopt;
  }
  if (s.effective_rank() != 2) return std::nullopt;
  const auto e0 = s.basis("e0");
  std::vector<std::pair<DivisorClass, std::string>> pencils;
  const auto freep = free_points(m);
  for (std::size_t i = 0; i < m.ids.size(); ++i) {
    if (m.proper[i]) pencils.emplace_back(e0 - s.basis(label_of(m.ids[i])), "lines through " + m.ids[i]);
  }
  std::vector<std::size_t> fr;
  for (std::size_t i = 0; i < m.ids.size(); ++i) {
    if (freep[i]) fr.push_back(i);
  }
  for (std::size_t a = 0; a < fr.size(); ++a)
    for (std::size_t b = a + 1; b < fr.size(); ++b)
      for (std::size_t c = b + 1; c < fr.size(); ++c)
        for (std::size_t d = c + 1; d < fr.size(); ++d) {
          std::array<std::size_t, 4> q{fr[a], fr[b], fr[c], fr[d]};
          bool closed = true;
          for (auto i : q) {
            auto p = parent_of(m, i);
            if (p && std::find(q.begin(), q.end(), *p) == q.end()) closed = false;
          }
          if (!closed) continue;
          DivisorClass f = 2 * e0;
          for (auto i : q) f -= s.basis(label_of(m.ids[i]));
          pencils.emplace_back(f, "conics through " + m.ids[q[0]] + "," + m.ids[q[1]] + "," + m.ids[q[2]] +
                                      "," + m.ids[q[3]]);
        }
  const auto c2 = s.intersect(C, C);
  for (const auto& [f, what] : pencils) {
    if (s.intersect(f, f) != 0 || s.intersect(K, f) != -2) continue;
    const auto cf = s.intersect(C, f);
    if (cf == 0) return std::make_pair(EndState::Fibre, "fibre of the ruling by " + what);
    if (cf == 1) return std::make_pair(EndState::Section, "section of the ruling by " + what);
    if (cf == 2 && c2 == 4) return std::make_pair(EndState::ConicBundleF1, "2(C0+f) for the ruling by " + what);
  }
  return std::nullopt;
}

BlowupModel aux_blowup(const BlowupModel& m, const std::string& id) {
  BlowupModel out = m;
  out.surface = m.surface.blow_up(label_of(id));
  out.curve = out.surface.extend(m.curve);
  out.curve[out.surface.rank() - 1] = -1;
  out.ids.push_back(id);
  out.prox.emplace_back();
  out.proper.push_back(true);
  out.auxiliary.push_back(true);
  return out;
}

}  // namespace

MmpResult half_mmp(const BlowupModel& model, std::int64_t max_degree, std::size_t aux_cap) {
  MmpResult out;
  BlowupModel m = model;
  std::size_t aux = 0;
  const std::size_t guard = model.surface.rank() + 2 * aux_cap + 4;
  for (std::size_t it = 0; it <= guard; ++it) {
    if (auto end = end_state(m)) {
      out.end = end->first;
      out.detail = end->second;
      out.final_model = std::move(m);
      return out;
    }
    const auto cands = find_contractible(m, max_degree);
    const auto it_c = std::find_if(cands.begin(), cands.end(), [](const auto& c) { return c.admissible; });
    if (it_c != cands.end()) {
      const auto before = m.surface.effective_rank();
      m.surface = m.surface.contract(it_c->cls);
      if (m.surface.effective_rank() >= before) throw InvariantViolation("half_mmp: rank did not drop");
      out.trace.push_back({"contract", it_c->label, it_c->cls, it_c->curve_dot});
      continue;
    }
    if (aux < aux_cap) {
      ++aux;
      const std::string id = "@x" + std::to_string(aux);
      m = aux_blowup(m, id);
      out.trace.push_back({"aux_blowup", id, m.surface.basis(label_of(id)), 1});
      continue;
    }
    break;
  }
  out.end = EndState::Stalled;
  out.detail = "no admissible (-1)-class with C.E <= 1 at effective rank " +
               std::to_string(m.surface.effective_rank());
  out.final_model = std::move(m);
  return out;
}

void verify_mmp_trace(const BlowupModel& start, const std::vector<MmpStep>& trace) {
  BlowupModel m = start;
  for (std::size_t i = 0; i < trace.size(); ++i) {
    const auto& st = trace[i];
    const std::string at = "mmp step " + std::to_string(i) + " (" + st.label + "): ";
    if (st.op == "aux_blowup") {
      m = aux_blowup(m, st.label);
      continue;
    }
    if (st.op != "contract") throw InvariantViolation(at + "unknown op " + st.op);
    const auto& s = m.surface;
    const auto e = s.extend(st.cls);
    if (s.intersect(e, e) != -1) throw InvariantViolation(at + "E^2 != -1");
    if (s.intersect(s.canonical(), e) != -1) throw InvariantViolation(at + "K.E != -1");
    const auto ce = s.intersect(m.curve, e);
    if (ce > 1 || ce != st.curve_dot) throw InvariantViolation(at + "C.E = " + std::to_string(ce));
    const auto before = s.effective_rank();
    m.surface = s.contract(e);
    if (m.surface.effective_rank() + 1 != before) throw InvariantViolation(at + "rank did not drop");
    m.surface.check_signature();
  }
}

std::string to_string(LineStatus s) {
  switch (s) {
    case LineStatus::EquivalentToLine: return "EquivalentToLine";
    case LineStatus::NotEquivalent: return "NotEquivalent";
    case LineStatus::Undetermined: return "Undetermined";
  }
  return "?";
}

LineVerdict line_equivalent(const PlanePair& pair, std::int64_t max_degree) {
  LineVerdict v;
  v.emptiness = km_empty_test(pair);
  v.mmp = half_mmp(resolve_to_lattice(pair), max_degree);
  const bool mmp_line = v.mmp.end != EndState::Stalled;
  if (mmp_line && v.emptiness.verdict == Emptiness::NonEmpty) {
    throw InvariantViolation("line_equivalent: MMP reached " + to_string(v.mmp.end) +
                             " but |2K+C| is non-empty");
  }
  if (v.emptiness.verdict == Emptiness::Empty || mmp_line) {
    v.status = LineStatus::EquivalentToLine;
  } else if (v.emptiness.verdict == Emptiness::NonEmpty) {
    v.status = LineStatus::NotEquivalent;
  } else {
    v.status = LineStatus::Undetermined;
  }
  return v;
}

}  // namespace cremona
