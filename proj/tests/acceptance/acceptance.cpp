// One line per criterion; exit status is the number of failures.

#include <chrono>
#include <cstdio>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <string>

#include "cremona/coolidge.hpp"
#include "cremona/error.hpp"
#include "cremona/lattice.hpp"
#include "cremona/minimality.hpp"
#include "cremona/threefold.hpp"
#include "../support/generators.hpp"

using namespace cremona;
using gen::point;

namespace {

struct Outcome {
  bool ok = true;
  std::ostringstream why;
  void expect(bool cond, const std::string& what) {
    if (!cond && ok) why << what;
    ok = ok && cond;
  }
};

int failures = 0;

void criterion(int n, const char* title, double budget_s, const std::function<void(Outcome&)>& body) {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.expect(false, std::string("exception: ") + e.what());
  }
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (budget_s > 0 && s > budget_s) o.expect(false, "took " + std::to_string(s) + " s");
  if (!o.ok) ++failures;
  std::printf("%s %2d %s (%.3f s)%s%s\n", o.ok ? "PASS" : "FAIL", n, title, s, o.ok ? "" : ": ",
              o.why.str().c_str());
}

RuledPair node_on_f3(bool on_c0) { return {3, 3, 11, WeightedCluster({point("n", 2, {}, on_c0)})}; }

bool same_state(const Pair& p, std::int64_t a, std::int64_t alpha, std::int64_t beta) {
  const auto* r = std::get_if<RuledPair>(&p);
  return r && r->a == a && r->alpha == alpha && r->beta == beta;
}

Rational lattice_lambda(std::int64_t a, std::int64_t alpha, std::int64_t beta) {
  const auto s = BlowupSurface::hirzebruch(a);
  const DivisorClass c0({1, 0}), f({0, 1}), curve({alpha, beta});
  // alpha*K + 2C against f and C0.
  const auto adj = alpha * s.canonical() + 2 * curve;
  if (intersect(s, adj, f) != 0) throw InvariantViolation("adjoint is not a multiple of f");
  return make_rational(intersect(s, adj, c0), alpha);
}

// Every planar system C0 + gamma f, gamma in [b-1, b+3], through points of
// the resolved curve: each cluster point off the C0 roots at most once, then
// general points of multiplicity 1. Entries past the first b - a are capped
// at alpha/2. Returns the least degree.
std::int64_t exhaustive_planar(const ResolvedRuledPair& r, std::int64_t a) {
  const auto b = r.base.a, alpha = r.base.alpha;
  std::map<std::int64_t, int> pool;
  for (const auto& p : r.base.cluster.points()) {
    if (!(p.is_root() && p.lies_on_c0()) && p.mult >= 2) ++pool[p.mult];
  }
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  std::vector<std::int64_t> mus;
  std::function<void(std::int64_t, std::int64_t, std::int64_t)> walk = [&](std::int64_t gamma, std::int64_t left,
                                                                         std::int64_t prev) {
    if (left == 0) {
      best = std::min(best, planar_system_degree(r, gamma, mus));
      return;
    }
    const auto i = static_cast<std::int64_t>(mus.size());
    const auto cap = i >= b - a ? alpha / 2 : alpha;
    for (auto& [v, n] : pool) {
      if (n == 0 || v > prev || v > cap) continue;
      --n;
      mus.push_back(v);
      walk(gamma, left - 1, v);
      mus.pop_back();
      ++n;
    }
    for (std::int64_t v : {1, 0}) {
      if (v > prev || v > cap) continue;
      mus.push_back(v);
      walk(gamma, left - 1, v);
      mus.pop_back();
    }
  };
  for (std::int64_t gamma = std::max<std::int64_t>(b - 1, 0); gamma <= b + 3; ++gamma) {
    const auto arity = 2 * gamma + 1 - b;
    if (arity >= 0) walk(gamma, arity, alpha);
  }
  return best;
}

}  // namespace

int main() {
  criterion(1, "ruled node on/off C0 gives plane degrees 9 and 8", 2.0, [](Outcome& o) {
    for (const bool on : {true, false}) {
      const auto t0 = std::chrono::steady_clock::now();
      const auto pm = minimal_plane_model(resolve_along_c0(node_on_f3(on)));
      const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      const std::int64_t d = on ? 9 : 8, m = on ? 6 : 5;
      o.expect(pm.degree == d && pm.pair.degree == d, "degree " + std::to_string(pm.degree));
      o.expect(pm.pair.cluster.max_mult() == m, "top multiplicity " + std::to_string(pm.pair.cluster.max_mult()));
      o.expect(s < 1.0, "slow");
    }
  });

  criterion(2, "sextic with node and tacnode has exactly two standard models", 1.0, [](Outcome& o) {
    const PlanePair p{6, WeightedCluster({point("n", 2), point("t1", 2), point("t2", 2, "t1")})};
    const auto set = enumerate_standard_models(p);
    o.expect(!set.truncated && set.models.size() == 2, std::to_string(set.models.size()) + " models");
    if (set.models.size() != 2) return;
    o.expect(same_state(set.models[0].pair, 1, 4, 6), "first model");
    o.expect(same_state(set.models[1].pair, 2, 4, 8), "second model");
    const auto half = make_rational(1, 2);
    for (const auto& m : set.models) {
      const auto& r = std::get<RuledPair>(m.pair);
      o.expect(m.kind == ModelKind::FaCanonical && m.kappa == 0, "kind/kappa");
      o.expect(classify_singularities(r, half).kind == SingularityClass::Canonical, "not canonical");
      o.expect(classify_singularities(r, half, Scope::AlongC0).kind == SingularityClass::Terminal,
               "not terminal along C0");
      o.expect(replay(p, m.trace) == m.pair, "trace replay");
    }
  });

  criterion(3, "degree 7 quadruple point under both encodings", 1.0, [](Outcome& o) {
    const PlanePair two{7, WeightedCluster({point("p", 4), point("q1", 2, "p"), point("q2", 2, "p")})};
    const auto v = is_minimal_degree(two);
    o.expect(v.status == MinimalityStatus::Minimal && v.minimal_degree == 7, "two-children verdict");
    o.expect(v.model && same_state(v.model->pair, 3, 3, 9) && v.model->kappa == 1, "two-children model");
    const PlanePair chain{7, WeightedCluster({point("p", 4), point("q1", 2, "p"), point("q2", 2, "q1")})};
    const auto w = is_minimal_degree(chain);
    o.expect(w.status == MinimalityStatus::NotMinimal && w.minimal_degree == 6, "chain verdict");
    o.expect(w.witness_trace.has_value(), "chain witness");
    if (w.witness_trace) {
      const Pair end = replay(chain, *w.witness_trace);
      const auto* pl = std::get_if<PlanePair>(&end);
      o.expect(pl && pl->degree == 6 && combinatorial_genus(*pl) == combinatorial_genus(chain), "witness replay");
    }
  });

  criterion(4, "300 random Jung pairs are minimal", 10.0, [](Outcome& o) {
    gen::Rng rng(4004);
    for (int i = 0; i < 300 && o.ok; ++i) {
      const auto p = gen::jung_pair(rng, 12, 8);
      o.expect(jung_test(p).holds, "generator produced a non-Jung pair");
      const auto v = is_minimal_degree(p);
      o.expect(v.status == MinimalityStatus::Minimal, "sample " + std::to_string(i) + " degree " + std::to_string(p.degree));
    }
  });

  criterion(5, "elm and adjoint agree with the lattice", 5.0, [](Outcome& o) {
    gen::Rng rng(5005);
    for (int i = 0; i < 1000 && o.ok; ++i) {
      const auto r = gen::ruled_pair(rng, 5, 7, 5);
      const auto c = rng.pick(gen::elm_centers(rng, r));
      bool on = c.on_c0;
      std::int64_t m = c.mult;
      if (c.id) {
        on = r.cluster.at(*c.id).lies_on_c0();
        m = r.cluster.at(*c.id).mult;
      }
      Move mv;
      const auto next = elm(r, c, &mv);
      const auto want = elm_oracle(r.a, r.alpha, r.beta, {on, m});
      o.expect(ElmOutcome{next.a, next.alpha, next.beta, mv.new_point_mult} == want,
               "elm mismatch at sample " + std::to_string(i));
    }
    for (int i = 0; i < 500 && o.ok; ++i) {
      const auto a = rng.uniform(0, 6), alpha = rng.uniform(1, 8);
      const auto beta = a * alpha + rng.uniform(0, 3 * alpha);
      const RuledPair r{a, alpha, beta, {}};
      const auto lam = lattice_lambda(a, alpha, beta);
      const auto adj = adjoint(r);
      o.expect(adj.lambda && *adj.lambda == lam, "lambda mismatch");
      o.expect(lam == make_rational(2 * beta, alpha) - (a + 2), "identity");
      o.expect(adj.nef == (lam >= 0), "nef mismatch");
      if (adj.nef) o.expect(kodaira_dimension(r) == (lam == 0 ? 0 : 1), "kappa mismatch");
    }
  });

  criterion(6, "1000 random move sequences conserve genus", 0, [](Outcome& o) {
    gen::Rng rng(6006);
    for (int i = 0; i < 1000 && o.ok; ++i) {
      Pair state = rng.coin() ? Pair(gen::plane_pair(rng, 9, 6)) : Pair(gen::ruled_pair(rng, 4, 6, 5));
      const auto g0 = combinatorial_genus(state);
      const auto len = rng.uniform(1, 10);
      for (std::int64_t k = 0; k < len; ++k) {
        try {
          if (const auto* p = std::get_if<PlanePair>(&state)) {
            const auto mm = p->cluster.max_mult();
            std::vector<std::string> choices;
            for (auto ri : p->cluster.roots()) {
              if (p->cluster[ri].mult == mm) choices.push_back(p->cluster[ri].id);
            }
            if (mm <= 1) choices.push_back(kGenericCenter);
            state = blow_up_max_point(*p, rng.pick(choices));
          } else {
            const auto& r = std::get<RuledPair>(state);
            if (r.a == 1 && rng.coin(0.3)) {
              state = blow_down_to_plane(r);
            } else {
              state = elm(r, rng.pick(gen::elm_centers(rng, r)));
            }
          }
        } catch (const InvalidInput&) {
          break;
        }
        o.expect(combinatorial_genus(state) == g0, "sequence " + std::to_string(i) + " step " + std::to_string(k));
      }
    }
  });

  criterion(7, "Coolidge suite", 10.0, [](Outcome& o) {
    gen::Rng rng(7007);
    for (int i = 0; i < 300 && o.ok; ++i) {
      const auto p = gen::rational_plane(rng, 1, 5);
      const auto v = line_equivalent(p);
      o.expect(v.status == LineStatus::EquivalentToLine, "degree " + std::to_string(p.degree) + " sample " + std::to_string(i));
    }
    std::vector<ClusterPoint> nodes;
    for (int i = 0; i < 10; ++i) nodes.push_back(point("n" + std::to_string(i), 2));
    const auto ten = line_equivalent(PlanePair{6, WeightedCluster(nodes)});
    o.expect(ten.status == LineStatus::NotEquivalent, "ten-node sextic");
    o.expect(ten.emptiness.reduced.delta == 0 &&
                 std::all_of(ten.emptiness.reduced.mu.begin(), ten.emptiness.reduced.mu.end(), [](auto m) { return m == 0; }),
             "2K+C is not zero: " + to_string(ten.emptiness.reduced));
    for (int i = 0; i < 500 && o.ok; ++i) {
      const auto p = gen::rational_plane(rng, 1, 7);
      line_equivalent(p);
    }
  });

  criterion(8, "Noether-Fano and complete intersection certificates", 0, [](Outcome& o) {
    const auto yes = ci_projection_certificate({2, 4, 2});
    o.expect(yes.holds && yes.data.at("d_high") == "8" && yes.data.at("d_low") == "7", "(2,4,2)");
    o.expect(!ci_projection_certificate({2, 3, 2}).holds, "(2,3,2)");
    gen::Rng rng(8008);
    int seen = 0;
    for (int i = 0; i < 2000 && o.ok; ++i) {
      const auto p = gen::plane_pair(rng, 12, 6);
      if (p.degree < 3 || 3 * std::max<std::int64_t>(1, p.cluster.max_mult()) >= p.degree) continue;
      ++seen;
      o.expect(noether_fano_certificate(p).holds, "m1 < d/3 not certified at degree " + std::to_string(p.degree));
    }
    o.expect(seen >= 100, "too few subcritical samples");
  });

  criterion(9, "scroll reduction from degree 5", 0, [](Outcome& o) {
    const auto t = scroll_reduction(5);
    const std::vector<ScrollState> want = {{5, 4}, {4, 3}, {3, 2}, {2, 1}};
    o.expect(t.size() == want.size(), "length");
    for (std::size_t i = 0; i < t.size() && i < want.size(); ++i) {
      const auto d = t[i].state.degree;
      o.expect(t[i].state == want[i], "state " + std::to_string(i));
      o.expect(t[i].next_degree == 3 * d - 2 * (d - 1) - 3 && t[i].next_degree == d - 1, "degree formula");
      o.expect(t[i].next_line_mult == 2 * d - (d - 1) - 3 && t[i].next_line_mult == d - 2, "mult formula");
    }
  });

  criterion(10, "no planar system beats the minimal plane model", 60.0, [](Outcome& o) {
    gen::Rng rng(1010);
    int seen = 0;
    std::set<std::string> keys;
    for (int tries = 0; seen < 100 && tries < 20000 && o.ok; ++tries) {
      const auto p = gen::plane_pair(rng, 12, 6);
      if (p.degree < 3) continue;
      for (const auto& m : enumerate_standard_models(p).models) {
        if (m.kappa != 1 || is_plane(m.pair)) continue;
        const auto& r = std::get<RuledPair>(m.pair);
        const auto key = to_string(SurfaceState::of(r)) + r.cluster.shape_key();
        if (!keys.insert(key).second) continue;
        ++seen;
        const auto res = resolve_along_c0(r);
        const auto pm = minimal_plane_model(res);
        const auto best = exhaustive_planar(res, r.a);
        o.expect(best >= pm.degree, to_string(SurfaceState::of(r)) + ": planar " + std::to_string(best) +
                                        " < " + std::to_string(pm.degree));
      }
    }
    o.expect(seen >= 100, "only " + std::to_string(seen) + " kappa=1 models");
  });

  return failures;
}
