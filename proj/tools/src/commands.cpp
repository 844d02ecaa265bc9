#include "cremona_cli/commands.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

#include "cremona/coolidge.hpp"
#include "cremona/error.hpp"
#include "cremona/minimality.hpp"
#include "cremona/threefold.hpp"

#ifndef CREMONA_VERSION
#define CREMONA_VERSION "0.0.0"
#endif

namespace cremona::cli {

namespace {

const std::vector<std::string> kDocumentCommands = {
    "validate", "genus", "discrepancies", "classify", "standard-model",
    "minimal-degree", "line-equivalence", "nf-certificate"};

const PlanePair& need_plane(const CurveDocument& doc, const std::string& cmd) {
  const auto* p = std::get_if<PlanePair>(&doc.pair);
  if (!p) throw InvalidInput(cmd + " needs a plane curve document");
  return *p;
}

Rational coefficient(const RunConfig& cfg) {
  if (cfg.coeff.empty()) throw InvalidInput("--coeff p/q is required");
  return parse_rational(cfg.coeff);
}

json validation_json(const ValidationReport& r) {
  json v = json::array();
  for (const auto& x : r.violations) v.push_back({{"id", x.id}, {"message", x.message}});
  return {{"valid", r.ok()}, {"violations", v}};
}

json adjoint_json(const RuledPair& r) {
  const auto adj = adjoint(r);
  json j = {{"coefficient", rational_json(adj.c)},
            {"dot_f", rational_json(adj.dot_f)},
            {"dot_c0", rational_json(adj.dot_c0)},
            {"nef", adj.nef}};
  if (adj.lambda) j["lambda"] = rational_json(*adj.lambda);
  return j;
}

// Replays before anything is emitted; a trace that does not reproduce its
// end state is an engine bug, not a user error.
void check_replay(const Pair& start, const Trace& trace, const Pair& expect) {
  const Pair got = replay(start, trace);
  if (!(got == expect)) {
    throw InvariantViolation("replay of the emitted trace ends at " + to_string(SurfaceState::of(got)) +
                             ", expected " + to_string(SurfaceState::of(expect)));
  }
}

json model_json(const Pair& start, const StandardModel& m) {
  check_replay(start, m.trace, m.pair);
  json j = {{"kind", to_string(m.kind)}, {"pair", pair_to_json(m.pair)}, {"trace", trace_to_json(m.trace)}};
  if (m.kappa) j["kappa"] = *m.kappa;
  if (const auto* r = std::get_if<RuledPair>(&m.pair)) j["adjoint"] = adjoint_json(*r);
  return j;
}

json discrepancy_json(const DiscrepancyReport& r) {
  json entries = json::object();
  for (const auto& [id, v] : r.entries) entries["a(" + id + ")"] = rational_json(v);
  return {{"coefficient", rational_json(r.coefficient)},
          {"entries", entries},
          {"minimum", rational_json(r.minimum)},
          {"witness", r.witness},
          {"vacuous", r.vacuous}};
}

json ruled_minimal_degree(const RuledPair& r) {
  const auto res = resolve_along_c0(r);
  const auto pm = minimal_plane_model(res);
  Trace t = res.trace;
  t.insert(t.end(), pm.trace.begin(), pm.trace.end());
  check_replay(r, t, pm.pair);
  json centers = json::array();
  if (res.base.a >= 1) {
    const auto seq = optimal_center_sequence(res);
    for (std::size_t i = 0; i < seq.centers.size(); ++i) {
      centers.push_back({{"center", seq.centers[i].label()}, {"mult", seq.mults[i]}});
    }
  }
  return {{"resolved", state_to_json(SurfaceState::of(res.base))},
          {"consumed", res.consumed},
          {"centers", centers},
          {"minimal_degree", pm.degree},
          {"top_multiplicity", pm.pair.cluster.max_mult()},
          {"plane_model", pair_to_json(pm.pair)},
          {"trace", trace_to_json(t)},
          {"assumptions", pm.assumptions}};
}

json verdict_json(const PlanePair& p, const MinimalityVerdict& v) {
  json j = {{"status", to_string(v.status)},
            {"reason", to_string(v.reason)},
            {"input_degree", p.degree},
            {"minimal_degree", v.minimal_degree},
            {"truncated", v.truncated}};
  if (v.witness_trace) {
    const Pair end = replay(p, *v.witness_trace);
    const auto* pl = std::get_if<PlanePair>(&end);
    if (!pl || pl->degree != v.minimal_degree) throw InvariantViolation("witness replay does not reach the minimal degree");
    j["witness_trace"] = trace_to_json(*v.witness_trace);
  }
  if (v.model) {
    json m = {{"kind", to_string(v.model->kind)}, {"state", state_to_json(SurfaceState::of(v.model->pair))}};
    if (v.model->kappa) m["kappa"] = *v.model->kappa;
    j["model"] = m;
  }
  if (v.certificate) j["certificate"] = certificate_json(*v.certificate);
  return j;
}

json line_json(const PlanePair& p, const LineVerdict& v) {
  verify_mmp_trace(resolve_to_lattice(p), v.mmp.trace);
  json steps = json::array();
  for (const auto& s : v.mmp.trace) {
    steps.push_back({{"op", s.op}, {"label", s.label}, {"class", s.cls.coeffs()}, {"curve_dot", s.curve_dot}});
  }
  return {{"status", to_string(v.status)},
          {"emptiness",
           {{"verdict", to_string(v.emptiness.verdict)},
            {"reduced", to_string(v.emptiness.reduced)},
            {"steps", v.emptiness.steps},
            {"assumptions", v.emptiness.assumptions}}},
          {"mmp", {{"end", to_string(v.mmp.end)}, {"detail", v.mmp.detail}, {"trace", steps}}}};
}

}  // namespace

bool is_document_command(const std::string& cmd) {
  return std::find(kDocumentCommands.begin(), kDocumentCommands.end(), cmd) != kDocumentCommands.end();
}

json certificate_json(const Certificate& c) {
  json data = json::object();
  for (const auto& [k, v] : c.data) data[k] = v;
  return {{"kind", to_string(c.kind)}, {"holds", c.holds}, {"data", data}};
}

json run_document_command(const std::string& cmd, const CurveDocument& doc, const RunConfig& cfg_in) {
  RunConfig cfg = cfg_in;
  if (doc.options.max_class_degree) cfg.max_class_degree = *doc.options.max_class_degree;
  if (doc.options.branch_bound) cfg.branch_bound = *doc.options.branch_bound;
  if (doc.options.tie_break) cfg.prefer = *doc.options.tie_break;
  if (cfg.branch_bound < 0) throw InvalidInput("branch bound must be >= 0");

  const auto report = std::visit([](const auto& x) { return validate(x); }, doc.pair);
  if (cmd == "validate") return validation_json(report);
  if (!report.ok()) throw InvalidInput("invalid curve: " + report.summary());

  if (cmd == "genus") {
    return std::visit(
        [](const auto& x) -> json {
          return {{"arithmetic_genus", arithmetic_genus(x)}, {"combinatorial_genus", combinatorial_genus(x)}};
        },
        doc.pair);
  }
  if (cmd == "discrepancies" || cmd == "classify") {
    const Rational c = coefficient(cfg);
    const Scope scope = cfg.along_c0 ? Scope::AlongC0 : Scope::Global;
    if (cfg.along_c0 && is_plane(doc.pair)) throw InvalidInput("--along-c0 needs a ruled document");
    if (cmd == "discrepancies") {
      const auto r = is_plane(doc.pair) ? log_discrepancies(std::get<PlanePair>(doc.pair), c)
                                        : log_discrepancies(std::get<RuledPair>(doc.pair), c, scope);
      json j = discrepancy_json(r);
      j["scope"] = cfg.along_c0 ? "along_c0" : "global";
      return j;
    }
    const auto k = is_plane(doc.pair) ? classify_singularities(std::get<PlanePair>(doc.pair), c)
                                      : classify_singularities(std::get<RuledPair>(doc.pair), c, scope);
    return {{"classification", to_string(k.kind)},
            {"witness", k.witness},
            {"minimum", rational_json(k.minimum)},
            {"coefficient", rational_json(c)},
            {"scope", cfg.along_c0 ? "along_c0" : "global"}};
  }
  if (cmd == "standard-model") {
    if (cfg.all) {
      const auto set = enumerate_standard_models(doc.pair, static_cast<std::size_t>(cfg.branch_bound));
      json models = json::array();
      for (const auto& m : set.models) models.push_back(model_json(doc.pair, m));
      return {{"models", models}, {"truncated", set.truncated}};
    }
    return {{"model", model_json(doc.pair, standard_model(doc.pair, TieBreak{cfg.prefer}))}};
  }
  if (cmd == "minimal-degree") {
    if (const auto* r = std::get_if<RuledPair>(&doc.pair)) return ruled_minimal_degree(*r);
    const auto& p = std::get<PlanePair>(doc.pair);
    return verdict_json(p, is_minimal_degree(p, static_cast<std::size_t>(cfg.branch_bound)));
  }
  if (cmd == "line-equivalence") {
    const auto& p = need_plane(doc, cmd);
    return line_json(p, line_equivalent(p, cfg.max_class_degree));
  }
  if (cmd == "nf-certificate") {
    const auto& p = need_plane(doc, cmd);
    return {{"noether_fano", certificate_json(noether_fano_certificate(p))}, {"jung", certificate_json(jung_test(p))}};
  }
  throw InvalidInput("unknown command '" + cmd + "'");
}

json envelope(const std::string& cmd, json result) {
  json j = {{"command", cmd}, {"engine_version", CREMONA_VERSION}, {"seed", 0}};
  if (result.is_array()) {
    j["results"] = std::move(result);
  } else {
    j["result"] = std::move(result);
  }
  return j;
}

json run_batch(const std::string& cmd, const json& input, const RunConfig& cfg, int& exit_code) {
  exit_code = 0;
  if (!input.is_array()) {
    const auto doc = parse_document(input);
    return envelope(cmd, run_document_command(cmd, doc, cfg));
  }
  const std::size_t n = input.size();
  std::vector<json> out(n);
  std::vector<int> codes(n, 0);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        const auto doc = parse_document(input[i], "/" + std::to_string(i));
        out[i] = {{"ok", true}, {"result", run_document_command(cmd, doc, cfg)}};
      } catch (const InvalidInput& e) {
        out[i] = {{"ok", false}, {"error", {{"kind", "invalid_input"}, {"message", e.what()}}}};
        codes[i] = 1;
      } catch (const std::exception& e) {
        out[i] = {{"ok", false}, {"error", {{"kind", "invariant_violation"}, {"message", e.what()}}}};
        codes[i] = 2;
      }
    }
  };
  const std::size_t threads = std::max<std::size_t>(1, std::min(cfg.jobs, n));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (auto c : codes) exit_code = std::max(exit_code, c);
  return envelope(cmd, json(out));
}

json scroll_reduce(std::int64_t degree) {
  json steps = json::array();
  for (const auto& s : scroll_reduction(degree)) {
    const auto d = s.state.degree;
    if (d == 2) {
      steps.push_back({{"degree", d}, {"line_mult", s.state.line_mult}, {"base", true}});
      continue;
    }
    steps.push_back({{"degree", d},
                     {"line_mult", s.state.line_mult},
                     {"degree_check", "3*" + std::to_string(d) + "-2*" + std::to_string(d - 1) + "-3 = " +
                                          std::to_string(s.next_degree)},
                     {"mult_check", "2*" + std::to_string(d) + "-" + std::to_string(d - 1) + "-3 = " +
                                        std::to_string(s.next_line_mult)}});
  }
  return {{"degree", degree}, {"states", steps}};
}

json ci_certificate(std::int64_t a, std::int64_t b, std::int64_t k) {
  return certificate_json(ci_projection_certificate({a, b, k}));
}

json nf_numeric(std::int64_t n, std::int64_t d_high, std::int64_t d_low, std::int64_t max_mult) {
  return certificate_json(noether_fano_certificate(n, d_high, d_low, max_mult));
}

json replay_document(const json& j) {
  if (!j.is_object()) throw InvalidInput("schema error at /: expected {\"start\", \"trace\"}");
  for (const auto& [k, _] : j.items()) {
    if (k != "start" && k != "trace") throw InvalidInput("schema error at /" + k + ": unknown key");
  }
  if (!j.contains("start")) throw InvalidInput("schema error at /start: missing");
  if (!j.contains("trace")) throw InvalidInput("schema error at /trace: missing");
  const auto doc = parse_document(j.at("start"), "/start");
  require_valid(doc.pair);
  const auto trace = trace_from_json(j.at("trace"), "/trace");
  const Pair end = replay(doc.pair, trace);
  return {{"steps", trace.size()}, {"final", pair_to_json(end)}, {"genus", combinatorial_genus(end)}};
}

json selftest(bool& ok) {
  ok = true;
  json checks = json::array();
  auto check = [&](const std::string& name, auto&& fn) {
    bool pass = false;
    std::string detail;
    try {
      pass = fn(detail);
    } catch (const std::exception& e) {
      detail = e.what();
    }
    ok = ok && pass;
    checks.push_back({{"name", name}, {"pass", pass}, {"detail", detail}});
  };
  auto pt = [](std::string id, std::int64_t m, std::optional<std::string> parent = {}, std::optional<bool> on = {}) {
    ClusterPoint p;
    p.id = std::move(id);
    p.mult = m;
    p.parent = parent;
    if (parent) p.proximate_to = {*parent};
    p.on_c0 = on;
    return p;
  };
  check("ruled node on C0 resolves to degree 9", [&](std::string& d) {
    const auto pm = minimal_plane_model(resolve_along_c0(RuledPair{3, 3, 11, WeightedCluster({pt("n", 2, {}, true)})}));
    d = "degree " + std::to_string(pm.degree);
    return pm.degree == 9 && pm.pair.cluster.max_mult() == 6;
  });
  check("ruled node off C0 resolves to degree 8", [&](std::string& d) {
    const auto pm = minimal_plane_model(resolve_along_c0(RuledPair{3, 3, 11, WeightedCluster({pt("n", 2, {}, false)})}));
    d = "degree " + std::to_string(pm.degree);
    return pm.degree == 8 && pm.pair.cluster.max_mult() == 5;
  });
  check("sextic with node and tacnode has two models", [&](std::string& d) {
    const auto s = enumerate_standard_models(PlanePair{6, WeightedCluster({pt("n", 2), pt("t1", 2), pt("t2", 2, "t1")})});
    d = std::to_string(s.models.size()) + " models";
    return s.models.size() == 2;
  });
  check("degree 7 quadruple point is minimal", [&](std::string& d) {
    const auto v = is_minimal_degree(PlanePair{7, WeightedCluster({pt("p", 4), pt("q1", 2, "p"), pt("q2", 2, "p")})});
    d = to_string(v.status);
    return v.status == MinimalityStatus::Minimal;
  });
  check("elm agrees with the lattice", [&](std::string& d) {
    const auto o = elm_oracle(1, 4, 6, {true, 2});
    d = "F" + std::to_string(o.a) + " beta " + std::to_string(o.beta);
    return o == ElmOutcome{2, 4, 8, 2};
  });
  return {{"checks", checks}, {"ok", ok}};
}

}  // namespace cremona::cli
