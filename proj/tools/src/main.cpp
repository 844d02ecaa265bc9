#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include <CLI11.hpp>

#include "cremona/error.hpp"
#include "cremona_cli/commands.hpp"

using namespace cremona;
using namespace cremona::cli;

namespace {

std::string slurp(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot read " + path);
  return {std::istreambuf_iterator<char>(in), {}};
}

void write_out(const std::string& path, const std::string& bytes) {
  if (path.empty() || path == "-") {
    std::cout << bytes;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot write " + path);
  out << bytes;
}

json error_report(const std::string& cmd, const std::string& kind, const std::string& msg) {
  return envelope(cmd, {{"error", {{"kind", kind}, {"message", msg}}}});
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cremona equivalence of plane curves"};
  app.require_subcommand(1);

  std::string input = "-", output, format = "json";
  RunConfig cfg;
  app.add_option("--input", input, "curve document (default stdin)");
  app.add_option("--output", output, "report file (default stdout)");
  app.add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--max-class-degree", cfg.max_class_degree)->check(CLI::NonNegativeNumber);
  app.add_option("--branch-bound", cfg.branch_bound)->check(CLI::NonNegativeNumber);
  app.add_option("--jobs", cfg.jobs)->check(CLI::PositiveNumber);

  auto sub = [&](const char* name, const char* help) {
    auto* s = app.add_subcommand(name, help);
    s->fallthrough();
    return s;
  };
  sub("validate", "check a curve document");
  sub("genus", "arithmetic and combinatorial genus");
  sub("discrepancies", "log discrepancies of the cluster")->add_option("--coeff", cfg.coeff)->required();
  auto* classify = sub("classify", "terminal / canonical / non-canonical");
  classify->add_option("--coeff", cfg.coeff)->required();
  classify->add_flag("--along-c0", cfg.along_c0);
  auto* sm = sub("standard-model", "reduce to a standard model");
  sm->add_flag("--all", cfg.all, "every model reachable by branching");
  sm->add_option("--prefer", cfg.prefer, "tie-break ids, in order");
  sub("minimal-degree", "minimal degree in the Cremona orbit");
  sub("line-equivalence", "is the curve Cremona equivalent to a line");

  std::optional<std::int64_t> nf_n, nf_high, nf_low, nf_mult;
  auto* nf = sub("nf-certificate", "Noether-Fano inequivalence certificate");
  nf->add_option("--dim", nf_n, "numeric form: ambient dimension");
  nf->add_option("--high", nf_high);
  nf->add_option("--low", nf_low);
  nf->add_option("--mult", nf_mult);

  std::int64_t scroll_degree = 0;
  sub("scroll-reduce", "scroll reduction sequence")->add_option("--degree", scroll_degree)->required();
  std::int64_t ci_a = 0, ci_b = 0, ci_k = 0;
  auto* ci = sub("ci-certificate", "complete intersection projection certificate");
  ci->add_option("-a", ci_a)->required();
  ci->add_option("-b", ci_b)->required();
  ci->add_option("-k", ci_k)->required();
  std::string trace_file;
  sub("replay", "replay a move trace")->add_option("--trace", trace_file)->required();
  sub("selftest", "built-in regression checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  const std::string cmd = app.get_subcommands().front()->get_name();
  int code = 0;
  json report;
  try {
    if (is_document_command(cmd) && !(cmd == "nf-certificate" && nf_high)) {
      report = run_batch(cmd, parse_json_text(slurp(input)), cfg, code);
    } else if (cmd == "nf-certificate") {
      if (!nf_n || !nf_low || !nf_mult) throw InvalidInput("numeric nf-certificate needs --dim --high --low --mult");
      report = envelope(cmd, nf_numeric(*nf_n, *nf_high, *nf_low, *nf_mult));
    } else if (cmd == "scroll-reduce") {
      report = envelope(cmd, scroll_reduce(scroll_degree));
    } else if (cmd == "ci-certificate") {
      report = envelope(cmd, ci_certificate(ci_a, ci_b, ci_k));
    } else if (cmd == "replay") {
      json t = parse_json_text(slurp(trace_file));
      if (t.is_array()) t = json{{"start", parse_json_text(slurp(input))}, {"trace", t}};
      report = envelope(cmd, replay_document(t));
    } else if (cmd == "selftest") {
      bool ok = false;
      report = envelope(cmd, selftest(ok));
      code = ok ? 0 : 2;
    }
  } catch (const InvalidInput& e) {
    report = error_report(cmd, "invalid_input", e.what());
    code = 1;
  } catch (const InvariantViolation& e) {
    report = error_report(cmd, "invariant_violation", e.what());
    code = 2;
  } catch (const std::exception& e) {
    report = error_report(cmd, "invariant_violation", e.what());
    code = 2;
  }

  try {
    write_out(output, emit(report, format));
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
  if (code != 0 && report.contains("result") && report["result"].contains("error")) {
    std::cerr << report["result"]["error"]["message"].get<std::string>() << "\n";
  }
  return code;
}
