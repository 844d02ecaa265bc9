#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cremona_cli/document.hpp"

namespace cremona::cli {

struct RunConfig {
  std::int64_t max_class_degree = 6;
  std::int64_t branch_bound = 64;
  std::size_t jobs = 1;
  std::string coeff;
  bool along_c0 = false;
  bool all = false;
  std::vector<std::string> prefer;
};

/// Commands that take a curve document.
bool is_document_command(const std::string& cmd);

/// One document through one command. Throws InvalidInput / InvariantViolation.
json run_document_command(const std::string& cmd, const CurveDocument& doc, const RunConfig& cfg);

/// Wraps a single document or an array of documents into a report envelope.
/// exit_code receives 0, 1 (some entry invalid) or 2 (invariant violation).
json run_batch(const std::string& cmd, const json& input, const RunConfig& cfg, int& exit_code);

json envelope(const std::string& cmd, json result);

json certificate_json(const Certificate& c);
json scroll_reduce(std::int64_t degree);
json ci_certificate(std::int64_t a, std::int64_t b, std::int64_t k);
json nf_numeric(std::int64_t n, std::int64_t d_high, std::int64_t d_low, std::int64_t max_mult);

/// {"start": document, "trace": [moves]} -> final state. Throws InvariantViolation on divergence.
json replay_document(const json& j);

/// Built-in regression checks; ok is false when any fails.
json selftest(bool& ok);

}  // namespace cremona::cli
