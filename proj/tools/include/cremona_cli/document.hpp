#pragma once

// JSON curve documents and report fragments.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cremona/hirzebruch.hpp"

namespace cremona::cli {

using json = nlohmann::json;

inline constexpr const char* kSchemaVersion = "1";

struct DocumentOptions {
  std::optional<std::int64_t> max_class_degree;
  std::optional<std::int64_t> branch_bound;
  std::optional<std::vector<std::string>> tie_break;
  bool operator==(const DocumentOptions&) const = default;
};

struct CurveDocument {
  Pair pair;
  DocumentOptions options;
  bool operator==(const CurveDocument&) const = default;
};

/// Strict: unknown keys and wrong types are InvalidInput with a JSON path.
/// The pair is not validated here.
CurveDocument parse_document(const json& j, const std::string& path = "");
/// Parses text first; malformed JSON is InvalidInput.
json parse_json_text(const std::string& text);

json document_to_json(const CurveDocument& doc);
json pair_to_json(const Pair& pair);

json state_to_json(const SurfaceState& s);
json move_to_json(const Move& m);
Move move_from_json(const json& j, const std::string& path = "");
json trace_to_json(const Trace& t);
Trace trace_from_json(const json& j, const std::string& path = "");

json rational_json(const Rational& q);

/// json: sorted keys, two-space indent. text: one "path: value" line per leaf.
std::string emit(const json& report, const std::string& format);

}  // namespace cremona::cli
