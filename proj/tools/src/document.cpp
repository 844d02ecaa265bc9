#include "cremona_cli/document.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "cremona/error.hpp"

namespace cremona::cli {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
  throw InvalidInput("schema error at " + (path.empty() ? std::string("/") : path) + ": " + msg);
}

void only_keys(const json& j, const std::string& path, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) fail(path, "expected an object");
  for (const auto& [k, _] : j.items()) {
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return k == a; })) {
      fail(path + "/" + k, "unknown key");
    }
  }
}

const json& need(const json& j, const std::string& path, const char* key) {
  if (!j.contains(key)) fail(path + "/" + key, "missing");
  return j.at(key);
}

std::int64_t integer(const json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<std::int64_t>();
}

std::string id_string(const json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a string id");
  std::string s = j.get<std::string>();
  const auto b = s.find_first_not_of(" \t\r\n");
  const auto e = s.find_last_not_of(" \t\r\n");
  s = b == std::string::npos ? "" : s.substr(b, e - b + 1);
  if (s.empty()) fail(path, "empty id");
  if (s[0] == '@') fail(path, "ids starting with '@' are reserved");
  return s;
}

ClusterPoint parse_point(const json& j, const std::string& path) {
  only_keys(j, path, {"id", "mult", "parent", "proximate_to", "on_c0"});
  ClusterPoint p;
  p.id = id_string(need(j, path, "id"), path + "/id");
  p.mult = integer(need(j, path, "mult"), path + "/mult");
  if (j.contains("parent")) p.parent = id_string(j.at("parent"), path + "/parent");
  if (j.contains("proximate_to")) {
    const auto& arr = j.at("proximate_to");
    if (!arr.is_array()) fail(path + "/proximate_to", "expected an array");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      p.proximate_to.push_back(id_string(arr[i], path + "/proximate_to/" + std::to_string(i)));
    }
  } else if (p.parent) {
    p.proximate_to = {*p.parent};
  }
  if (j.contains("on_c0")) {
    if (!j.at("on_c0").is_boolean()) fail(path + "/on_c0", "expected a boolean");
    p.on_c0 = j.at("on_c0").get<bool>();
  }
  return p;
}

json point_to_json(const ClusterPoint& p) {
  json j = {{"id", p.id}, {"mult", p.mult}};
  if (p.parent) j["parent"] = *p.parent;
  if (!p.proximate_to.empty()) j["proximate_to"] = p.proximate_to;
  if (p.on_c0) j["on_c0"] = *p.on_c0;
  return j;
}

void flatten(const json& j, const std::string& path, std::ostringstream& os) {
  if (j.is_object()) {
    if (j.empty()) os << path << ": {}\n";
    for (const auto& [k, v] : j.items()) flatten(v, path.empty() ? k : path + "." + k, os);
  } else if (j.is_array()) {
    if (j.empty()) os << path << ": []\n";
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], path + "[" + std::to_string(i) + "]", os);
  } else if (j.is_string()) {
    os << path << ": " << j.get<std::string>() << "\n";
  } else {
    os << path << ": " << j.dump() << "\n";
  }
}

}  // namespace

json parse_json_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InvalidInput(std::string("malformed JSON: ") + e.what());
  }
}

CurveDocument parse_document(const json& j, const std::string& path) {
  only_keys(j, path, {"surface", "class", "points", "options"});
  CurveDocument doc;
  const auto& surface = need(j, path, "surface");
  const auto& cls = need(j, path, "class");
  std::vector<ClusterPoint> pts;
  if (j.contains("points")) {
    const auto& arr = j.at("points");
    if (!arr.is_array()) fail(path + "/points", "expected an array");
    for (std::size_t i = 0; i < arr.size(); ++i) pts.push_back(parse_point(arr[i], path + "/points/" + std::to_string(i)));
  }
  if (surface.is_string()) {
    if (surface.get<std::string>() != "plane") fail(path + "/surface", "expected \"plane\" or {\"hirzebruch\": a}");
    only_keys(cls, path + "/class", {"degree"});
    PlanePair p;
    p.degree = integer(need(cls, path + "/class", "degree"), path + "/class/degree");
    p.cluster = WeightedCluster(std::move(pts));
    doc.pair = std::move(p);
  } else {
    only_keys(surface, path + "/surface", {"hirzebruch"});
    RuledPair r;
    r.a = integer(need(surface, path + "/surface", "hirzebruch"), path + "/surface/hirzebruch");
    only_keys(cls, path + "/class", {"alpha", "beta"});
    r.alpha = integer(need(cls, path + "/class", "alpha"), path + "/class/alpha");
    r.beta = integer(need(cls, path + "/class", "beta"), path + "/class/beta");
    r.cluster = WeightedCluster(std::move(pts));
    doc.pair = std::move(r);
  }
  if (j.contains("options")) {
    const auto& o = j.at("options");
    const std::string op = path + "/options";
    only_keys(o, op, {"max_class_degree", "branch_bound", "tie_break"});
    if (o.contains("max_class_degree")) {
      doc.options.max_class_degree = integer(o.at("max_class_degree"), op + "/max_class_degree");
    }
    if (o.contains("branch_bound")) doc.options.branch_bound = integer(o.at("branch_bound"), op + "/branch_bound");
    if (o.contains("tie_break")) {
      const auto& arr = o.at("tie_break");
      if (!arr.is_array()) fail(op + "/tie_break", "expected an array of ids");
      std::vector<std::string> ids;
      for (std::size_t i = 0; i < arr.size(); ++i) ids.push_back(id_string(arr[i], op + "/tie_break/" + std::to_string(i)));
      doc.options.tie_break = std::move(ids);
    }
  }
  return doc;
}

json pair_to_json(const Pair& pair) {
  json j;
  const WeightedCluster* cl = nullptr;
  if (const auto* p = std::get_if<PlanePair>(&pair)) {
    j["surface"] = "plane";
    j["class"] = {{"degree", p->degree}};
    cl = &p->cluster;
  } else {
    const auto& r = std::get<RuledPair>(pair);
    j["surface"] = {{"hirzebruch", r.a}};
    j["class"] = {{"alpha", r.alpha}, {"beta", r.beta}};
    cl = &r.cluster;
  }
  j["points"] = json::array();
  for (const auto& p : cl->points()) j["points"].push_back(point_to_json(p));
  return j;
}

json document_to_json(const CurveDocument& doc) {
  json j = pair_to_json(doc.pair);
  json o = json::object();
  if (doc.options.max_class_degree) o["max_class_degree"] = *doc.options.max_class_degree;
  if (doc.options.branch_bound) o["branch_bound"] = *doc.options.branch_bound;
  if (doc.options.tie_break) o["tie_break"] = *doc.options.tie_break;
  if (!o.empty()) j["options"] = o;
  return j;
}

json state_to_json(const SurfaceState& s) {
  if (s.plane) return {{"surface", "plane"}, {"class", {{"degree", s.degree}}}};
  return {{"surface", {{"hirzebruch", s.a}}}, {"class", {{"alpha", s.alpha}, {"beta", s.beta}}}};
}

json move_to_json(const Move& m) {
  json j = state_to_json(m.after);
  return {{"op", to_string(m.op)},
          {"center", m.center},
          {"direction", to_string(m.direction)},
          {"surface_after", j["surface"]},
          {"class_after", j["class"]},
          {"new_point_mult", m.new_point_mult},
          {"new_point_id", m.new_point_id},
          {"assumptions", m.assumptions}};
}

Move move_from_json(const json& j, const std::string& path) {
  only_keys(j, path, {"op", "center", "direction", "surface_after", "class_after", "new_point_mult",
                      "new_point_id", "assumptions"});
  Move m;
  auto str = [&](const char* key) {
    const auto& v = need(j, path, key);
    if (!v.is_string()) fail(path + "/" + key, "expected a string");
    return v.get<std::string>();
  };
  try {
    m.op = parse_move_op(str("op"));
    m.direction = j.contains("direction") ? parse_direction(str("direction")) : Direction::None;
  } catch (const InvalidInput& e) {
    fail(path, e.what());
  }
  m.center = str("center");
  const auto& surf = need(j, path, "surface_after");
  const auto& cls = need(j, path, "class_after");
  if (surf.is_string() && surf.get<std::string>() == "plane") {
    only_keys(cls, path + "/class_after", {"degree"});
    m.after.plane = true;
    m.after.degree = integer(need(cls, path + "/class_after", "degree"), path + "/class_after/degree");
  } else {
    only_keys(surf, path + "/surface_after", {"hirzebruch"});
    only_keys(cls, path + "/class_after", {"alpha", "beta"});
    m.after.a = integer(need(surf, path + "/surface_after", "hirzebruch"), path + "/surface_after/hirzebruch");
    m.after.alpha = integer(need(cls, path + "/class_after", "alpha"), path + "/class_after/alpha");
    m.after.beta = integer(need(cls, path + "/class_after", "beta"), path + "/class_after/beta");
  }
  if (j.contains("new_point_mult")) m.new_point_mult = integer(j.at("new_point_mult"), path + "/new_point_mult");
  if (j.contains("new_point_id")) m.new_point_id = str("new_point_id");
  if (j.contains("assumptions")) {
    const auto& a = j.at("assumptions");
    if (!a.is_array()) fail(path + "/assumptions", "expected an array");
    for (const auto& s : a) {
      if (!s.is_string()) fail(path + "/assumptions", "expected strings");
      m.assumptions.push_back(s.get<std::string>());
    }
  }
  return m;
}

json trace_to_json(const Trace& t) {
  json j = json::array();
  for (const auto& m : t) j.push_back(move_to_json(m));
  return j;
}

Trace trace_from_json(const json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array of moves");
  Trace t;
  for (std::size_t i = 0; i < j.size(); ++i) t.push_back(move_from_json(j[i], path + "/" + std::to_string(i)));
  return t;
}

json rational_json(const Rational& q) { return to_string(q); }

std::string emit(const json& report, const std::string& format) {
  if (format == "json") return report.dump(2) + "\n";
  if (format == "text") {
    std::ostringstream os;
    flatten(report, "", os);
    return os.str();
  }
  throw InvalidInput("unknown format '" + format + "' (json or text)");
}

}  // namespace cremona::cli
