#include "sandwich/report.hpp"

namespace sandwich {

std::string to_string(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::skipped: return "skipped";
    case Status::overflow: return "overflow";
  }
  return "fail";
}

Check make_check(std::string name, std::string anchor, bool ok, Json witness) {
  Check c;
  c.name = std::move(name);
  c.anchor = std::move(anchor);
  c.status = ok ? Status::pass : Status::fail;
  c.witness = std::move(witness);
  return c;
}

bool Report::ok() const {
  for (const auto& c : checks)
    if (c.status == Status::fail) return false;
  return true;
}

Json Report::to_json(bool with_timing) const {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["tool_version"] = kToolVersion;
  j["command"] = command;
  j["config"] = config;
  Json arr = Json::array();
  int counts[4] = {0, 0, 0, 0};
  for (const auto& c : checks) {
    Json r;
    r["name"] = c.name;
    r["anchor"] = c.anchor;
    r["status"] = to_string(c.status);
    r["witness"] = c.witness;
    if (with_timing) r["seconds"] = c.seconds;
    arr.push_back(std::move(r));
    ++counts[static_cast<int>(c.status)];
  }
  j["checks"] = std::move(arr);
  j["summary"] = {{"pass", counts[0]}, {"fail", counts[1]}, {"skipped", counts[2]}, {"overflow", counts[3]}};
  return j;
}

Json report_schema() {
  return Json::parse(R"({
  "$schema": "https://json-schema.org/draft/2020-12/schema",
  "title": "sandwich report",
  "schema_version": 1,
  "type": "object",
  "required": ["schema_version", "tool_version", "command", "config", "checks", "summary"],
  "properties": {
    "schema_version": {"type": "integer", "const": 1},
    "tool_version": {"type": "string"},
    "command": {"type": "string"},
    "config": {"type": "object"},
    "checks": {
      "type": "array",
      "items": {
        "type": "object",
        "required": ["name", "anchor", "status", "witness"],
        "properties": {
          "name": {"type": "string"},
          "anchor": {"type": "string", "description": "the mathematical statement the check reproduces"},
          "status": {"type": "string", "enum": ["pass", "fail", "skipped", "overflow"]},
          "witness": {"type": "object"},
          "seconds": {"type": "number"}
        }
      }
    },
    "summary": {
      "type": "object",
      "required": ["pass", "fail", "skipped", "overflow"],
      "properties": {
        "pass": {"type": "integer"},
        "fail": {"type": "integer"},
        "skipped": {"type": "integer"},
        "overflow": {"type": "integer"}
      }
    }
  }
})");
}

namespace {

bool type_ok(const Json& v, const std::string& t) {
  if (t == "object") return v.is_object();
  if (t == "array") return v.is_array();
  if (t == "string") return v.is_string();
  if (t == "integer") return v.is_number_integer();
  if (t == "number") return v.is_number();
  if (t == "boolean") return v.is_boolean();
  return false;
}

// The subset of JSON Schema the report schema uses: type, required,
// properties, items, enum and const.
void check_node(const Json& v, const Json& s, const std::string& path, std::vector<std::string>& out) {
  if (s.contains("type") && !type_ok(v, s["type"].get<std::string>())) {
    out.push_back(path + ": expected " + s["type"].get<std::string>());
    return;
  }
  if (s.contains("const") && v != s["const"]) out.push_back(path + ": wrong constant");
  if (s.contains("enum")) {
    bool hit = false;
    for (const auto& e : s["enum"]) hit = hit || e == v;
    if (!hit) out.push_back(path + ": value not in enum");
  }
  if (v.is_object()) {
    if (s.contains("required"))
      for (const auto& k : s["required"])
        if (!v.contains(k.get<std::string>())) out.push_back(path + ": missing " + k.get<std::string>());
    if (s.contains("properties"))
      for (const auto& [k, sub] : s["properties"].items())
        if (v.contains(k)) check_node(v[k], sub, path + "/" + k, out);
  }
  if (v.is_array() && s.contains("items"))
    for (size_t i = 0; i < v.size(); ++i) check_node(v[i], s["items"], path + "/" + std::to_string(i), out);
}

}  // namespace

std::vector<std::string> validate(const Json& doc, const Json& schema) {
  std::vector<std::string> out;
  check_node(doc, schema, "", out);
  return out;
}

}  // namespace sandwich
