#pragma once

#include <chrono>
#include <string>
#include <vector>

#include <json.hpp>

namespace sandwich {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolVersion = "0.3.0";
inline constexpr int kSchemaVersion = 1;

enum class Status { pass, fail, skipped, overflow };

std::string to_string(Status s);

struct Check {
  std::string name;
  std::string anchor;  // the statement being checked, in words
  Status status = Status::pass;
  Json witness = Json::object();
  double seconds = 0;
};

Check make_check(std::string name, std::string anchor, bool ok, Json witness = Json::object());

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

struct Report {
  std::string command;
  Json config = Json::object();
  std::vector<Check> checks;

  void add(Check c) { checks.push_back(std::move(c)); }
  void add(std::vector<Check> cs) {
    for (auto& c : cs) checks.push_back(std::move(c));
  }
  bool ok() const;
  // Timing fields are dropped when with_timing is false, which makes two
  // runs of the same configuration byte-identical.
  Json to_json(bool with_timing = true) const;
};

Json report_schema();
// Empty when the document conforms; otherwise one message per problem.
std::vector<std::string> validate(const Json& doc, const Json& schema);

}  // namespace sandwich
