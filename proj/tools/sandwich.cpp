#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "sandwich/suites.hpp"

using namespace sandwich;

namespace {

void print_human(const Report& r, std::ostream& os) {
  for (const auto& c : r.checks) {
    os << "[" << to_string(c.status) << "] " << c.name;
    if (c.witness.contains("holds")) os << (c.witness["holds"].get<bool>() ? ": holds" : ": fails");
    if (c.witness.contains("count")) os << ": " << c.witness["count"];
    if (c.witness.contains("levels")) os << ": " << c.witness["levels"] << " levels";
    os << "\n";
  }
  auto s = r.to_json(false)["summary"];
  os << s["pass"] << " pass, " << s["fail"] << " fail, " << s["skipped"] << " skipped, " << s["overflow"]
     << " overflow\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"levels and sandwich checks for subsystem overgroups of Chevalley groups"};
  app.set_config("--config", "", "key = value file; keys are the long flag names");
  app.require_subcommand(1);

  SuiteConfig cfg;
  std::string suite;
  std::string out_path;
  bool json = false;
  bool no_timing = false;
  app.add_option("--system", cfg.system, "root system label: An, Dn, E6, E7, E8")->capture_default_str();
  app.add_option("--subsystem", cfg.subsystem, "preset such as 4A1, D3, A2, or gens:(v);(v)")->capture_default_str();
  app.add_option("--ring", cfg.ring, "ring spec such as F2, Z/4, F4, Z/2[x]/(x^2)")->capture_default_str();
  app.add_option("--suite", suite, "suite to run with verify");
  app.add_option("--samples", cfg.samples, "random samples (0 = suite default)")->capture_default_str();
  app.add_option("--bound", cfg.bound, "group enumeration bound")->capture_default_str();
  app.add_option("--level-bound", cfg.level_bound, "bound on seed tuples in level enumeration")->capture_default_str();
  app.add_option("--seed", cfg.seed, "seed for every random choice")->capture_default_str();
  app.add_option("--n", cfg.n, "rank for so-case, l for cl-case (0 = suite default)")->capture_default_str();
  app.add_option("--out", out_path, "write the JSON report to this file");
  app.add_flag("--json", json, "print the JSON report instead of one line per check");
  app.add_flag("--no-timing", no_timing, "omit wall times from the JSON report");

  auto* analyze = app.add_subcommand("analyze", "conditions, blocks, orbits and levels of a subsystem");
  auto* verify = app.add_subcommand("verify", "run a named property suite");
  auto* schema = app.add_subcommand("report-schema", "print the JSON schema of reports");
  for (auto* s : {analyze, verify, schema}) s->fallthrough();

  CLI11_PARSE(app, argc, argv);

  if (schema->parsed()) {
    std::cout << report_schema().dump(2) << "\n";
    return 0;
  }

  Report report;
  report.config = cfg.to_json();
  try {
    if (analyze->parsed()) {
      report.command = "analyze";
      report.add(analyze_checks(cfg));
    } else {
      report.command = "verify";
      if (suite.empty()) throw Error("verify needs --suite, one of: axioms tandems graded sandwich so-case a2d4 "
                                     "cl-case f4-case square-term");
      report.config["suite"] = suite;
      report.add(run_suite(suite, cfg));
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  const Json doc = report.to_json(!no_timing);
  if (!out_path.empty()) {
    std::ofstream f(out_path);
    if (!f) {
      std::cerr << "error: cannot write " << out_path << "\n";
      return 2;
    }
    f << doc.dump(2) << "\n";
  }
  if (json)
    std::cout << doc.dump(2) << "\n";
  else
    print_human(report, std::cout);
  return report.ok() ? 0 : 1;
}
