#pragma once

#include <string>
#include <vector>

#include "sandwich/overgroups.hpp"
#include "sandwich/report.hpp"

namespace sandwich {

struct SuiteConfig {
  std::string system = "D4";
  std::string subsystem = "D3";
  std::string ring = "F2";
  int n = 0;                 // rank for so-case, l for cl-case; 0 = suite default
  std::uint64_t samples = 0;  // 0 = suite default
  std::uint64_t bound = kDefaultEnumerationBound;
  std::uint64_t level_bound = 10000;
  std::uint64_t seed = 1;

  Json to_json() const;
};

const std::vector<std::string>& suite_names();
const std::vector<std::string>& shipped_rings();

struct Fixture {
  std::string system, subsystem;
};
// Pairs used by the combinatorial and algebraic suites.
const std::vector<Fixture>& fixtures();

// conditions, blocks, orbits and (bounded) level enumeration
std::vector<Check> analyze_checks(const SuiteConfig& cfg);

std::vector<Check> axioms_suite(const SuiteConfig& cfg);
std::vector<Check> tandems_suite(const SuiteConfig& cfg);
std::vector<Check> graded_suite(const SuiteConfig& cfg);
std::vector<Check> sandwich_suite(const SuiteConfig& cfg);
std::vector<Check> so_case_suite(const SuiteConfig& cfg);
std::vector<Check> a2d4_suite(const SuiteConfig& cfg);
std::vector<Check> cl_case_suite(const SuiteConfig& cfg);
std::vector<Check> f4_case_suite(const SuiteConfig& cfg);
std::vector<Check> square_term_suite(const SuiteConfig& cfg);

// Throws Error for an unknown suite name.
std::vector<Check> run_suite(const std::string& name, const SuiteConfig& cfg);

}  // namespace sandwich
