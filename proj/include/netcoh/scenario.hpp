#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "netcoh/rational.hpp"

namespace netcoh {

struct ParseError : Error {
  explicit ParseError(const std::string& what) : Error(what) {}
};
struct ValidationError : Error {
  explicit ValidationError(const std::string& what) : Error(what) {}
};

// One check request: a kind from list_check_kinds() plus string parameters
// (counts and rationals stay exact in their string form).
struct CheckRequest {
  std::string kind;
  std::map<std::string, std::string> params;

  std::string param_or(const std::string& key, const std::string& fallback) const {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
  }
};

struct ScenarioLimits {
  size_t max_elements = 200000;
  size_t max_path_len = 3;
  size_t sample_count = 100;
};

struct Scenario {
  Rat window_lo = -8, window_hi = 8;
  Rat step = Rat(1) / 4;
  std::string poset_kind = "D";
  uint64_t seed = 1;
  ScenarioLimits limits;
  std::vector<CheckRequest> checks;
};

struct CheckResult {
  std::string name;
  std::string status;  // pass | fail | skipped
  std::vector<std::pair<std::string, std::string>> details;  // ordered key/value
  std::string witness;  // serialized witness JSON when a check fails
  uint64_t elapsed_us = 0;
};

struct RunReport {
  Scenario scenario;
  std::vector<CheckResult> results;
  size_t passed = 0, failed = 0, skipped = 0;
  bool all_passed() const { return failed == 0; }
};

std::vector<std::string> list_check_kinds();

// Parses and validates the scenario document (a single JSON object).
// Throws ParseError with position info, or ValidationError.
Scenario parse_scenario(const std::string& text);

RunReport run(const Scenario& scenario, unsigned jobs = 1);

enum class ReportFormat { Json, Csv };
std::string emit(const RunReport& report, ReportFormat format);

// Default scenario exercising every check with acceptance parameters.
Scenario default_scenario();

}  // namespace netcoh
