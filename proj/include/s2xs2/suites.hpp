#pragma once

// Verification suites: each suite builds its surfaces, measures the
// advertised quantities and returns one record per check. Checks tagged
// with a criterion number belong to the acceptance gate; tag 0 marks
// supplementary cross-checks that guard the implementation itself.

#include <string>
#include <vector>

namespace s2xs2 {

struct CheckResult {
  std::string name;
  int criterion = 0;  // acceptance criterion, 0 for supplementary
  bool pass = false;
  double value = 0.0;      // measured quantity
  double threshold = 0.0;  // bound it was compared against
  std::string detail;
  double seconds = 0.0;  // wall time attributed to this check
};

struct SuiteOptions {
  // resolutions of the refinement pairs used by the convergence and
  // sweep-order checks
  int coarse = 64;
  int fine = 128;
};

std::vector<std::string> suite_names();

// throws std::invalid_argument for an unknown suite name or bad options
std::vector<CheckResult> run_suite(const std::string& name,
                                   const SuiteOptions& opt = {});
std::vector<CheckResult> run_all_suites(const SuiteOptions& opt = {});

std::string report_json(const std::vector<CheckResult>& checks);

}  // namespace s2xs2
