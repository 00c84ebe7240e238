#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace srw {

struct CriterionResult {
  int index = 0;
  std::string name;
  bool pass = false;
  std::string details;
  double seconds = 0.0;
};

struct AcceptanceOptions {
  std::uint64_t seed = 20260814;
  int threads = 1;
  std::string out_dir = "acceptance-out";  // figure artifacts land here
};

// Runs the 11-point acceptance matrix: exact-oracle agreement, stationarity,
// convergence, two-route profile equivalence, the scaling-limit experiments
// and the figure presets. Each criterion's verdict is printed to `progress`
// (when given) as it completes. Thresholds are pinned in the implementation;
// a FAIL is reported, never patched over.
std::vector<CriterionResult> run_acceptance_suite(const AcceptanceOptions& opt,
                                                  std::ostream* progress);

bool acceptance_all_pass(const std::vector<CriterionResult>& results);

}  // namespace srw
