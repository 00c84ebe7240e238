// Acceptance gate: one line per criterion, exit 0 on full pass, 3 otherwise.
#include <cstdlib>
#include <cstring>
#include <iostream>
#include <string>

#include "srw/acceptance.hpp"

int main(int argc, char** argv) {
  srw::AcceptanceOptions opt;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    const bool has_value = i + 1 < argc;
    if (arg == "--seed" && has_value) {
      opt.seed = std::strtoull(argv[++i], nullptr, 10);
    } else if (arg == "--threads" && has_value) {
      opt.threads = std::atoi(argv[++i]);
    } else if (arg == "--out" && has_value) {
      opt.out_dir = argv[++i];
    } else {
      std::cerr << "usage: " << argv[0]
                << " [--seed N] [--threads N] [--out DIR]\n";
      return 1;
    }
  }
  const auto results = srw::run_acceptance_suite(opt, &std::cout);
  const bool ok = srw::acceptance_all_pass(results);
  int failed = 0;
  for (const auto& r : results) failed += r.pass ? 0 : 1;
  std::cout << (ok ? "ACCEPTANCE: PASS (11/11)"
                   : "ACCEPTANCE: FAIL (" + std::to_string(11 - failed) +
                         "/11 passed)")
            << std::endl;
  return ok ? 0 : 3;
}
