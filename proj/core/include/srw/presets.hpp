#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "srw/io.hpp"

namespace srw {

// Canned figure reproductions. fig1-* runs the walk to the inverse local
// time at edge 100, count 800, and emits the crossing profile with its tent
// overlay; fig2-* emits two million-step trajectories (one stopped at a fixed
// step count, one at an inverse local time with comparable length) with the
// square-root hull. The -base2/-base10 suffix picks the exponential weight.
std::vector<std::string> preset_names();

struct PresetResult {
  std::string name;
  std::vector<std::string> files;  // everything written, CSV + script + report
  Report report;
};

// Writes the preset's data file, plot script and JSON report into out_dir
// (created if missing). Throws ConfigError for unknown names.
PresetResult run_preset(const std::string& name, const std::string& out_dir,
                        std::uint64_t seed, int threads);

}  // namespace srw
