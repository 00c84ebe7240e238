#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace srw {

// Provenance block embedded at the top of every output file, as '#' comment
// lines in CSV and as top-level fields in JSON.
struct OutputManifest {
  std::string experiment;
  std::string weight;  // WeightFunction::describe()
  std::uint64_t seed = 0;
  std::uint64_t config_hash = 0;
};

// CSV with manifest comments, a header line and %.17g-formatted cells.
void write_csv(const std::string& path, const OutputManifest& manifest,
               std::span<const std::string> columns,
               const std::vector<std::vector<double>>& rows);

// Machine-readable summary of one experiment: named statistics, the
// thresholds they were held against and the verdict.
struct Report {
  OutputManifest manifest;
  std::int64_t n_samples = 0;
  std::map<std::string, double> statistics;
  std::map<std::string, double> thresholds;
  bool pass = false;
};

std::string report_to_json(const Report& report);
void write_report_json(const std::string& path, const Report& report);

// Minimal matplotlib script that renders one produced CSV next to it.
// kind: "profile" (k vs columns), "trajectory" (n vs position per series,
// with a dashed +-hull overlay when a hull column exists), or "density"
// (x vs empirical/theory columns). The manifest, when given, is echoed as
// comments so the script carries the same provenance as the data.
void write_plot_stub(const std::string& path, const std::string& data_file,
                     const std::string& title, const std::string& kind,
                     const OutputManifest* manifest = nullptr);

}  // namespace srw
