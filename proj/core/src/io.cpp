#include "srw/io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "srw/version.hpp"

namespace srw {
namespace {

std::string format_cell(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_manifest_comments(std::ofstream& out, const OutputManifest& m) {
  out << "# tool: srw-lab " << kVersion << "\n";
  out << "# experiment: " << m.experiment << "\n";
  out << "# weight: " << m.weight << "\n";
  out << "# seed: " << m.seed << "\n";
  out << "# config_hash: " << m.config_hash << "\n";
}

std::ofstream open_or_throw(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  return out;
}

}  // namespace

void write_csv(const std::string& path, const OutputManifest& manifest,
               std::span<const std::string> columns,
               const std::vector<std::vector<double>>& rows) {
  auto out = open_or_throw(path);
  write_manifest_comments(out, manifest);
  for (std::size_t i = 0; i < columns.size(); ++i) {
    out << (i ? "," : "") << columns[i];
  }
  out << "\n";
  for (const auto& row : rows) {
    if (row.size() != columns.size()) {
      throw std::invalid_argument("csv row width does not match header");
    }
    for (std::size_t i = 0; i < row.size(); ++i) {
      out << (i ? "," : "") << format_cell(row[i]);
    }
    out << "\n";
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::string report_to_json(const Report& report) {
  nlohmann::json j;
  j["tool"] = std::string("srw-lab ") + kVersion;
  j["experiment"] = report.manifest.experiment;
  j["weight"] = report.manifest.weight;
  j["seed"] = report.manifest.seed;
  j["config_hash"] = report.manifest.config_hash;
  j["n_samples"] = report.n_samples;
  j["statistics"] = report.statistics;
  j["thresholds"] = report.thresholds;
  j["pass"] = report.pass;
  return j.dump(2) + "\n";
}

void write_report_json(const std::string& path, const Report& report) {
  auto out = open_or_throw(path);
  out << report_to_json(report);
  if (!out) throw std::runtime_error("write failed: " + path);
}

void write_plot_stub(const std::string& path, const std::string& data_file,
                     const std::string& title, const std::string& kind,
                     const OutputManifest* manifest) {
  auto out = open_or_throw(path);
  out << "#!/usr/bin/env python3\n"
      << "# Renders " << data_file << " next to this script.\n";
  if (manifest) {
    out << "# tool: srw-lab " << kVersion << "\n"
        << "# experiment: " << manifest->experiment << "\n"
        << "# seed: " << manifest->seed << "\n"
        << "# config_hash: " << manifest->config_hash << "\n";
  }
  out
      << "import csv, os, sys\n"
      << "import matplotlib\n"
      << "matplotlib.use('Agg')\n"
      << "import matplotlib.pyplot as plt\n"
      << "\n"
      << "here = os.path.dirname(os.path.abspath(__file__))\n"
      << "data = os.path.join(here, '" << data_file << "')\n"
      << "with open(data) as fh:\n"
      << "    rows = [r for r in csv.reader(fh) if r and not "
         "r[0].startswith('#')]\n"
      << "header, body = rows[0], rows[1:]\n"
      << "cols = {name: [float(r[i]) for r in body] for i, name in "
         "enumerate(header)}\n"
      << "fig, ax = plt.subplots(figsize=(8, 5))\n"
      << "kind = '" << kind << "'\n"
      << "x_name = header[0]\n"
      << "if kind == 'trajectory' and 'series' in cols:\n"
      << "    labels = sorted(set(cols['series']))\n"
      << "    for lab in labels:\n"
      << "        xs = [x for x, s in zip(cols[x_name], cols['series']) if s "
         "== lab]\n"
      << "        ys = [y for y, s in zip(cols[header[1]], cols['series']) if "
         "s == lab]\n"
      << "        ax.plot(xs, ys, lw=0.8, label=f'series {lab:g}')\n"
      << "    if 'hull' in cols:\n"
      << "        xs = sorted(set(cols[x_name]))\n"
      << "        hull = {x: h for x, h in zip(cols[x_name], cols['hull'])}\n"
      << "        hs = [hull[x] for x in xs]\n"
      << "        ax.plot(xs, hs, 'k--', lw=0.8, label='hull')\n"
      << "        ax.plot(xs, [-h for h in hs], 'k--', lw=0.8)\n"
      << "else:\n"
      << "    for name in header[1:]:\n"
      << "        if name in ('series', 'hull'):\n"
      << "            continue\n"
      << "        ax.plot(cols[x_name], cols[name], lw=1.0, label=name)\n"
      << "ax.set_xlabel(x_name)\n"
      << "ax.set_title('" << title << "')\n"
      << "ax.legend()\n"
      << "fig.tight_layout()\n"
      << "png = os.path.splitext(os.path.abspath(__file__))[0] + '.png'\n"
      << "fig.savefig(png, dpi=150)\n"
      << "print('wrote', png)\n";
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace srw
