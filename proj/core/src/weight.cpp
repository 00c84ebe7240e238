#include "srw/weight.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "srw/errors.hpp"
#include "srw/rng.hpp"

namespace srw {

WeightFunction WeightFunction::exponential(double base) {
  if (!(base > 1.0) || !std::isfinite(base))
    throw ConfigError("weight base must be a finite number > 1");
  WeightFunction w;
  w.base_ = base;
  w.log_base_ = std::log(base);
  return w;
}

WeightFunction WeightFunction::from_table(const std::map<int, double>& values,
                                          double tail_ratio) {
  if (values.empty()) throw ConfigError("weight table is empty");
  if (!(tail_ratio >= 1.0) || !std::isfinite(tail_ratio))
    throw ConfigError("weight table tail_ratio must be finite and >= 1");
  const int z_min = values.begin()->first;
  const int z_max = values.rbegin()->first;
  WeightFunction w;
  w.z_min_ = z_min;
  w.table_.resize(static_cast<std::size_t>(z_max - z_min) + 1);
  int expect = z_min;
  for (const auto& [z, v] : values) {
    if (z != expect)
      throw ConfigError("weight table must cover a contiguous integer range; missing z=" +
                        std::to_string(expect));
    if (!(v > 0.0) || !std::isfinite(v))
      throw ConfigError("weight table values must be finite and positive (z=" +
                        std::to_string(z) + ")");
    w.table_[static_cast<std::size_t>(z - z_min)] = std::log(v);
    ++expect;
  }
  w.tail_ratio_ = tail_ratio;
  w.log_tail_ = std::log(tail_ratio);
  return w;
}

WeightFunction WeightFunction::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open weight table file: " + path);
  std::map<int, double> values;
  double tail_ratio = 1.0;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;  // blank / comment-only line
    if (first == "tail_ratio") {
      if (!(ls >> tail_ratio))
        throw ConfigError(path + ":" + std::to_string(lineno) + ": bad tail_ratio");
      continue;
    }
    int z = 0;
    double v = 0.0;
    try {
      z = std::stoi(first);
    } catch (const std::exception&) {
      throw ConfigError(path + ":" + std::to_string(lineno) + ": expected integer z, got '" +
                        first + "'");
    }
    if (!(ls >> v))
      throw ConfigError(path + ":" + std::to_string(lineno) + ": missing weight value");
    if (values.count(z))
      throw ConfigError(path + ":" + std::to_string(lineno) + ": duplicate z=" +
                        std::to_string(z));
    values[z] = v;
  }
  return from_table(values, tail_ratio);
}

double WeightFunction::log_weight(std::int64_t z) const {
  if (is_exponential()) return static_cast<double>(z) * log_base_;
  const std::int64_t lo = z_min_;
  const std::int64_t hi = z_min_ + static_cast<std::int64_t>(table_.size()) - 1;
  if (z < lo) return table_.front() - static_cast<double>(lo - z) * log_tail_;
  if (z > hi) return table_.back() + static_cast<double>(z - hi) * log_tail_;
  return table_[static_cast<std::size_t>(z - lo)];
}

double WeightFunction::prob_right(std::int64_t delta) const {
  // 1 / (1 + w(delta)/w(-delta)); the exp() saturates cleanly to 0 or 1 for
  // extreme log-ratios, which is the correct double rounding of the tails.
  return 1.0 / (1.0 + std::exp(log_ratio(delta)));
}

std::string WeightFunction::describe() const {
  std::ostringstream out;
  if (is_exponential()) {
    out << "exp:" << base_;
    return out.str();
  }
  out << "table:z_min=" << z_min_ << ",tail_ratio=" << tail_ratio_ << ",logw=[";
  for (std::size_t i = 0; i < table_.size(); ++i) {
    if (i) out << ',';
    out << table_[i];
  }
  out << ']';
  return out.str();
}

WeightValidation validate_weight(const WeightFunction& w, std::int64_t range) {
  WeightValidation result;
  for (std::int64_t z = -range; z < range; ++z) {
    if (w.log_weight(z + 1) < w.log_weight(z)) {
      result.ok = false;
      result.first_violation = z;
      result.message = "w is decreasing between z=" + std::to_string(z) + " and z=" +
                       std::to_string(z + 1);
      return result;
    }
  }
  if (!(w.log_ratio(range) > 0.0)) {
    result.ok = false;
    result.message = "w(z) - w(-z) is not positive at z=" + std::to_string(range) +
                     "; repulsion bias would vanish";
    return result;
  }
  result.strictly_asymmetric_at_one = w.log_ratio(1) > 0.0;
  result.message = "ok";
  return result;
}

WeightFunction random_weight_table(Rng& rng) {
  const int z_max = 2 + static_cast<int>(rng.next_u64() % 5);
  const int z_min = -(2 + static_cast<int>(rng.next_u64() % 5));
  std::map<int, double> values;
  double log_w = -1.0 - 2.0 * rng.uniform01();
  for (int z = z_min; z <= z_max; ++z) {
    log_w += 0.05 + 1.15 * rng.uniform01();
    values[z] = std::exp(log_w);
  }
  const double tail_ratio = std::exp(0.2 + 0.8 * rng.uniform01());
  return WeightFunction::from_table(values, tail_ratio);
}

}  // namespace srw
