#include "srw/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "srw/errors.hpp"

namespace srw {
namespace {

std::string trim(const std::string& s) {
  auto from = s.find_first_not_of(" \t\r");
  if (from == std::string::npos) return "";
  auto to = s.find_last_not_of(" \t\r");
  return s.substr(from, to - from + 1);
}

}  // namespace

RunConfig RunConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  RunConfig config;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto text = trim(line.substr(0, line.find('#')));
    if (text.empty()) continue;
    auto eq = text.find('=');
    if (eq == std::string::npos)
      throw ConfigError(path + ":" + std::to_string(line_no) +
                        ": expected 'key = value'");
    auto key = trim(text.substr(0, eq));
    auto value = trim(text.substr(eq + 1));
    if (key.empty())
      throw ConfigError(path + ":" + std::to_string(line_no) + ": empty key");
    config.set(key, value);
  }
  if (config.get_int_or("schema_version", kSchemaVersion) != kSchemaVersion)
    throw ConfigError(path + ": unsupported schema_version " +
                      config.get("schema_version"));
  config.set_int("schema_version", kSchemaVersion);
  return config;
}

void RunConfig::set(const std::string& key, const std::string& value) {
  entries_[key] = value;
}

void RunConfig::set_int(const std::string& key, std::int64_t value) {
  entries_[key] = std::to_string(value);
}

void RunConfig::set_double(const std::string& key, double value) {
  std::ostringstream out;
  out.precision(17);
  out << value;
  entries_[key] = out.str();
}

std::string RunConfig::get(const std::string& key) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) throw ConfigError("missing config key: " + key);
  return it->second;
}

std::int64_t RunConfig::get_int(const std::string& key) const {
  auto text = get(key);
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size())
    throw ConfigError("config key " + key + " is not an integer: " + text);
  return value;
}

double RunConfig::get_double(const std::string& key) const {
  auto text = get(key);
  try {
    std::size_t used = 0;
    double value = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return value;
  } catch (const std::exception&) {
    throw ConfigError("config key " + key + " is not a number: " + text);
  }
}

std::string RunConfig::get_or(const std::string& key, const std::string& fallback) const {
  return has(key) ? get(key) : fallback;
}

std::int64_t RunConfig::get_int_or(const std::string& key, std::int64_t fallback) const {
  return has(key) ? get_int(key) : fallback;
}

double RunConfig::get_double_or(const std::string& key, double fallback) const {
  return has(key) ? get_double(key) : fallback;
}

std::string RunConfig::serialize() const {
  std::ostringstream out;
  for (const auto& [key, value] : entries_) out << key << " = " << value << "\n";
  return out.str();
}

std::uint64_t RunConfig::hash() const {
  // FNV-1a, 64-bit.
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : serialize()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

void RunConfig::write_file(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write config file: " + path);
  out << serialize();
}

}  // namespace srw
