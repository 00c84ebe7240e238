#pragma once

#include <cstdint>
#include <map>
#include <string>

namespace srw {

// Flat key=value run configuration. Files hold one "key = value" per line
// with '#' comments; keys are free-form strings owned by the tools. The
// canonical serialization (sorted keys) feeds a stable hash that output files
// embed, so any result can be traced back to the exact settings.
class RunConfig {
 public:
  static constexpr int kSchemaVersion = 1;

  RunConfig() { set_int("schema_version", kSchemaVersion); }

  // Throws ConfigError on malformed lines or a schema_version mismatch.
  static RunConfig from_file(const std::string& path);

  void set(const std::string& key, const std::string& value);
  void set_int(const std::string& key, std::int64_t value);
  void set_double(const std::string& key, double value);

  bool has(const std::string& key) const { return entries_.count(key) > 0; }
  // Getters throw ConfigError when the key is missing or fails to parse.
  std::string get(const std::string& key) const;
  std::int64_t get_int(const std::string& key) const;
  double get_double(const std::string& key) const;
  // Defaulted variants for optional keys.
  std::string get_or(const std::string& key, const std::string& fallback) const;
  std::int64_t get_int_or(const std::string& key, std::int64_t fallback) const;
  double get_double_or(const std::string& key, double fallback) const;

  const std::map<std::string, std::string>& entries() const { return entries_; }
  void erase(const std::string& key) { entries_.erase(key); }

  std::string serialize() const;  // canonical "key = value" lines, sorted
  std::uint64_t hash() const;     // FNV-1a over serialize()
  void write_file(const std::string& path) const;

 private:
  std::map<std::string, std::string> entries_;
};

}  // namespace srw
