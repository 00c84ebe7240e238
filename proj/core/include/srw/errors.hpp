#pragma once

#include <stdexcept>
#include <string>

namespace srw {

// Bad user input: malformed config, invalid weight table, nonsense flags.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// A simulation hit its step / iteration cap before reaching its target.
// Callers must treat this as a hard failure, never as "close enough".
class CapExceeded : public std::runtime_error {
 public:
  explicit CapExceeded(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace srw
