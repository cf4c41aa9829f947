#pragma once

#include <stdexcept>
#include <string>

namespace aimh {

// Base class for every error the library raises.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A proposal kernel could not produce a draw (envelope violated, rejection
// loop exhausted, ...). The iteration is aborted, never retried.
class SamplingError : public Error {
 public:
  using Error::Error;
};

// The target (or the simulator behind it) failed to evaluate a point.
class EvaluationError : public Error {
 public:
  using Error::Error;
};

// Bad configuration text or parameter values.
class ConfigError : public Error {
 public:
  ConfigError(const std::string& key, int line, const std::string& message)
      : Error(format(key, line, message)), key_(key), line_(line) {}
  explicit ConfigError(const std::string& message) : Error(message), line_(-1) {}

  const std::string& key() const { return key_; }
  int line() const { return line_; }

 private:
  static std::string format(const std::string& key, int line, const std::string& message) {
    std::string out;
    if (line >= 0) out += "line " + std::to_string(line) + ": ";
    if (!key.empty()) out += "key '" + key + "': ";
    return out + message;
  }

  std::string key_;
  int line_;
};

}  // namespace aimh
