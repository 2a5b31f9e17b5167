#pragma once

#include <string>

#include "ffsim/simulation.hpp"

namespace ffsim {

/// JSON text could not be parsed; the message carries line and column.
class ConfigParseError : public ConfigError {
 public:
  ConfigParseError(const std::string& what, int line, int column)
      : ConfigError(what), line_(line), column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

/// Parses and validates a configuration. Missing keys keep their defaults,
/// unknown keys and type mismatches are collected and reported together.
SimulationConfig parse_config(const std::string& text, const std::string& source = "<string>");

SimulationConfig load_config(const std::string& path);

/// Full configuration as pretty-printed JSON (every key written).
std::string config_to_json(const SimulationConfig& config);

void save_config(const SimulationConfig& config, const std::string& path);

}  // namespace ffsim
