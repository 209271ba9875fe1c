#pragma once

#include <istream>
#include <string>

#include "dustsqp/sqp.hpp"

namespace dustsqp {

/**
 * Flat `key=value` configuration. Keys are SolverConfig field names,
 * `#` starts a comment, blank lines are ignored and missing keys keep
 * their defaults. Errors are reported as ConfigError with the line number.
 */
SolverConfig parse_config(std::istream& in, SolverConfig base = {});
SolverConfig load_config(const std::string& path, SolverConfig base = {});

/// Sets one field; throws ConfigError on unknown keys or bad values.
void apply_setting(SolverConfig& config, const std::string& key,
                   const std::string& value);

/// Applies a `key=value` string.
void apply_assignment(SolverConfig& config, const std::string& assignment);

}  // namespace dustsqp
