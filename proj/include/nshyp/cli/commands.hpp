#pragma once

#include <iosfwd>
#include <string>

#include "json.hpp"
#include "nshyp/core/profile.hpp"
#include "nshyp/errors.hpp"

namespace nshyp::cli {

enum ExitCode : int {
  exit_ok = 0,
  exit_config = 2,
  exit_numerical = 3,
  exit_disagreement = 4,
};

/// Malformed or inconsistent run configuration.
class ConfigError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Profile from the "profile" section: either
///   {"components": ["expr", ...], "domain": [lo, hi], "periodic": bool}
/// with expressions in x (derivatives taken symbolically), or
///   {"file": "table.csv", "periodic": bool}
/// with columns x, V_1..V_n and optionally V_1'..V_n'. Relative file paths
/// are resolved against base_dir.
InitialProfile profile_from_json(const nlohmann::json& section, int n,
                                 const std::string& base_dir = ".");

nlohmann::json models_catalog();

/// Validates and runs one configuration document. Reports go to the paths in
/// its "output" section, or to `out` when none is given; diagnostics go to
/// `err`. Returns an ExitCode.
int run_config(const nlohmann::json& config, std::ostream& out,
               std::ostream& err, const std::string& base_dir = ".");

/// Reads a JSON config file and runs it; relative paths inside the config
/// resolve against the file's directory.
int run_config_file(const std::string& path, std::ostream& out,
                    std::ostream& err);

}  // namespace nshyp::cli
