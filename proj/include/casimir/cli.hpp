#pragma once

// Command-line front end: configuration layering, the four subcommands and
// CSV emission.

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "casimir/core_model.hpp"
#include "casimir/oscillatory.hpp"

namespace casimir {

struct RunConfig {
  double omega0 = 1.0;
  double alpha0 = 1.0;
  UnitSystem units = UnitSystem::LightUnits;
  double r = 1.0;
  double r0 = kInfinity;
  double tau = 0.0;
  /// min:max:n:log|lin
  std::string r_grid = "0.01:100:41:log";
  /// min:max:n
  std::string tau_grid = "0:12000:200";
  std::string trajectory;
  std::string out;
  double kmax = 1e9;
  double tol = 1e-6;
  std::string preset;
  /// transient: sweep r at fixed tau instead of tau at fixed r
  bool snapshot = false;
  /// test hook for the verify failure path
  double verify_tol_scale = 1.0;

  AtomParams params() const;
  QuadratureConfig quadrature() const;
};

/// key -> (value, origin). Origin is "file:line" or "--flag" for diagnostics.
struct SettingEntry {
  std::string value;
  std::string origin;
};
using Settings = std::map<std::string, SettingEntry>;

/// Recognised keys, identical to the long flag names without dashes.
const std::vector<std::string>& config_keys();

/// key = value lines, '#' comments, blank lines ignored. Unknown keys and
/// malformed lines throw ConfigError with "source:line:".
Settings parse_config_text(std::istream& in, const std::string& source);
Settings load_config_file(const std::string& path);

/// defaults < preset < config file < flags. The preset itself comes from the
/// flags if given there, otherwise from the file.
RunConfig resolve_config(const Settings& file, const Settings& flags);

/// "min:max:n:log" or "min:max:n:lin" (scale defaults to lin).
std::vector<double> parse_r_grid(const std::string& spec);
/// "min:max:n", n >= 1, linear.
std::vector<double> parse_tau_grid(const std::string& spec);

/// '#' header: version, command and every resolved setting.
std::string csv_header(const std::string& command, const RunConfig& cfg);
/// %.17g
std::string format_number(double x);

void cmd_stationary(const RunConfig& cfg, std::ostream& out);
void cmd_transient(const RunConfig& cfg, std::ostream& out);
void cmd_adiabatic(const RunConfig& cfg, std::ostream& out);
/// Human-readable report; returns true when every check passed.
bool cmd_verify(const RunConfig& cfg, std::ostream& out);

/// Full entry point. Exit codes: 0 success, 1 usage or configuration error,
/// 2 numerical non-convergence, 3 verification failure.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

const char* artifact_version();

}  // namespace casimir
