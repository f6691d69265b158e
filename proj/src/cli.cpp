#include "casimir/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "casimir/adiabatic.hpp"
#include "casimir/errors.hpp"
#include "casimir/steady_state.hpp"
#include "casimir/transient.hpp"
#include "casimir/verification.hpp"

#ifndef CASIMIR_VERSION
#define CASIMIR_VERSION "0.0.0"
#endif

namespace casimir {

namespace {

constexpr int kSeriesOrder = 6;

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& text, const std::string& what) {
  const std::string t = trim(text);
  double v = 0.0;
  const char* first = t.data();
  const char* last = t.data() + t.size();
  if (!t.empty() && *first == '+') ++first;
  const auto res = std::from_chars(first, last, v);
  if (t.empty() || res.ec != std::errc() || res.ptr != last) {
    throw ConfigError(what + ": not a number: '" + text + "'");
  }
  return v;
}

int parse_count(const std::string& text, const std::string& what) {
  const std::string t = trim(text);
  int v = 0;
  const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || res.ec != std::errc() || res.ptr != t.data() + t.size()) {
    throw ConfigError(what + ": not an integer: '" + text + "'");
  }
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

bool parse_bool(const std::string& text, const std::string& what) {
  const std::string t = trim(text);
  if (t == "true" || t == "1" || t == "yes") return true;
  if (t == "false" || t == "0" || t == "no") return false;
  throw ConfigError(what + ": expected true or false, got '" + text + "'");
}

void apply_preset(RunConfig& cfg, const std::string& name, const std::string& origin) {
  if (name.empty()) return;
  if (name != "fig1" && name != "fig2") {
    throw ConfigError(origin + ": unknown preset '" + name + "' (fig1|fig2)");
  }
  const AtomParams fp = figure_params();
  cfg.preset = name;
  cfg.units = UnitSystem::LightUnits;
  cfg.omega0 = fp.omega0;
  cfg.alpha0 = fp.alpha0;
  cfg.r = 3000.0;
  cfg.tau_grid = "0:12000:200";
  if (name == "fig2") {
    cfg.tau = 6000.0;
    // 40 points keep every row off the pole at r = c tau / 2
    cfg.r_grid = "2000:4000:40:lin";
    cfg.snapshot = true;
  }
}

void apply_setting(RunConfig& cfg, const std::string& key, const SettingEntry& e) {
  const std::string what = e.origin + ": " + key;
  const std::string v = trim(e.value);
  if (key == "omega0") {
    cfg.omega0 = parse_double(v, what);
  } else if (key == "alpha0") {
    cfg.alpha0 = parse_double(v, what);
  } else if (key == "units") {
    if (v == "c1") {
      cfg.units = UnitSystem::LightUnits;
    } else if (v == "atomic") {
      cfg.units = UnitSystem::Atomic;
    } else {
      throw ConfigError(what + ": expected c1 or atomic, got '" + v + "'");
    }
  } else if (key == "r") {
    cfg.r = parse_double(v, what);
  } else if (key == "r0") {
    cfg.r0 = parse_double(v, what);
  } else if (key == "tau") {
    cfg.tau = parse_double(v, what);
  } else if (key == "r-grid" || key == "tau-grid") {
    try {
      key == "r-grid" ? parse_r_grid(v) : parse_tau_grid(v);
    } catch (const ConfigError& ex) {
      throw ConfigError(e.origin + ": " + ex.what());
    }
    (key == "r-grid" ? cfg.r_grid : cfg.tau_grid) = v;
  } else if (key == "trajectory") {
    cfg.trajectory = v;
  } else if (key == "out") {
    cfg.out = v;
  } else if (key == "kmax") {
    cfg.kmax = parse_double(v, what);
  } else if (key == "tol") {
    cfg.tol = parse_double(v, what);
  } else if (key == "preset") {
    // handled before the other layers
  } else if (key == "snapshot") {
    cfg.snapshot = parse_bool(v, what);
  } else if (key == "verify-tol-scale") {
    cfg.verify_tol_scale = parse_double(v, what);
  } else {
    throw ConfigError(e.origin + ": unknown key '" + key + "'");
  }
}

std::string units_name(UnitSystem u) { return u == UnitSystem::Atomic ? "atomic" : "c1"; }

void write_row(std::ostream& out, std::initializer_list<std::string> cells) {
  bool first = true;
  for (const std::string& c : cells) {
    if (!first) out << ',';
    out << c;
    first = false;
  }
  out << '\n';
}

}  // namespace

const char* artifact_version() { return CASIMIR_VERSION; }

AtomParams RunConfig::params() const {
  return make_atom_params(omega0, alpha0, speed_of_light(units));
}

QuadratureConfig RunConfig::quadrature() const {
  QuadratureConfig q;
  q.k_max = kmax;
  q.rel_tol = tol;
  validate(q);
  return q;
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = {
      "omega0", "alpha0", "units",   "r",    "r0",     "tau",      "r-grid",          "tau-grid",
      "trajectory", "out", "kmax", "tol", "preset", "snapshot", "verify-tol-scale"};
  return keys;
}

Settings parse_config_text(std::istream& in, const std::string& source) {
  Settings s;
  std::string line;
  int lineno = 0;
  const auto& keys = config_keys();
  while (std::getline(in, line)) {
    ++lineno;
    const std::string origin = source + ":" + std::to_string(lineno);
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(origin + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
      throw ConfigError(origin + ": unknown key '" + key + "'");
    }
    if (value.empty()) throw ConfigError(origin + ": empty value for '" + key + "'");
    s[key] = {value, origin};
  }
  return s;
}

Settings load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  return parse_config_text(in, path);
}

RunConfig resolve_config(const Settings& file, const Settings& flags) {
  RunConfig cfg;
  if (auto it = flags.find("preset"); it != flags.end()) {
    apply_preset(cfg, trim(it->second.value), it->second.origin);
  } else if (auto jt = file.find("preset"); jt != file.end()) {
    apply_preset(cfg, trim(jt->second.value), jt->second.origin);
  }
  for (const auto& [k, e] : file) apply_setting(cfg, k, e);
  for (const auto& [k, e] : flags) apply_setting(cfg, k, e);
  return cfg;
}

std::vector<double> parse_r_grid(const std::string& spec) {
  const auto parts = split(spec, ':');
  if (parts.size() != 3 && parts.size() != 4) {
    throw ConfigError("r-grid must be min:max:n[:log|lin], got '" + spec + "'");
  }
  const double lo = parse_double(parts[0], "r-grid min");
  const double hi = parse_double(parts[1], "r-grid max");
  const int n = parse_count(parts[2], "r-grid n");
  const std::string scale = parts.size() == 4 ? trim(parts[3]) : "lin";
  if (scale != "log" && scale != "lin") throw ConfigError("r-grid scale must be log or lin");
  if (n < 1) throw ConfigError("r-grid is empty");
  if (!(lo > 0.0) || !(hi >= lo) || !std::isfinite(hi)) {
    throw ConfigError("r-grid needs 0 < min <= max");
  }
  if (n > 1 && !(hi > lo)) throw ConfigError("r-grid with n > 1 needs min < max");
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) {
    const double x = n == 1 ? 0.0 : double(i) / (n - 1);
    g[i] = scale == "log" ? lo * std::pow(hi / lo, x) : lo + (hi - lo) * x;
  }
  if (n > 1) g.back() = hi;
  return g;
}

std::vector<double> parse_tau_grid(const std::string& spec) {
  const auto parts = split(spec, ':');
  if (parts.size() != 3) throw ConfigError("tau-grid must be min:max:n, got '" + spec + "'");
  const double lo = parse_double(parts[0], "tau-grid min");
  const double hi = parse_double(parts[1], "tau-grid max");
  const int n = parse_count(parts[2], "tau-grid n");
  if (n < 1) throw ConfigError("tau-grid is empty");
  if (!(lo >= 0.0) || !(hi >= lo) || !std::isfinite(hi)) {
    throw ConfigError("tau-grid needs 0 <= min <= max");
  }
  if (n > 1 && !(hi > lo)) throw ConfigError("tau-grid with n > 1 needs min < max");
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) g[i] = n == 1 ? lo : lo + (hi - lo) * double(i) / (n - 1);
  if (n > 1) g.back() = hi;
  return g;
}

std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string csv_header(const std::string& command, const RunConfig& cfg) {
  std::ostringstream h;
  h << "# casimir " << artifact_version() << '\n';
  h << "# command=" << command << '\n';
  h << "# omega0=" << format_number(cfg.omega0) << '\n';
  h << "# alpha0=" << format_number(cfg.alpha0) << '\n';
  h << "# units=" << units_name(cfg.units) << '\n';
  h << "# c=" << format_number(speed_of_light(cfg.units)) << '\n';
  h << "# r=" << format_number(cfg.r) << '\n';
  h << "# r0=" << format_number(cfg.r0) << '\n';
  h << "# tau=" << format_number(cfg.tau) << '\n';
  h << "# r-grid=" << cfg.r_grid << '\n';
  h << "# tau-grid=" << cfg.tau_grid << '\n';
  h << "# trajectory=" << cfg.trajectory << '\n';
  h << "# kmax=" << format_number(cfg.kmax) << '\n';
  h << "# tol=" << format_number(cfg.tol) << '\n';
  h << "# preset=" << cfg.preset << '\n';
  h << "# snapshot=" << (cfg.snapshot ? "true" : "false") << '\n';
  return h.str();
}

void cmd_stationary(const RunConfig& cfg, std::ostream& out) {
  const AtomParams p = cfg.params();
  const std::vector<double> grid = parse_r_grid(cfg.r_grid);
  out << csv_header("stationary", cfg);
  out << "r,u_stationary,f_electrostatic,f_retardation,f_total,abs_error,regime\n";
  for (double r : grid) {
    const PotentialValue u = stationary_potential(r, p);
    const ForceValue el = electrostatic_force(r, p);
    const ForceValue ret = stationary_retardation_force(r, p);
    const ForceValue tot = stationary_total_force(r, p);
    write_row(out, {format_number(r), format_number(u.u), format_number(el.f_z),
                    format_number(ret.f_z), format_number(tot.f_z),
                    format_number(tot.abs_error_estimate), regime_name(tot.regime)});
  }
}

void cmd_transient(const RunConfig& cfg, std::ostream& out) {
  const AtomParams p = cfg.params();
  const QuadratureConfig q = cfg.quadrature();
  if (cfg.snapshot) {
    const std::vector<double> grid = parse_r_grid(cfg.r_grid);
    const auto rows = snapshot_sweep(cfg.tau, grid, p, q);
    out << csv_header("transient", cfg);
    out << "r,coeff_total,coeff_retardation,abs_error\n";
    for (const SnapshotRow& row : rows) {
      write_row(out, {format_number(row.r), format_number(row.coeff_total),
                      format_number(row.coeff_retardation), format_number(row.abs_error)});
    }
    return;
  }
  const std::vector<double> grid = parse_tau_grid(cfg.tau_grid);
  const TransientCurve curve = transient_sweep(cfg.r, grid, p, q);
  out << csv_header("transient", cfg);
  out << "tau,f_z,abs_error\n";
  for (const TransientSample& s : curve.samples) {
    write_row(out, {format_number(s.tau), format_number(s.f_z), format_number(s.abs_error)});
  }
}

void cmd_adiabatic(const RunConfig& cfg, std::ostream& out) {
  const AtomParams p = cfg.params();
  if (!cfg.trajectory.empty()) {
    const QuadratureConfig q = cfg.quadrature();
    const Trajectory traj = load_trajectory(cfg.trajectory);
    const auto terms = series_terms_nested(3, traj, p, q);
    const double rs = traj.r_start();
    const double re = traj.r_end();
    const std::vector<double> d0 = retardation_force_derivs(rs, 2, p);
    const double fe = stationary_retardation_force(re, p).f_z;
    const double df = fe - d0[0];
    out << csv_header("adiabatic", cfg);
    out << "n,nested_term,half_power_difference,taylor_remainder_form,abs_error\n";
    for (int n = 1; n <= 3; ++n) {
      double taylor = fe;
      double fact = 1.0;
      for (int j = 0; j < n; ++j) {
        if (j > 0) fact *= j;
        taylor -= d0[j] * std::pow(re - rs, j) / fact;
      }
      write_row(out, {std::to_string(n), format_number(terms[n - 1].value),
                      format_number(std::ldexp(df, -n)), format_number(std::ldexp(taylor, -n)),
                      format_number(terms[n - 1].abs_error)});
    }
    const SeriesSum s = series_sum(traj, kSeriesOrder, p, q);
    const double closed = 2.0 * fe - d0[0];
    const double gap = std::abs(s.value - closed);
    out << "# series_sum n_max=" << kSeriesOrder << " value=" << format_number(s.value)
        << " closed_form=" << format_number(closed) << '\n';
    out << "# gap=" << format_number(gap) << " remainder_bound=" << format_number(s.remainder_bound)
        << " abs_error=" << format_number(s.abs_error)
        << " bracketed=" << (gap <= s.remainder_bound + s.abs_error ? "yes" : "no") << '\n';
    return;
  }
  const std::vector<double> grid = parse_r_grid(cfg.r_grid);
  out << csv_header("adiabatic", cfg);
  out << "r,f_adiabatic_retardation,f_total,u_adiabatic,ratio_to_stationary\n";
  for (double r : grid) {
    const ForceValue ar = adiabatic_retardation_force(r, cfg.r0, p);
    const ForceValue tot = adiabatic_total_force(r, cfg.r0, p);
    const PotentialValue u = adiabatic_potential(r, cfg.r0, p);
    const double ratio = ar.f_z / stationary_retardation_force(r, p).f_z;
    write_row(out, {format_number(r), format_number(ar.f_z), format_number(tot.f_z),
                    format_number(u.u), format_number(ratio)});
  }
}

bool cmd_verify(const RunConfig& cfg, std::ostream& out) {
  VerifyOptions opt;
  opt.tolerance_scale = cfg.verify_tol_scale;
  out << "casimir " << artifact_version() << " verification\n";
  const std::vector<CheckResult> results = run_verify_suite(opt);
  int passed = 0;
  for (const CheckResult& r : results) {
    char t[32];
    std::snprintf(t, sizeof t, "%.2f", r.seconds);
    out << (r.passed ? "[PASS] " : "[FAIL] ") << r.id << ' ' << r.name << ": " << r.detail << " ("
        << t << " s)\n";
    if (r.passed) ++passed;
  }
  const CheckResult diag = nested_near_release_diagnostic();
  out << "[INFO] " << diag.name << ": " << diag.detail << '\n';
  out << passed << '/' << results.size() << " checks passed\n";
  return passed == static_cast<int>(results.size());
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Atom-wall force calculator", "casimir"};
  app.require_subcommand(1, 1);
  app.fallthrough();

  std::string config_path;
  app.add_option("--config", config_path, "key=value configuration file");
  std::map<std::string, std::string> values;
  const std::vector<std::pair<std::string, std::string>> valued = {
      {"omega0", "transition frequency"},
      {"alpha0", "static polarizability"},
      {"units", "c1 or atomic"},
      {"r", "distance to the wall"},
      {"r0", "release distance, number or inf"},
      {"tau", "time since switch-on"},
      {"r-grid", "min:max:n:log|lin"},
      {"tau-grid", "min:max:n"},
      {"trajectory", "trajectory file with t r v columns"},
      {"out", "output file (default stdout)"},
      {"kmax", "wave-number cutoff in units of omega0/c"},
      {"tol", "relative tolerance of oscillatory integrals"},
      {"preset", "fig1 or fig2"}};
  for (const auto& [key, help] : valued) app.add_option("--" + key, values[key], help);
  bool snapshot = false;
  app.add_flag("--snapshot", snapshot, "transient: sweep r at fixed tau");
  app.add_option("--verify-tol-scale", values["verify-tol-scale"])->group("");

  app.add_subcommand("stationary", "stationary potential and forces on an r-grid");
  app.add_subcommand("transient", "force after sudden switch-on");
  app.add_subcommand("adiabatic", "slowly moving atom released at r0");
  app.add_subcommand("verify", "run the built-in oracle checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }
  const std::string command = app.get_subcommands().front()->get_name();

  try {
    Settings flags;
    for (const auto& [key, help] : valued) {
      if (app.count("--" + key) > 0) flags[key] = {values[key], "--" + key};
    }
    if (app.count("--verify-tol-scale") > 0) {
      flags["verify-tol-scale"] = {values["verify-tol-scale"], "--verify-tol-scale"};
    }
    if (snapshot) flags["snapshot"] = {"true", "--snapshot"};
    const Settings file = config_path.empty() ? Settings{} : load_config_file(config_path);
    const RunConfig cfg = resolve_config(file, flags);

    std::ostringstream buffer;
    bool ok = true;
    if (command == "stationary") {
      cmd_stationary(cfg, buffer);
    } else if (command == "transient") {
      cmd_transient(cfg, buffer);
    } else if (command == "adiabatic") {
      cmd_adiabatic(cfg, buffer);
    } else {
      ok = cmd_verify(cfg, buffer);
    }
    if (cfg.out.empty()) {
      out << buffer.str();
    } else {
      std::ofstream f(cfg.out, std::ios::binary);
      if (!f) throw ConfigError("cannot open output file '" + cfg.out + "'");
      f << buffer.str();
      if (!f) throw ConfigError("failed writing '" + cfg.out + "'");
    }
    return ok ? 0 : 3;
  } catch (const ConvergenceError& e) {
    err << "casimir: numerical non-convergence: " << e.what() << '\n';
    return 2;
  } catch (const std::overflow_error& e) {
    err << "casimir: numerical overflow: " << e.what() << '\n';
    return 2;
  } catch (const ConfigError& e) {
    err << "casimir: " << e.what() << '\n';
    return 1;
  } catch (const ValidationError& e) {
    err << "casimir: invalid trajectory: " << e.what() << '\n';
    return 1;
  } catch (const DomainError& e) {
    err << "casimir: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "casimir: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace casimir
