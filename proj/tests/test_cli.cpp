#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "casimir/adiabatic.hpp"
#include "casimir/cli.hpp"
#include "casimir/errors.hpp"
#include "casimir/steady_state.hpp"

using namespace casimir;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  args.insert(args.begin(), "casimir");
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> data_rows(const std::string& csv) {
  std::vector<std::string> rows;
  std::istringstream in(csv);
  std::string line;
  bool header = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header) {
      header = true;
      continue;
    }
    rows.push_back(line);
  }
  return rows;
}

std::vector<double> fields(const std::string& row) {
  std::vector<double> v;
  std::istringstream in(row);
  std::string cell;
  while (std::getline(in, cell, ',')) {
    try {
      v.push_back(std::stod(cell));
    } catch (const std::exception&) {
      v.push_back(0.0);
    }
  }
  return v;
}

std::filesystem::path temp_file(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << text;
  return path;
}

}  // namespace

TEST(Config, ParsesKeyValueLines) {
  std::istringstream in("# comment\n\nomega0 = 2.5\nr-grid=1:2:3:lin\n");
  const Settings s = parse_config_text(in, "a.cfg");
  EXPECT_EQ(s.at("omega0").value, "2.5");
  EXPECT_EQ(s.at("omega0").origin, "a.cfg:3");
  EXPECT_EQ(s.at("r-grid").value, "1:2:3:lin");
}

TEST(Config, UnknownKeyNamesTheLine) {
  std::istringstream in("omega0 = 1\nomega = 2\n");
  try {
    parse_config_text(in, "a.cfg");
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("a.cfg:2"), std::string::npos) << e.what();
  }
  std::istringstream noeq("omega0 2\n");
  EXPECT_THROW(parse_config_text(noeq, "b.cfg"), ConfigError);
}

TEST(Config, Precedence) {
  const Settings file = {{"omega0", {"2", "f:1"}}, {"r", {"3", "f:2"}}, {"preset", {"fig1", "f:3"}}};
  const Settings flags = {{"omega0", {"4", "--omega0"}}};
  const RunConfig cfg = resolve_config(file, flags);
  EXPECT_EQ(cfg.omega0, 4.0);
  EXPECT_EQ(cfg.r, 3.0);
  EXPECT_EQ(cfg.preset, "fig1");
  EXPECT_EQ(cfg.alpha0, 1.0);
  const RunConfig fig2 = resolve_config({}, {{"preset", {"fig2", "--preset"}}});
  EXPECT_TRUE(fig2.snapshot);
  EXPECT_EQ(fig2.tau, 6000.0);
  EXPECT_THROW(resolve_config({}, {{"r", {"abc", "--r"}}}), ConfigError);
  EXPECT_THROW(resolve_config({}, {{"preset", {"fig3", "--preset"}}}), ConfigError);
}

TEST(Grids, Parsing) {
  const auto lg = parse_r_grid("0.01:100:5:log");
  ASSERT_EQ(lg.size(), 5u);
  EXPECT_DOUBLE_EQ(lg[2], 1.0);
  EXPECT_EQ(lg.back(), 100.0);
  EXPECT_EQ(parse_r_grid("1:3:3").at(1), 2.0);
  EXPECT_EQ(parse_tau_grid("0:10:1").size(), 1u);
  EXPECT_THROW(parse_r_grid("1:2:0:log"), ConfigError);
  EXPECT_THROW(parse_r_grid("0:2:3:log"), ConfigError);
  EXPECT_THROW(parse_tau_grid("0:10:0"), ConfigError);
  EXPECT_THROW(parse_tau_grid("0:10"), ConfigError);
}

TEST(Cli, StationarySinglePointMatchesLibrary) {
  const CliRun r = run({"stationary", "--r-grid", "1:1:1"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = data_rows(r.out);
  ASSERT_EQ(rows.size(), 1u);
  const auto v = fields(rows[0]);
  const AtomParams p = make_atom_params(1.0, 1.0, 1.0);
  EXPECT_EQ(v[1], stationary_potential(1.0, p).u);
  EXPECT_EQ(v[4], stationary_total_force(1.0, p).f_z);
  EXPECT_NE(r.out.find("# command=stationary"), std::string::npos);
}

TEST(Cli, FarFieldRowsFollowInverseFifthPower) {
  const CliRun r = run({"stationary", "--r-grid", "1000:10000:2:log"});
  ASSERT_EQ(r.code, 0) << r.err;
  for (const std::string& row : data_rows(r.out)) {
    const auto v = fields(row);
    const double far = -3.0 / (8.0 * 3.141592653589793) * 4.0 / std::pow(v[0], 5);
    EXPECT_NEAR(v[4], far, 2e-3 * std::abs(far));
    EXPECT_NE(row.find("far"), std::string::npos);
  }
}

TEST(Cli, OutputIsDeterministic) {
  const CliRun a = run({"stationary", "--r-grid", "0.1:10:7:log"});
  const CliRun b = run({"stationary", "--r-grid", "0.1:10:7:log"});
  EXPECT_EQ(a.out, b.out);
  const auto path = std::filesystem::temp_directory_path() / "casimir_cli_out.csv";
  const CliRun c = run({"stationary", "--r-grid", "0.1:10:7:log", "--out", path.string()});
  ASSERT_EQ(c.code, 0);
  EXPECT_TRUE(c.out.empty());
  std::ifstream in(path, std::ios::binary);
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  EXPECT_EQ(text, a.out);
  std::filesystem::remove(path);
}

TEST(Cli, AdiabaticRatios) {
  const CliRun far = run({"adiabatic", "--r-grid", "0.5:5:3:log"});
  ASSERT_EQ(far.code, 0) << far.err;
  for (const std::string& row : data_rows(far.out)) EXPECT_NEAR(fields(row)[4], 2.0, 1e-12);
  const CliRun here = run({"adiabatic", "--r-grid", "2:2:1", "--r0", "2"});
  ASSERT_EQ(here.code, 0) << here.err;
  EXPECT_NEAR(fields(data_rows(here.out).at(0))[4], 1.0, 1e-15);
}

TEST(Cli, TrajectoryReport) {
  std::ostringstream text;
  text.precision(17);
  for (const TrajectorySample& s : cosine_trajectory(200.0, 0.5, 100.0, 2000).samples) {
    text << s.t << ' ' << s.r << ' ' << s.v << '\n';
  }
  const auto path = temp_file("casimir_cli_traj.txt", text.str());
  const CliRun r = run({"adiabatic", "--trajectory", path.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = data_rows(r.out);
  ASSERT_EQ(rows.size(), 3u);
  for (const std::string& row : rows) {
    const auto v = fields(row);
    EXPECT_NEAR(v[1], v[2], 1e-6 * std::abs(v[2]));
  }
  EXPECT_NE(r.out.find("# series_sum"), std::string::npos);
  std::filesystem::remove(path);
}

TEST(Cli, InvalidTrajectoryNamesTheSample) {
  std::vector<TrajectorySample> s = cosine_trajectory(2.0, 1.0, 10.0, 2000).samples;
  s[37].v *= 1.5;
  std::ostringstream text;
  text.precision(17);
  for (const TrajectorySample& x : s) text << x.t << ' ' << x.r << ' ' << x.v << '\n';
  const auto path = temp_file("casimir_cli_bad.txt", text.str());
  const CliRun r = run({"adiabatic", "--trajectory", path.string()});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("37"), std::string::npos) << r.err;
  std::filesystem::remove(path);
}

TEST(Cli, ErrorExitCodes) {
  EXPECT_EQ(run({"transient", "--tau-grid", "0:10:0"}).code, 1);
  EXPECT_EQ(run({"stationary", "--bogus", "1"}).code, 1);
  EXPECT_EQ(run({"stationary", "--config", "/nonexistent/casimir.cfg"}).code, 1);
  EXPECT_EQ(run({"stationary", "--r-grid", "0:1:3"}).code, 1);
  EXPECT_EQ(run({"transient", "--r", "1", "--tau-grid", "2:2:1"}).code, 2);
  EXPECT_EQ(run({}).code, 1);
}

TEST(Cli, ConfigFileAndFlagLayering) {
  const auto path = temp_file("casimir_cli.cfg", "r-grid = 1:1:1\nomega0 = 2\n");
  const CliRun r = run({"stationary", "--config", path.string(), "--omega0", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("# omega0=3\n"), std::string::npos);
  EXPECT_NE(r.out.find("# r-grid=1:1:1\n"), std::string::npos);
  const auto bad = temp_file("casimir_cli_bad.cfg", "r-grid = 1:1:1\nfrequency = 2\n");
  const CliRun b = run({"stationary", "--config", bad.string()});
  EXPECT_EQ(b.code, 1);
  EXPECT_NE(b.err.find(":2:"), std::string::npos) << b.err;
  std::filesystem::remove(path);
  std::filesystem::remove(bad);
}

TEST(Cli, PresetsAppearInHeader) {
  const CliRun r = run({"transient", "--preset", "fig1", "--tau-grid", "0:100:2"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("# preset=fig1"), std::string::npos);
  EXPECT_NE(r.out.find("# r=3000"), std::string::npos);
  EXPECT_EQ(data_rows(r.out).size(), 2u);
  const CliRun s = run({"transient", "--preset", "fig2", "--r-grid", "2000:2100:2:lin"});
  ASSERT_EQ(s.code, 0) << s.err;
  EXPECT_NE(s.out.find("r,coeff_total,coeff_retardation,abs_error"), std::string::npos);
  EXPECT_NE(s.out.find("# snapshot=true"), std::string::npos);
}

TEST(Cli, VerifyFailsWithCorruptedTolerance) {
  const CliRun r = run({"verify", "--verify-tol-scale", "1e-30"});
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.out.find("[FAIL]"), std::string::npos);
}
