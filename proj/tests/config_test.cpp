// Copyright 2026 The mmqed Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "mmqed/config.hpp"

namespace mmqed {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string error_path(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.path();
  }
  return "<no error>";
}

TEST(Config, DefaultsRoundTrip) {
  const RunConfig defaults;
  const RunConfig again = parse_config(to_json(defaults));
  EXPECT_EQ(to_json(again), to_json(defaults));
  EXPECT_EQ(config_hash(again), config_hash(defaults));
  EXPECT_EQ(config_hash(defaults).size(), 16u);
  EXPECT_NO_THROW(defaults.validate());
}

TEST(Config, EmptyDocumentGivesDefaults) {
  EXPECT_EQ(config_hash(parse_config("{}")), config_hash(RunConfig{}));
}

TEST(Config, ShippedProfileMatchesDefaults) {
  const RunConfig shipped = load_config(std::string(MMQED_CONFIG_DIR) + "/reference-device.json");
  EXPECT_EQ(config_hash(shipped), config_hash(RunConfig{}));
}

TEST(Config, ErrorsNameTheField) {
  EXPECT_EQ(error_path(R"({"device": {"gf": 0.1}})"), "device.gf");
  EXPECT_EQ(error_path(R"({"seed": "abc"})"), "seed");
  EXPECT_EQ(error_path(R"({"cz": {"schedule": {"load_ramp": -1}}})"), "cz.schedule.load_ramp");
  EXPECT_EQ(error_path(R"({"device": {"g_f": -0.1}})"), "device.g_f");
  EXPECT_EQ(error_path(R"({"lz_ramp": {"shape": "cubic"}})"), "lz_ramp.shape");
  EXPECT_EQ(error_path(R"({"transmon_q2": {"e_c": 0}})"), "transmon_q2.e_c");
  EXPECT_THROW(parse_config("{not json"), ConfigError);
}

TEST(Config, OverridesApplyDottedPaths) {
  const std::string text = apply_overrides("{}", {"device.g_f=0.12", "lz_ramp.shape=flux-linear", "seed=7",
                                                  "lz_ramp.ramp_times.step=1.0"});
  const RunConfig c = parse_config(text);
  EXPECT_DOUBLE_EQ(c.device.g_f, 0.12);
  EXPECT_EQ(c.lz_ramp.shape, "flux-linear");
  EXPECT_EQ(c.seed, 7u);
  // A partial grid keeps the remaining default bounds.
  EXPECT_DOUBLE_EQ(c.lz_ramp.ramp_times.start, 0.5);
  EXPECT_DOUBLE_EQ(c.lz_ramp.ramp_times.stop, 55.0);
  EXPECT_EQ(c.lz_ramp.ramp_times.points().size(), 55u);
  EXPECT_ANY_THROW(apply_overrides("{}", {"no_equals_sign"}));
}

TEST(Config, HashTracksPhysicsOnly) {
  RunConfig a, b;
  b.output_dir = "elsewhere";
  b.threads = 3;
  EXPECT_EQ(config_hash(a), config_hash(b));
  b.device.g_f = 0.119;
  EXPECT_NE(config_hash(a), config_hash(b));
}

TEST(Config, GridPoints) {
  EXPECT_EQ(Grid::range(0.0, 1.0, 0.25).points(), (std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0}));
  EXPECT_EQ(Grid::list({3.0, 1.0}).points(), (std::vector<double>{3.0, 1.0}));
  EXPECT_EQ(RunConfig{}.stark_ramsey.tau.points().size(), 61u);
}

// ---------------------------------------------------------------- CLI

struct CliRun {
  int status = -1;
  std::string err;
};

CliRun cli(const std::string& args, const fs::path& out) {
  fs::create_directories(out);
  const fs::path err = out / "stderr.txt";
  const std::string cmd = std::string(MMQED_CLI) + " " + args + " --out " + out.string() + " > " +
                          (out / "stdout.txt").string() + " 2> " + err.string();
  const int raw = std::system(cmd.c_str());
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, read_file(err)};
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("mmqed_config_test_" + std::to_string(::getpid())) / name;
  fs::remove_all(p);
  return p;
}

std::vector<std::vector<std::string>> read_csv(const fs::path& p) {
  std::ifstream in(p);
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::stringstream s(line);
    std::string cell;
    while (std::getline(s, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

TEST(Cli, UncoupledSpectroscopyIsLinear) {
  const fs::path out = scratch("spectro");
  const auto r = cli("spectroscopy --set device.g_q1f=0 --set device.g_q2f=0", out);
  ASSERT_EQ(r.status, 0) << r.err;
  const auto rows = read_csv(out / "spectroscopy_band.csv");
  ASSERT_GT(rows.size(), 10u);
  const std::size_t branches = (rows[0].size() - 2) / 2;
  for (std::size_t k = 1; k < rows.size(); ++k) {
    const double nu = std::stod(rows[k][1]);
    std::size_t best = 0;
    for (std::size_t b = 0; b < branches; ++b) {
      if (std::stod(rows[k][2 + branches + b]) > std::stod(rows[k][2 + branches + best])) best = b;
    }
    EXPECT_NEAR(std::stod(rows[k][2 + best]), nu, 1e-9);
  }
  const std::string first = read_file(out / "spectroscopy_band.csv").substr(0, 14);
  EXPECT_EQ(first, "# config_hash=");
  const json manifest = json::parse(read_file(out / "manifest.json"));
  EXPECT_EQ(manifest["command"], "spectroscopy");
  EXPECT_TRUE(manifest["passed"].get<bool>());
}

TEST(Cli, BadConfigExitsWithThePath) {
  const fs::path out = scratch("bad");
  const auto r = cli("spectroscopy --set device.g_f=-1", out);
  EXPECT_EQ(r.status, 2);
  EXPECT_NE(r.err.find("device.g_f"), std::string::npos) << r.err;
  const auto u = cli("spectroscopy --set device.bogus=1", out);
  EXPECT_EQ(u.status, 2);
  EXPECT_NE(u.err.find("device.bogus"), std::string::npos) << u.err;
}

TEST(Cli, RepeatedRunsAreByteIdentical) {
  const fs::path a = scratch("run_a"), b = scratch("run_b");
  const std::string args = "exchange-scan --seed 5 --set exchange_scan.delta_over_gf.step=1.0";
  ASSERT_EQ(cli(args, a).status, 0);
  ASSERT_EQ(cli(args + " --threads 1", b).status, 0);
  for (const char* name : {"exchange_scan.csv", "exchange_scan.json"}) {
    ASSERT_TRUE(fs::exists(a / name)) << name;
    EXPECT_EQ(read_file(a / name), read_file(b / name)) << name;
  }
}

TEST(Cli, ConfigCommandPrintsResolvedJson) {
  const fs::path out = scratch("show");
  ASSERT_EQ(cli("config --set device.g_f=0.12", out).status, 0);
  const RunConfig c = parse_config(read_file(out / "stdout.txt"));
  EXPECT_DOUBLE_EQ(c.device.g_f, 0.12);
}

}  // namespace
}  // namespace mmqed
