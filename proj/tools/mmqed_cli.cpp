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

// mmqed: spectroscopy tables, time-domain experiments, CZ calibration and
// Bell-state tomography for two transmons coupled through a resonator chain.
//
// Exit codes: 0 ok, 1 unexpected error, 2 configuration error, 3 numerical
// contract violated, 4 acceptance check failed.

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "mmqed/acceptance.hpp"
#include "mmqed/config.hpp"
#include "mmqed/couplings.hpp"
#include "mmqed/dynamics.hpp"
#include "mmqed/gates.hpp"
#include "mmqed/io.hpp"
#include "mmqed/parallel.hpp"
#include "mmqed/spectroscopy.hpp"
#include "mmqed/tomography.hpp"

namespace {

using json = nlohmann::json;
using namespace mmqed;

struct Common {
  std::string config_path;
  std::vector<std::string> overrides;
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
  std::string out;
  bool decoherence = false;
};

RunConfig resolve(const Common& c, const std::string& command) {
  std::string text = "{}";
  if (!c.config_path.empty()) {
    std::ifstream in(c.config_path);
    if (!in) throw ConfigError("--config", "cannot open " + c.config_path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    text = buffer.str();
  }
  std::vector<std::string> overrides = c.overrides;
  if (c.seed) overrides.push_back("seed=" + std::to_string(*c.seed));
  if (c.threads) overrides.push_back("threads=" + std::to_string(*c.threads));
  if (!c.out.empty()) overrides.push_back("output_dir=" + json(c.out).dump());
  if (c.decoherence) {
    if (command == "lz-ramp") overrides.push_back("lz_ramp.decoherence=true");
    if (command == "stark-ramsey") overrides.push_back("stark_ramsey.decoherence=true");
    if (command == "bell") overrides.push_back("bell.decoherence=true");
  }
  try {
    text = apply_overrides(text, overrides);
  } catch (const json::exception& e) {
    throw ConfigError("--config", e.what());
  }
  RunConfig config = parse_config(text);
  set_default_threads(config.threads);
  return config;
}

json schedule_json(const CzSchedule& s) {
  return {{"load_ramp_ns", s.load_ramp},
          {"q2_ramp_ns", s.q2_ramp},
          {"interaction_frequency_ghz", s.interaction_frequency},
          {"interaction_duration_ns", s.interaction_duration},
          {"retrieve_ramp_ns", s.retrieve_ramp},
          {"virtual_z_rad", s.virtual_z},
          {"total_time_ns", s.total_time()}};
}

json matrix_json(const Matrix4c& m) {
  json re = json::array(), im = json::array();
  for (int i = 0; i < 4; ++i) {
    json r = json::array(), c = json::array();
    for (int j = 0; j < 4; ++j) {
      r.push_back(m(i, j).real());
      c.push_back(m(i, j).imag());
    }
    re.push_back(r);
    im.push_back(c);
  }
  return {{"real", re}, {"imag", im}};
}

json report_json(const GateReport& r) {
  json j = {{"conditional_phase_rad", r.conditional_phase},
            {"phases_rad", {{"gg", r.phases[0]}, {"ge", r.phases[1]}, {"eg", r.phases[2]}, {"ee", r.phases[3]}}},
            {"leakage", {{"gg", r.leakage[0]}, {"ge", r.leakage[1]}, {"eg", r.leakage[2]}, {"ee", r.leakage[3]}}},
            {"exchange_leakage", r.exchange_leakage},
            {"average_gate_fidelity", r.average_fidelity},
            {"total_time_ns", r.total_time},
            {"valid", r.valid},
            {"decoherence", r.decoherence},
            {"unitary", matrix_json(r.unitary)}};
  if (r.bell_fidelity) j["bell_fidelity"] = *r.bell_fidelity;
  if (r.concurrence) j["concurrence"] = *r.concurrence;
  return j;
}

json interval_json(const Interval& i) {
  return {{"mean", i.mean}, {"stddev", i.stddev}, {"low_2.5", i.low}, {"high_97.5", i.high}};
}

int run_spectroscopy(const RunConfig& c, ArtifactWriter& w) {
  const auto& s = c.spectroscopy;
  const auto& t = c.transmon[static_cast<std::size_t>(s.transmon_qubit - 1)];
  w.csv("spectroscopy_flux.csv", [&](std::ostream& out) {
    out << std::setprecision(12) << "flux_phi0,nu01_ghz,anharmonicity_ghz\n";
    for (double phi : s.flux.points()) {
      out << phi << "," << transmon_frequency(t, phi) << "," << transmon_anharmonicity(t, phi) << "\n";
    }
  });

  SweepSpec band;
  band.qubit = s.band_qubit;
  band.grid = s.band.points();
  band.other_qubit_frequency = s.other_qubit_frequency;
  const auto band_table = eigen_sweep(c.device, band);
  w.csv("spectroscopy_band.csv", [&](std::ostream& out) { band_table.write_csv(out); });

  SweepSpec cross;
  cross.qubit = 2;
  for (double d : s.crossing_offset.points()) cross.grid.push_back(s.crossing_center + d);
  cross.other_qubit_frequency = s.crossing_center;
  const auto cross_table = eigen_sweep(c.device, cross);
  w.csv("spectroscopy_crossing.csv", [&](std::ostream& out) { cross_table.write_csv(out); });

  json summary;
  for (const auto& m : filter_normal_modes(c.device)) {
    summary["filter_modes"].push_back({{"frequency_ghz", m.frequency}, {"g_q1_ghz", m.g_q1}, {"g_q2_ghz", m.g_q2}});
  }
  // Adjacent branches above the other qubit's branch.
  for (std::size_t b = 1; b + 1 < band_table.branch_count(); ++b) {
    json g = {{"branches", {b, b + 1}}};
    try {
      const auto x = find_avoided_crossing(band_table, b, b + 1);
      g["location_ghz"] = x.location;
      g["gap_ghz"] = x.gap;
    } catch (const InvalidArgument& e) {
      g["error"] = e.what();
    }
    summary["band_gaps"].push_back(g);
  }
  try {
    const auto x = find_avoided_crossing(cross_table, 0, 1);
    summary["qubit_crossing"] = {{"location_ghz", x.location}, {"two_j_ghz", x.gap}};
  } catch (const InvalidArgument& e) {
    summary["qubit_crossing"] = {{"error", e.what()}};
  }
  w.json("spectroscopy.json", summary.dump());
  return 0;
}

int run_exchange(const RunConfig& c, ArtifactWriter& w) {
  const auto& p = c.device;
  std::vector<double> centers, win_delta, win_j;
  for (double x : c.exchange_scan.delta_over_gf.points()) centers.push_back(p.nu_f - x * p.g_f);
  const auto rows = exchange_scan(p, centers, c.threads);
  w.csv("exchange_scan.csv", [&](std::ostream& out) { write_exchange_csv(out, rows); });
  for (const auto& r : rows) {
    const double x = std::abs(r.delta) / p.g_f;
    if (x >= c.exchange_scan.fit_window[0] - 1e-12 && x <= c.exchange_scan.fit_window[1] + 1e-12) {
      win_delta.push_back(r.delta);
      win_j.push_back(r.j_numeric);
    }
  }
  json summary;
  if (win_delta.size() >= 2) summary["log_log_slope"] = log_log_slope(win_delta, win_j);
  summary["fit_window_delta_over_gf"] = c.exchange_scan.fit_window;
  const double q1 = c.exchange_scan.xi_q1, q2 = q1 - c.exchange_scan.xi_offset;
  summary["xi"] = {{"nu_q1_ghz", q1}, {"nu_q2_ghz", q2}, {"xi_ghz", numeric_xi(p, q1, q2)}};
  w.json("exchange_scan.json", summary.dump());
  return 0;
}

int run_lz(const RunConfig& c, ArtifactWriter& w) {
  const LzConfig lz = c.lz_config();
  const auto result = lz_ramp_experiment(c.device, lz);
  w.csv("lz_ramp.csv", [&](std::ostream& out) { result.write_csv(out); });
  json summary = {{"fringe_peak_ghz", fringe_peak_frequency(result.grid, result.column("p_e"))},
                  {"filter_splitting_ghz", std::sqrt(2.0) * c.device.g_f},
                  {"metadata", result.metadata}};
  w.json("lz_ramp.json", summary.dump());
  return 0;
}

int run_stark(const RunConfig& c, ArtifactWriter& w) {
  const auto result = stark_ramsey(c.device, c.stark_config());
  w.csv("stark_ramsey.csv", [&](std::ostream& out) { result.write_csv(out); });
  const auto reliable = result.column("reliable");
  int flagged = 0;
  for (double r : reliable) flagged += r < 0.5;
  json summary = {{"unreliable_points", flagged}, {"metadata", result.metadata}};
  w.json("stark_ramsey.json", summary.dump());
  return 0;
}

CalibrationResult calibrate(const RunConfig& c, ArtifactWriter& w) {
  auto cal = calibrate_cz(c.device, c.cz.schedule, c.gate_options(), c.cz.calibration);
  w.csv("cz_calibration_trace.csv", [&](std::ostream& out) {
    out << std::setprecision(12) << "interaction_duration_ns,conditional_phase_unwrapped_rad\n";
    for (const auto& p : cal.phase_trace) out << p.duration << "," << p.conditional_phase << "\n";
  });
  json j = {{"schedule", schedule_json(cal.schedule)},
            {"report", report_json(cal.report)},
            {"objective", cal.objective},
            {"evaluations", cal.evaluations},
            {"sweeps", cal.sweeps}};
  w.json("cz_gate.json", j.dump());
  return cal;
}

int run_cz(const RunConfig& c, ArtifactWriter& w) {
  const auto cal = calibrate(c, w);
  std::cout << "conditional phase " << cal.report.conditional_phase << " rad, average fidelity "
            << cal.report.average_fidelity << ", total time " << cal.report.total_time << " ns\n";
  return 0;
}

int run_bell(const RunConfig& c, ArtifactWriter& w) {
  const CzSchedule schedule = c.bell.calibrate ? calibrate(c, w).schedule : c.cz.schedule;
  const auto bell = bell_experiment(c.device, schedule, c.gate_options(), c.bell_options());
  json j = {{"schedule", schedule_json(schedule)},
            {"report", report_json(bell.report)},
            {"fidelity", *bell.report.bell_fidelity},
            {"concurrence", *bell.report.concurrence},
            {"leaked_population", bell.leaked_population},
            {"rho", matrix_json(bell.reconstructed.rho)},
            {"rho_simulated", matrix_json(bell.simulated)},
            {"shots_per_setting", c.bell.shots},
            {"realizations", c.bell.decoherence ? c.bell.realizations : 1}};
  if (bell.bootstrap) {
    j["bootstrap"] = {{"resamples", bell.bootstrap->resamples},
                      {"fidelity", interval_json(bell.bootstrap->fidelity)},
                      {"concurrence", interval_json(bell.bootstrap->concurrence)}};
  }
  w.json("bell.json", j.dump());
  w.csv("bell_counts.csv", [&](std::ostream& out) {
    out << std::setprecision(12) << "setting,n_00,n_01,n_10,n_11\n";
    for (std::size_t k = 0; k < bell.measurements.settings.size(); ++k) {
      out << bell.measurements.settings[k].name();
      for (double n : bell.measurements.counts[k]) out << "," << n;
      out << "\n";
    }
  });
  std::cout << "Bell fidelity " << *bell.report.bell_fidelity << ", concurrence " << *bell.report.concurrence << "\n";
  return 0;
}

int run_validate(const RunConfig& c, ArtifactWriter& w, bool& passed) {
  AcceptanceSuite suite(c);
  const auto results = suite.run_all([](const CriterionResult& r) { std::cout << r.line() << std::endl; });
  w.json("acceptance.json", acceptance_json(results));
  passed = true;
  for (const auto& r : results) passed = passed && r.passed();
  return passed ? 0 : 4;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multimode filter cQED simulator"};
  app.require_subcommand(1);
  app.fallthrough();  // common options may follow the subcommand
  Common common;
  app.add_option("--config", common.config_path, "JSON configuration (defaults: built-in device profile)");
  app.add_option("--set", common.overrides, "Override a field, e.g. --set device.g_f=0.12");
  app.add_option("--seed", common.seed, "Random seed");
  app.add_option("--threads", common.threads, "Worker threads (0: all cores)");
  app.add_option("--out", common.out, "Output directory");

  struct Command {
    const char* name;
    const char* help;
    int (*fn)(const RunConfig&, ArtifactWriter&);
  };
  const Command commands[] = {
      {"spectroscopy", "Transmon, band and qubit-crossing eigenvalue tables", run_spectroscopy},
      {"exchange-scan", "Exchange rate J versus detuning", run_exchange},
      {"lz-ramp", "Landau-Zener ramp interference", run_lz},
      {"stark-ramsey", "Single-photon Stark shift by Ramsey", run_stark},
      {"cz-calibrate", "Calibrate the photon-mediated CZ gate", run_cz},
      {"bell", "Bell state through the CZ gate, with tomography", run_bell},
  };
  std::vector<std::pair<CLI::App*, const Command*>> subs;
  for (const auto& cmd : commands) {
    auto* sub = app.add_subcommand(cmd.name, cmd.help);
    if (std::string(cmd.name) == "lz-ramp" || std::string(cmd.name) == "stark-ramsey" ||
        std::string(cmd.name) == "bell") {
      sub->add_flag("--decoherence", common.decoherence, "T1 decay and quasi-static dephasing");
    }
    subs.emplace_back(sub, &cmd);
  }
  auto* validate = app.add_subcommand("validate", "Run the acceptance suite");
  auto* show = app.add_subcommand("config", "Print the resolved configuration and its hash");

  CLI11_PARSE(app, argc, argv);

  try {
    for (auto& [sub, cmd] : subs) {
      if (!sub->parsed()) continue;
      const RunConfig config = resolve(common, cmd->name);
      ArtifactWriter writer(config.output_dir, config, cmd->name);
      const int rc = cmd->fn(config, writer);
      writer.manifest(rc == 0);
      std::cout << "artifacts in " << config.output_dir << " (config " << writer.hash() << ")\n";
      return rc;
    }
    if (show->parsed()) {
      const RunConfig config = resolve(common, "config");
      std::cout << to_json(config) << "\n";
      std::cerr << "config hash " << config_hash(config) << "\n";
      return 0;
    }
    if (validate->parsed()) {
      const RunConfig config = resolve(common, "validate");
      ArtifactWriter writer(config.output_dir, config, "validate");
      bool passed = false;
      const int rc = run_validate(config, writer, passed);
      writer.manifest(passed);
      std::cout << (passed ? "all acceptance checks passed" : "acceptance checks FAILED") << "\n";
      return rc;
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const ContractViolation& e) {
    std::cerr << "invariant violated [" << e.invariant() << "]: " << e.what() << "\n";
    return 3;
  } catch (const InvalidArgument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
