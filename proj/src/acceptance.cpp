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

#include "mmqed/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#include "mmqed/couplings.hpp"
#include "mmqed/dynamics.hpp"
#include "mmqed/spectroscopy.hpp"
#include "mmqed/tomography.hpp"

namespace mmqed {

namespace {

constexpr double kPi = std::numbers::pi;

std::string window(double lo, double hi) {
  std::ostringstream s;
  s << "[" << lo << ", " << hi << "]";
  return s.str();
}

Check within(std::string name, double value, double lo, double hi) {
  return {std::move(name), value, window(lo, hi), value >= lo && value <= hi};
}

Check below(std::string name, double value, double limit) {
  std::ostringstream s;
  s << "< " << limit;
  return {std::move(name), value, s.str(), value < limit};
}

Check near(std::string name, double value, double target, double tol) {
  return within(std::move(name), value, target - tol, target + tol);
}

double filter_splitting(const DeviceParams& p) { return std::sqrt(2.0) * p.g_f; }

// ---------------------------------------------------------------- 1–3

std::vector<Check> filter_modes(const RunConfig& c) {
  const auto modes = filter_normal_modes(c.device);
  std::vector<Check> out;
  const double expected[] = {7.002, 7.169, 7.336};
  for (std::size_t k = 0; k < 3 && k < modes.size(); ++k) {
    out.push_back(near("mode" + std::to_string(k + 1) + "_ghz", modes[k].frequency, expected[k], 0.001));
  }
  if (modes.size() != 3) out.push_back({"mode_count", static_cast<double>(modes.size()), "3", false});
  return out;
}

std::vector<Check> mode_couplings(const RunConfig& c) {
  const auto modes = filter_normal_modes(c.device);
  if (modes.size() != 3) return {{"mode_count", static_cast<double>(modes.size()), "3", false}};
  const double r = 1.0 / std::sqrt(2.0);
  return {
      near("g_q1_mode2_ghz", modes[1].g_q1, 0.095, 0.001),
      near("g_q2_mode2_ghz", modes[1].g_q2, 0.102, 0.001),
      below("outer_ratio_defect", std::max({std::abs(modes[0].g_q1 - r * modes[1].g_q1),
                                            std::abs(modes[2].g_q1 - r * modes[1].g_q1),
                                            std::abs(modes[0].g_q2 - r * modes[1].g_q2),
                                            std::abs(modes[2].g_q2 - r * modes[1].g_q2)}),
            1e-9),
  };
}

std::vector<Check> off_rate(const RunConfig& c) {
  const auto& p = c.device;
  std::vector<double> centers, deltas, j_num;
  for (double x : c.exchange_scan.delta_over_gf.points()) {
    if (x >= c.exchange_scan.fit_window[0] - 1e-12 && x <= c.exchange_scan.fit_window[1] + 1e-12) {
      centers.push_back(p.nu_f - x * p.g_f);
    }
  }
  if (centers.size() < 3) return {{"fit_points", static_cast<double>(centers.size()), ">= 3", false}};
  const auto rows = exchange_scan(p, centers, c.threads);
  double worst_ratio = 1.0;
  for (const auto& r : rows) {
    deltas.push_back(r.delta);
    j_num.push_back(r.j_numeric);
    const double ratio = std::abs(r.j_closed_form / r.j_numeric);
    if (std::abs(std::log(ratio)) > std::abs(std::log(worst_ratio))) worst_ratio = ratio;
  }
  const double xi = numeric_xi(p, c.exchange_scan.xi_q1, c.exchange_scan.xi_q1 - c.exchange_scan.xi_offset);
  return {
      near("log_log_slope", log_log_slope(deltas, j_num), -3.0, 0.3),
      within("closed_form_over_numeric_worst", worst_ratio, 0.5, 2.0),
      below("abs_xi_khz", std::abs(xi) * 1e6, 10.0),
  };
}

// ---------------------------------------------------------------- 4–5

std::vector<Check> landau_zener(const RunConfig& c) {
  LzConfig lz = c.lz_config();
  lz.decoherence = false;
  lz.realizations = 1;
  const auto result = lz_ramp_experiment(c.device, lz);
  const double peak = fringe_peak_frequency(result.grid, result.column("p_e"));
  const double target = filter_splitting(c.device);
  return {
      within("fringe_peak_ghz", peak, 0.85 * target, 1.15 * target),
      below("residual_25ns", lz_single_passage_residual(c.device, lz, 25.0), 0.01),
  };
}

std::vector<Check> stark(const RunConfig& c) {
  StarkConfig sc = c.stark_config();
  sc.decoherence = false;
  sc.realizations = 1;
  const auto result = stark_ramsey(c.device, sc);
  const auto shift = result.column("stark_shift");
  const auto oracle = result.column("oracle");
  const auto reliable = result.column("reliable");
  double worst = 0;
  int unreliable = 0;
  for (std::size_t k = 0; k < shift.size(); ++k) {
    const double err = std::abs(shift[k] - oracle[k]);
    // The reference point is zero on both sides by construction.
    const double rel = std::abs(oracle[k]) > 1e-6 ? err / std::abs(oracle[k]) : (err < 1e-9 ? 0.0 : HUGE_VAL);
    worst = std::max(worst, rel);
    if (reliable[k] < 0.5) ++unreliable;
  }
  const double target = filter_splitting(c.device);
  return {
      below("worst_relative_error", worst, 0.02 + 1e-12),
      below("unreliable_points", unreliable, 0.5),
      within("plateau_ghz", shift.back(), 0.9 * target, 1.1 * target),
  };
}

// ---------------------------------------------------------------- 6–7

std::vector<Check> cz_gate(const RunConfig& c, const CalibrationResult& cal) {
  BellOptions b = c.bell_options();
  b.decoherence = false;
  b.shots = 0;
  b.bootstrap_resamples = 0;
  const auto bell = bell_experiment(c.device, cal.schedule, c.gate_options(), b);
  const double phase_error = std::abs(std::remainder(cal.report.conditional_phase - kPi, 2.0 * kPi));
  return {
      below("conditional_phase_error_rad", phase_error, 0.02 + 1e-12),
      within("ideal_bell_fidelity", *bell.report.bell_fidelity, 0.99, 1.0),
      within("total_time_ns", cal.report.total_time, 70.0, 130.0),
      below("exchange_leakage", cal.report.exchange_leakage, 1e-3),
  };
}

std::vector<Check> noisy_bell(const RunConfig& c, const CalibrationResult& cal) {
  BellOptions b = c.bell_options();
  b.decoherence = true;
  b.realizations = std::max(b.realizations, 400);
  b.shots = std::max<std::uint64_t>(b.shots, 10000);
  const auto bell = bell_experiment(c.device, cal.schedule, c.gate_options(), b);
  return {
      near("bell_fidelity", *bell.report.bell_fidelity, 0.947, 0.03),
      near("concurrence", *bell.report.concurrence, 0.926, 0.05),
  };
}

// ---------------------------------------------------------------- 8

std::vector<Check> properties(const RunConfig& c) {
  std::vector<Check> out;
  const GateOptions o = c.gate_options();
  const DeviceParams g = gate_device(c.device, o);

  // Norm drift through a full gate schedule with pulses.
  {
    PulseSchedule pulse = build_cz_pulse(g, c.cz.schedule, o);
    pulse.event({0.0, 1, EventKind::kRotation, kPi / 2, kPi / 2}).event({0.0, 2, EventKind::kRotation, 0.3, 1.1});
    const HamiltonianModel model(g);
    const IdleFrame frame = IdleFrame::at(model, o.idle_q1, o.idle_q2);
    const auto psi = run_schedule(model, frame, pulse, frame.state(*model.basis(), model.basis()->qubit_label(0, 0)),
                                  c.propagation);
    out.push_back(below("norm_drift", std::abs(psi.norm() - 1.0), 1e-9));

    // Couplings never connect different excitation numbers.
    double cross = 0;
    const auto& basis = *model.basis();
    for (double nu : {5.3, 6.9, 7.2, 8.1}) {
      const ComplexMatrix h = model(nu, 12.4 - nu);
      for (Eigen::Index i = 0; i < h.rows(); ++i) {
        for (Eigen::Index j = 0; j < h.cols(); ++j) {
          if (basis.label(static_cast<std::size_t>(i)).excitations() !=
              basis.label(static_cast<std::size_t>(j)).excitations()) {
            cross = std::max(cross, std::abs(h(i, j)));
          }
        }
      }
    }
    out.push_back({"cross_block_element", cross, "== 0", cross == 0.0});
  }

  // Two-level crossing against the closed form over two decades of rate.
  {
    const double coupling = 0.01;
    double worst = 0;
    for (int k = 0; k <= 8; ++k) {
      const double v = 0.004 * std::pow(10.0, k / 4.0);
      const double exact = landau_zener_probability(coupling, v);
      const double numeric = landau_zener_numeric(coupling, v, 2000.0 * coupling / v, c.propagation);
      worst = std::max(worst, std::abs(numeric - exact) / exact);
    }
    out.push_back(below("landau_zener_relative_error", worst, 0.01));
  }

  // Tomography at exact probabilities returns the input state.
  {
    std::mt19937_64 rng(c.seed);
    std::normal_distribution<double> n;
    double worst = 0;
    for (int trial = 0; trial < 20; ++trial) {
      Matrix4c a;
      for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) a(i, j) = Complex(n(rng), n(rng));
      }
      Matrix4c rho = a * a.adjoint();
      rho /= rho.trace();
      const auto back = reconstruct_state(exact_measurements(rho, all_settings())).rho;
      worst = std::max(worst, (back - rho).norm());
    }
    out.push_back(below("tomography_round_trip", worst, 1e-9));
  }

  // Werner states.
  {
    Vector4c phi(1, 0, 0, 1);
    phi /= std::sqrt(2.0);
    double worst = 0;
    for (double p : {0.0, 0.2, 1.0 / 3.0, 0.5, 0.8, 1.0}) {
      const Matrix4c rho = p * phi * phi.adjoint() + (1 - p) * Matrix4c::Identity() / 4.0;
      worst = std::max(worst, std::abs(concurrence(rho) - std::max(0.0, (3 * p - 1) / 2)));
    }
    out.push_back(below("werner_concurrence_error", worst, 1e-9));
  }
  return out;
}

struct Spec {
  const char* title;
  double limit;  // s
};

constexpr Spec kSpecs[AcceptanceSuite::kCount] = {
    {"filter normal modes", 1},       {"mode couplings", 1},    {"off-rate scaling", 120},
    {"landau-zener fringes", 300},    {"stark shift", 600},     {"cz gate", 600},
    {"decoherent bell state", 1800},  {"property suites", 300},
};

}  // namespace

bool CriterionResult::passed() const {
  if (!error.empty() || checks.empty() || seconds > time_limit) return false;
  for (const auto& c : checks) {
    if (!c.passed) return false;
  }
  return true;
}

std::string CriterionResult::line() const {
  std::ostringstream s;
  s << (passed() ? "PASS" : "FAIL") << " " << id << " " << title << " (" << std::fixed << std::setprecision(1)
    << seconds << " s, limit " << time_limit << " s)";
  s << std::defaultfloat << std::setprecision(6);
  for (const auto& c : checks) s << " " << c.name << "=" << c.value << (c.passed ? "" : "!") << " " << c.expected;
  if (!error.empty()) s << " error: " << error;
  return s.str();
}

AcceptanceSuite::AcceptanceSuite(RunConfig config) : config_(std::move(config)) {}

const CalibrationResult& AcceptanceSuite::calibrated() {
  if (!calibration_) {
    calibration_ = calibrate_cz(config_.device, config_.cz.schedule, config_.gate_options(), config_.cz.calibration);
  }
  return *calibration_;
}

CriterionResult AcceptanceSuite::run(int id) {
  if (id < 1 || id > kCount) throw InvalidArgument("criterion id must be in 1..8");
  CriterionResult r;
  r.id = id;
  r.title = kSpecs[id - 1].title;
  r.time_limit = kSpecs[id - 1].limit;
  const auto start = std::chrono::steady_clock::now();
  try {
    switch (id) {
      case 1: r.checks = filter_modes(config_); break;
      case 2: r.checks = mode_couplings(config_); break;
      case 3: r.checks = off_rate(config_); break;
      case 4: r.checks = landau_zener(config_); break;
      case 5: r.checks = stark(config_); break;
      case 6: r.checks = cz_gate(config_, calibrated()); break;
      case 7: {
        // Calibration time is charged to criterion 6.
        const auto& cal = calibrated();
        const auto t0 = std::chrono::steady_clock::now();
        r.checks = noisy_bell(config_, cal);
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return r;
      }
      case 8: r.checks = properties(config_); break;
    }
  } catch (const std::exception& e) {
    r.error = e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::vector<CriterionResult> AcceptanceSuite::run_all(const std::function<void(const CriterionResult&)>& on_result) {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= kCount; ++id) {
    out.push_back(run(id));
    if (on_result) on_result(out.back());
  }
  return out;
}

std::string acceptance_json(const std::vector<CriterionResult>& results) {
  nlohmann::json doc;
  doc["criteria"] = nlohmann::json::array();
  bool all = true;
  for (const auto& r : results) {
    nlohmann::json j;
    j["id"] = r.id;
    j["title"] = r.title;
    j["passed"] = r.passed();
    j["seconds"] = r.seconds;
    j["time_limit_s"] = r.time_limit;
    if (!r.error.empty()) j["error"] = r.error;
    for (const auto& c : r.checks) {
      j["checks"].push_back({{"name", c.name}, {"value", c.value}, {"expected", c.expected}, {"passed", c.passed}});
    }
    doc["criteria"].push_back(j);
    all = all && r.passed();
  }
  doc["passed"] = all;
  return doc.dump();
}

}  // namespace mmqed
