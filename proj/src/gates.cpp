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

#include "mmqed/gates.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

#include "mmqed/parallel.hpp"

namespace mmqed {

namespace {

constexpr double kPi = std::numbers::pi;

double wrap(double phase) {
  double w = std::remainder(phase, 2.0 * kPi);
  if (w <= -kPi) w += 2.0 * kPi;
  return w;
}

std::vector<double> reversed(std::vector<double> v) {
  std::reverse(v.begin(), v.end());
  return v;
}

// Computational index 2·q1 + q2.
constexpr std::array<std::array<int, 2>, 4> kLevels{{{0, 0}, {0, 1}, {1, 0}, {1, 1}}};

}  // namespace

DeviceParams gate_device(const DeviceParams& p, const GateOptions& options) {
  DeviceParams g = p;
  g.qubit_levels = options.qubit_levels;
  g.excitation_cap = 2;
  g.validate();
  return g;
}

void validate_cz(const DeviceParams& p, const CzSchedule& s) {
  if (!(s.load_ramp > 0 && s.retrieve_ramp > 0 && s.q2_ramp > 0)) throw InvalidArgument("cz ramps must be positive");
  if (s.interaction_duration < 0) throw InvalidArgument("cz interaction_duration must be non-negative");
  const double lowest = filter_normal_modes(p).front().frequency;
  if (!(s.interaction_frequency < lowest)) {
    std::ostringstream msg;
    msg << "cz interaction_frequency " << s.interaction_frequency << " GHz must lie below the lowest filter mode ("
        << lowest << " GHz)";
    throw InvalidArgument(msg.str());
  }
}

PulseSchedule build_cz_pulse(const DeviceParams& p, const CzSchedule& s, const GateOptions& o, double padding) {
  validate_cz(p, s);
  if (padding < 0) throw InvalidArgument("padding must be non-negative");
  const HamiltonianModel sector1(p, 1);
  const int r1 = qubit_branch_rank(sector1, o.idle_q1, o.idle_q2, 1);
  const auto up = gap_adapted_profile(p, 1, o.idle_q1, o.park_q1, o.idle_q2, r1, o.q1_segments);
  const int r2 = qubit_branch_rank(sector1, o.park_q1, o.idle_q2, 2);
  const auto rise = gap_adapted_profile(p, 2, o.idle_q2, s.interaction_frequency, o.park_q1, r2, o.q2_segments);

  PulseSchedule pulse(o.idle_q1, o.idle_q2);
  pulse.hold(1, padding).hold(2, padding);
  pulse.ramp(1, s.load_ramp, up)
      .hold(1, 2.0 * s.q2_ramp + s.interaction_duration)
      .ramp(1, s.retrieve_ramp, reversed(up));
  pulse.hold(2, s.load_ramp)
      .ramp(2, s.q2_ramp, rise)
      .hold(2, s.interaction_duration)
      .ramp(2, s.q2_ramp, reversed(rise))
      .hold(2, s.retrieve_ramp);
  pulse.hold(1, padding).hold(2, padding);
  pulse.align();
  return pulse;
}

double cz_average_fidelity(const Matrix4c& u) {
  const Eigen::Vector4cd cz(1, 1, 1, -1);
  const Matrix4c m = cz.asDiagonal() * u;  // CZ† = CZ
  return ((m * m.adjoint()).trace().real() + std::norm(m.trace())) / 20.0;
}

GateReport conditional_phase(const DeviceParams& p, const CzSchedule& s, const GateOptions& o) {
  const DeviceParams g = gate_device(p, o);
  const PulseSchedule pulse = build_cz_pulse(g, s, o);
  const double total = pulse.total_time();
  const HamiltonianModel m1(g, 1), m2(g, 2);
  const IdleFrame frame1 = IdleFrame::at(m1, o.idle_q1, o.idle_q2);
  const IdleFrame frame2 = IdleFrame::at(m2, o.idle_q1, o.idle_q2);
  const Basis& b1 = *m1.basis();
  const Basis& b2 = *m2.basis();

  // Inputs: ge and eg in the single-excitation block, ee in the double one.
  std::array<ComplexVector, 3> out;
  parallel_for(
      3,
      [&](std::size_t job) {
        if (job < 2) {
          const auto label = job == 0 ? b1.qubit_label(0, 1) : b1.qubit_label(1, 0);
          out[job] = run_schedule(m1, frame1, pulse, frame1.state(b1, label), o.propagation);
        } else {
          out[job] = run_schedule(m2, frame2, pulse, frame2.state(b2, b2.qubit_label(1, 1)), o.propagation);
        }
      },
      o.threads);

  auto frame_phase = [&](int k) {
    return std::polar(1.0, kTwoPi * (kLevels[k][0] * frame1.f1 + kLevels[k][1] * frame1.f2) * total);
  };
  Matrix4c u = Matrix4c::Zero();
  u(0, 0) = 1.0;  // the vacuum carries no energy
  for (int in = 1; in <= 2; ++in) {
    for (int row = 1; row <= 2; ++row) {
      const auto label = b1.qubit_label(kLevels[row][0], kLevels[row][1]);
      u(row, in) = frame_phase(row) * frame1.state(b1, label).dot(out[static_cast<std::size_t>(in - 1)]);
    }
  }
  u(3, 3) = frame_phase(3) * frame2.state(b2, b2.qubit_label(1, 1)).dot(out[2]);

  GateReport r;
  r.total_time = total;
  for (int k = 0; k < 4; ++k) {
    r.phases[static_cast<std::size_t>(k)] = std::arg(u(k, k));
    r.leakage[static_cast<std::size_t>(k)] = std::max(0.0, 1.0 - u.col(k).squaredNorm());
    if (r.leakage[static_cast<std::size_t>(k)] > o.leakage_limit) r.valid = false;
  }
  r.exchange_leakage = std::max(std::norm(u(1, 2)), std::norm(u(2, 1)));
  r.conditional_phase = wrap(r.phases[3] + r.phases[0] - r.phases[1] - r.phases[2]);
  Eigen::Vector4cd vz;
  for (int k = 0; k < 4; ++k) {
    vz(k) = std::polar(1.0, -(kLevels[k][0] * s.virtual_z[0] + kLevels[k][1] * s.virtual_z[1]));
  }
  r.unitary = vz.asDiagonal() * u;
  r.average_fidelity = cz_average_fidelity(r.unitary);
  return r;
}

double conditional_phase_oracle(const DeviceParams& p, const CzSchedule& s, const GateOptions& o, double sample_dt) {
  const DeviceParams g = gate_device(p, o);
  const PulseSchedule pulse = build_cz_pulse(g, s, o);
  const HamiltonianModel m1(g, 1), m2(g, 2);
  const auto d1 = dress(m1(o.idle_q1, o.idle_q2));
  const auto d2 = dress(m2(o.idle_q1, o.idle_q2));
  const Basis& b1 = *m1.basis();
  const Basis& b2 = *m2.basis();
  // Rank order is preserved along an adiabatic path.
  const auto r_ge = static_cast<Eigen::Index>(d1.eigen_index[b1.index_of(b1.qubit_label(0, 1))]);
  const auto r_eg = static_cast<Eigen::Index>(d1.eigen_index[b1.index_of(b1.qubit_label(1, 0))]);
  const auto r_ee = static_cast<Eigen::Index>(d2.eigen_index[b2.index_of(b2.qubit_label(1, 1))]);

  const double total = pulse.total_time();
  const auto n = static_cast<std::size_t>(std::ceil(total / sample_dt));
  const double h = total / static_cast<double>(n);
  double integral = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const double t = (static_cast<double>(k) + 0.5) * h;
    const double nu1 = pulse.frequency(1, t), nu2 = pulse.frequency(2, t);
    const RealVector e1 = eig_hermitian(m1(nu1, nu2)).values;
    const RealVector e2 = eig_hermitian(m2(nu1, nu2)).values;
    integral += (e2(r_ee) - e1(r_eg) - e1(r_ge)) * h;
  }
  return -kTwoPi * integral;
}

// ---------------------------------------------------------------- calibration

namespace {

struct Calibrator {
  const DeviceParams& p;
  const GateOptions& o;
  const CalibrationOptions& c;
  int evaluations = 0;

  GateReport evaluate(const CzSchedule& s) {
    ++evaluations;
    return conditional_phase(p, s, o);
  }

  // Unwrapped conditional phase on a duration grid.
  std::vector<CalibrationTracePoint> scan(CzSchedule s) {
    std::vector<CalibrationTracePoint> trace;
    double previous = 0;
    for (double tau = 0; tau <= c.max_duration + 1e-9; tau += c.duration_step) {
      s.interaction_duration = tau;
      const double cp = evaluate(s).conditional_phase;
      const double unwrapped = trace.empty() ? cp : previous + wrap(cp - previous);
      trace.push_back({tau, unwrapped});
      previous = unwrapped;
    }
    return trace;
  }

  // Secant iteration on wrap(cp − π) from a bracket [a, b].
  std::optional<double> solve(CzSchedule s, double a, double b) {
    auto f = [&](double tau) {
      s.interaction_duration = tau;
      const auto r = evaluate(s);
      if (!r.valid) throw ContractViolation("leakage", "computational leakage above limit during duration solve");
      return wrap(r.conditional_phase - kPi);
    };
    double fa = f(a), fb = f(b);
    if (std::abs(fa) < 0.1 * c.phase_tolerance) return a;
    if (std::abs(fb) < 0.1 * c.phase_tolerance) return b;
    for (int it = 0; it < 40; ++it) {
      double x = std::abs(fb - fa) > 1e-15 ? b - fb * (b - a) / (fb - fa) : 0.5 * (a + b);
      if (!(x > 0 && x < c.max_duration)) return std::nullopt;
      const double fx = f(x);
      if (std::abs(fx) < 0.1 * c.phase_tolerance) return x;
      a = b;
      fa = fb;
      b = x;
      fb = fx;
    }
    return std::nullopt;
  }

  std::optional<double> solve_from_scan(const CzSchedule& s, const std::vector<CalibrationTracePoint>& trace) {
    for (std::size_t k = 0; k + 1 < trace.size(); ++k) {
      const double lo = std::min(trace[k].conditional_phase, trace[k + 1].conditional_phase);
      const double hi = std::max(trace[k].conditional_phase, trace[k + 1].conditional_phase);
      const double target = kPi + 2.0 * kPi * std::ceil((lo - kPi) / (2.0 * kPi));
      if (target <= hi) return solve(s, trace[k].duration, trace[k + 1].duration);
    }
    return std::nullopt;
  }

  double decay_factor(const CzSchedule& s) const {
    const double rate = 0.5 * (1.0 / (1000.0 * p.t1_us[0]) + 1.0 / (1000.0 * p.t1_us[1]));
    return std::exp(-c.decay_weight * rate * s.total_time());
  }

  static void set_virtual_z(CzSchedule& s, const GateReport& r) {
    s.virtual_z = {wrap(r.phases[2] - r.phases[0]), wrap(r.phases[1] - r.phases[0])};
  }

  // Re-solve the duration near the current value, set virtual Z, score.
  std::optional<std::pair<CzSchedule, double>> objective(CzSchedule s) {
    try {
      const double tau = s.interaction_duration;
      const double step = std::max(0.5, c.duration_step);
      auto root = solve(s, std::max(0.0, tau - step), std::min(c.max_duration, tau + step));
      if (!root) return std::nullopt;
      s.interaction_duration = *root;
      auto r = evaluate(s);
      if (!r.valid) return std::nullopt;
      set_virtual_z(s, r);
      r = evaluate(s);
      return std::make_pair(s, r.average_fidelity * decay_factor(s));
    } catch (const ContractViolation&) {
      return std::nullopt;
    } catch (const InvalidArgument&) {
      return std::nullopt;
    }
  }
};

}  // namespace

CalibrationResult calibrate_cz(const DeviceParams& p, const CzSchedule& initial, const GateOptions& o,
                               const CalibrationOptions& c) {
  const DeviceParams g = gate_device(p, o);
  validate_cz(g, initial);
  Calibrator cal{p, o, c};
  CalibrationResult out;

  const auto first = cal.evaluate(initial);
  if (!first.valid) {
    throw InvalidArgument("initial cz schedule leaks more than the limit; calibration needs a valid starting point");
  }

  // Stage 1: duration for a π conditional phase.
  out.phase_trace = cal.scan(initial);
  auto tau = cal.solve_from_scan(initial, out.phase_trace);
  if (!tau) {
    double lo = out.phase_trace.front().conditional_phase, hi = lo;
    for (const auto& t : out.phase_trace) {
      lo = std::min(lo, t.conditional_phase);
      hi = std::max(hi, t.conditional_phase);
    }
    std::ostringstream msg;
    msg << "conditional phase π not reachable for durations in [0, " << c.max_duration << "] ns; achievable range ["
        << lo << ", " << hi << "] rad";
    throw InvalidArgument(msg.str());
  }
  CzSchedule best = initial;
  best.interaction_duration = *tau;

  // Stage 2: virtual Z from the single-qubit phases.
  Calibrator::set_virtual_z(best, cal.evaluate(best));
  double best_score = cal.evaluate(best).average_fidelity * cal.decay_factor(best);

  // Stage 3: coordinate descent.
  const double lowest = filter_normal_modes(g).front().frequency;
  struct Axis {
    double CzSchedule::*field;
    double lo, hi, step;
  };
  const std::array<Axis, 4> axes{{
      {&CzSchedule::load_ramp, c.ramp_bounds[0], c.ramp_bounds[1], 6.0},
      {&CzSchedule::retrieve_ramp, c.ramp_bounds[0], c.ramp_bounds[1], 6.0},
      {&CzSchedule::q2_ramp, c.q2_ramp_bounds[0], c.q2_ramp_bounds[1], 4.0},
      {&CzSchedule::interaction_frequency, c.min_interaction_frequency, lowest - c.interaction_margin, 0.06},
  }};
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  for (int sweep = 0; c.refine && sweep < c.max_sweeps; ++sweep) {
    const double start_score = best_score;
    for (const auto& axis : axes) {
      const double x0 = best.*axis.field;
      double a = std::max(axis.lo, x0 - axis.step), b = std::min(axis.hi, x0 + axis.step);
      if (!(b > a)) continue;
      auto score_at = [&](double x) {
        CzSchedule trial = best;
        trial.*axis.field = x;
        auto r = cal.objective(trial);
        if (r && r->second > best_score) {
          best = r->first;
          best_score = r->second;
        }
        return r ? r->second : 0.0;
      };
      double x1 = b - invphi * (b - a), x2 = a + invphi * (b - a);
      double f1 = score_at(x1), f2 = score_at(x2);
      for (int it = 0; it < 8; ++it) {
        if (f1 > f2) {
          b = x2;
          x2 = x1;
          f2 = f1;
          x1 = b - invphi * (b - a);
          f1 = score_at(x1);
        } else {
          a = x1;
          x1 = x2;
          f1 = f2;
          x2 = a + invphi * (b - a);
          f2 = score_at(x2);
        }
      }
    }
    out.sweeps = sweep + 1;
    if (best_score - start_score < c.gain_tolerance) break;
  }

  out.schedule = best;
  out.report = cal.evaluate(best);
  out.objective = best_score;
  out.evaluations = cal.evaluations;
  return out;
}

// ---------------------------------------------------------------- Bell state

BellResult bell_experiment(const DeviceParams& p, const CzSchedule& s, const GateOptions& o, const BellOptions& bell) {
  const DeviceParams g = gate_device(p, o);
  if (bell.pulse_width < 0) throw InvalidArgument("pulse_width must be non-negative");
  PulseSchedule pulse = build_cz_pulse(g, s, o, 0.5 * bell.pulse_width);
  const double total = pulse.total_time();
  const double half = kPi / 2;
  pulse.event({0.0, 1, EventKind::kRotation, half, half})
      .event({0.0, 2, EventKind::kRotation, half, half})
      .event({total, 1, EventKind::kVirtualZ, 0.0, s.virtual_z[0]})
      .event({total, 2, EventKind::kVirtualZ, 0.0, s.virtual_z[1]})
      .event({total, 2, EventKind::kRotation, half, -half});

  const HamiltonianModel model(g);
  const IdleFrame frame = IdleFrame::at(model, o.idle_q1, o.idle_q2);
  const ComplexVector gg = frame.state(*model.basis(), model.basis()->qubit_label(0, 0));
  const auto project = computational_projector(model, frame, total);

  BellResult out;
  Matrix4c rho_c;
  if (bell.decoherence) {
    OpenSystemOptions open{bell.realizations, bell.seed, o.threads};
    const ComplexMatrix rho = run_schedule_open(model, frame, pulse, gg * gg.adjoint(), open, o.propagation);
    rho_c = project * rho * project.adjoint();
  } else {
    const ComplexVector psi = run_schedule(model, frame, pulse, gg, o.propagation);
    const Eigen::Vector4cd c = project * psi;
    rho_c = c * c.adjoint();
  }
  const double trace = rho_c.trace().real();
  out.leaked_population = std::max(0.0, 1.0 - trace);
  out.simulated = rho_c / trace;

  const auto settings = all_settings();
  out.measurements = bell.shots == 0 ? exact_measurements(out.simulated, settings)
                                     : simulate_measurements(out.simulated, settings, bell.shots, bell.seed + 1);
  out.reconstructed = reconstruct_state(out.measurements);
  if (bell.shots > 0 && bell.bootstrap_resamples > 1) {
    out.bootstrap = bootstrap(out.measurements, bell.bootstrap_resamples, bell.seed + 2, o.threads);
  }

  out.report = conditional_phase(p, s, o);
  out.report.decoherence = bell.decoherence;
  out.report.bell_fidelity = bell_fidelity(out.reconstructed.rho);
  out.report.concurrence = concurrence(out.reconstructed.rho);
  return out;
}

}  // namespace mmqed
