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

#include "mmqed/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <sstream>

#include "mmqed/parallel.hpp"

namespace mmqed {

namespace {

int qubit_level(const OccupationLabel& l, int qubit) { return qubit == 1 ? l.q1 : l.q2; }

double mode_band_margin(const DeviceParams& p) { return std::max(p.g_q1f, p.g_q2f); }

std::vector<double> make_profile(RampShape shape, const DeviceParams& p, const TransmonParams& t, int qubit,
                                 double from, double to, double other, int tracked_rank, int segments) {
  switch (shape) {
    case RampShape::kLinear:
      return {from, to};
    case RampShape::kFluxLinear:
      return flux_linear_profile(t, from, to);
    case RampShape::kGapAdapted:
      return gap_adapted_profile(p, qubit, from, to, other, tracked_rank, segments);
  }
  return {from, to};
}

std::vector<double> reversed(std::vector<double> v) {
  std::reverse(v.begin(), v.end());
  return v;
}

// Single-photon amplitude in each filter normal mode.
std::vector<double> normal_mode_populations(const DeviceParams& p, const Basis& basis, const ComplexVector& psi) {
  const auto modes = filter_normal_modes(p);
  std::vector<double> out;
  for (const auto& m : modes) {
    Complex amp = 0;
    for (int s = 0; s < p.n_modes; ++s) {
      OccupationLabel l{0, 0, std::vector<int>(static_cast<std::size_t>(p.n_modes), 0)};
      l.photons[static_cast<std::size_t>(s)] = 1;
      if (auto i = basis.find(l)) amp += m.site_amplitudes(s) * psi(static_cast<Eigen::Index>(*i));
    }
    out.push_back(std::norm(amp));
  }
  return out;
}

// Rank of the single-excitation eigenstate closest to a photon in the lowest
// normal mode.
int photon_branch_rank(const HamiltonianModel& sector1, double nu_q1, double nu_q2) {
  const DeviceParams& p = sector1.params();
  const Basis& basis = *sector1.basis();
  const auto modes = filter_normal_modes(p);
  ComplexVector photon = ComplexVector::Zero(sector1.dimension());
  for (int s = 0; s < p.n_modes; ++s) {
    OccupationLabel l{0, 0, std::vector<int>(static_cast<std::size_t>(p.n_modes), 0)};
    l.photons[static_cast<std::size_t>(s)] = 1;
    photon(static_cast<Eigen::Index>(basis.index_of(l))) = modes.front().site_amplitudes(s);
  }
  const auto eig = eig_hermitian(sector1(nu_q1, nu_q2));
  Eigen::Index best = 0;
  (eig.vectors.adjoint() * photon).cwiseAbs2().maxCoeff(&best);
  return static_cast<int>(best);
}

void require_band_crossing(const DeviceParams& p, double below, double above) {
  const auto modes = filter_normal_modes(p);
  const double margin = mode_band_margin(p);
  if (!(below < modes.front().frequency - margin)) {
    std::ostringstream msg;
    msg << "start frequency " << below << " GHz is not below the filter band (lowest mode " << modes.front().frequency
        << " GHz)";
    throw InvalidArgument(msg.str());
  }
  if (!(above > modes.back().frequency + margin)) {
    std::ostringstream msg;
    msg << "top frequency " << above << " GHz is not above the filter band (highest mode " << modes.back().frequency
        << " GHz); the crossing would be incomplete";
    throw InvalidArgument(msg.str());
  }
}

double excited_population_rho(const HamiltonianModel& model, const IdleFrame& frame, const ComplexMatrix& rho,
                              int qubit) {
  const Basis& b = *model.basis();
  double total = 0;
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (qubit_level(b.label(i), qubit) != 1) continue;
    const ComplexVector d = frame.dressed.vector(i);
    total += (d.adjoint() * rho * d)(0, 0).real();
  }
  return total;
}

}  // namespace

IdleFrame IdleFrame::at(const HamiltonianModel& model, double nu_q1, double nu_q2) {
  IdleFrame f;
  f.dressed = dress(model(nu_q1, nu_q2));
  const HamiltonianModel sector1(model.params(), 1);
  const auto d1 = dress(sector1(nu_q1, nu_q2));
  const Basis& b1 = *sector1.basis();
  // The vacuum has zero energy in this Hamiltonian.
  f.f1 = d1.energy(b1.index_of(b1.qubit_label(1, 0)));
  f.f2 = d1.energy(b1.index_of(b1.qubit_label(0, 1)));
  return f;
}

ComplexVector IdleFrame::state(const Basis& basis, const OccupationLabel& label) const {
  return dressed.vector(basis.index_of(label));
}

ComplexMatrix event_operator(const HamiltonianModel& model, const IdleFrame& frame, const MicrowaveEvent& event) {
  if (event.qubit != 1 && event.qubit != 2) throw InvalidArgument("event qubit must be 1 or 2");
  const Basis& b = *model.basis();
  const Eigen::Index dim = model.dimension();
  ComplexMatrix block = ComplexMatrix::Identity(dim, dim);
  if (event.kind == EventKind::kVirtualZ) {
    for (std::size_t i = 0; i < b.size(); ++i) {
      const auto k = static_cast<Eigen::Index>(i);
      block(k, k) = std::polar(1.0, -event.angle * qubit_level(b.label(i), event.qubit));
    }
  } else {
    const double f = event.qubit == 1 ? frame.f1 : frame.f2;
    // Lab-frame axis of a pulse phase-locked to the rotating frame.
    const ComplexMatrix r = rotation(event.axis_phase + kTwoPi * f * event.time, event.angle);
    for (std::size_t i = 0; i < b.size(); ++i) {
      const auto& lo = b.label(i);
      if (qubit_level(lo, event.qubit) != 0) continue;
      OccupationLabel hi = lo;
      (event.qubit == 1 ? hi.q1 : hi.q2) = 1;
      const auto j = b.find(hi);
      if (!j) continue;
      const auto a = static_cast<Eigen::Index>(i), c = static_cast<Eigen::Index>(*j);
      block(a, a) = r(0, 0);
      block(a, c) = r(0, 1);
      block(c, a) = r(1, 0);
      block(c, c) = r(1, 1);
    }
  }
  const ComplexMatrix d = frame.dressed.dressing();
  return d * block * d.adjoint();
}

HamiltonianFn schedule_hamiltonian(const HamiltonianModel& model, const PulseSchedule& schedule) {
  return [&model, &schedule](double t) { return model(schedule.frequency(1, t), schedule.frequency(2, t)); };
}

ComplexVector run_schedule(const HamiltonianModel& model, const IdleFrame& frame, const PulseSchedule& schedule,
                           const ComplexVector& psi0, const PropagationOptions& options) {
  schedule.validate();
  if (psi0.size() != model.dimension()) throw InvalidArgument("initial state does not match the model dimension");
  const auto h = schedule_hamiltonian(model, schedule);
  ComplexVector psi = psi0;
  double t = 0;
  for (const auto& e : schedule.events()) {
    psi = propagate(h, psi, t, e.time, options);
    psi = event_operator(model, frame, e) * psi;
    t = e.time;
  }
  return propagate(h, psi, t, schedule.total_time(), options);
}

std::vector<QubitNoise> device_noise(const HamiltonianModel& model) {
  const auto& p = model.params();
  std::vector<QubitNoise> out;
  for (int q = 1; q <= 2; ++q) {
    const auto k = static_cast<std::size_t>(q - 1);
    out.push_back({model.qubit_lowering(q), model.qubit_number(q), p.t1_us[k], p.ramsey_sigma_ns[k]});
  }
  return out;
}

ComplexMatrix run_schedule_open(const HamiltonianModel& model, const IdleFrame& frame, const PulseSchedule& schedule,
                                const ComplexMatrix& rho0, const OpenSystemOptions& open,
                                const PropagationOptions& options) {
  schedule.validate();
  std::vector<TimedOperation> ops;
  for (const auto& e : schedule.events()) ops.push_back({e.time, event_operator(model, frame, e)});
  const auto noise = device_noise(model);
  return propagate_open(schedule_hamiltonian(model, schedule), rho0, noise, ops, 0.0, schedule.total_time(), open,
                        options);
}

Eigen::Matrix<Complex, 4, Eigen::Dynamic> computational_projector(const HamiltonianModel& model,
                                                                 const IdleFrame& frame, double t) {
  const Basis& b = *model.basis();
  Eigen::Matrix<Complex, 4, Eigen::Dynamic> c(4, model.dimension());
  for (int a = 0; a < 2; ++a) {
    for (int q = 0; q < 2; ++q) {
      const ComplexVector d = frame.state(b, b.qubit_label(a, q));
      const Complex phase = std::polar(1.0, kTwoPi * (a * frame.f1 + q * frame.f2) * t);
      c.row(2 * a + q) = phase * d.adjoint();
    }
  }
  return c;
}

double dressed_excited_population(const HamiltonianModel& model, const IdleFrame& frame, const ComplexVector& psi,
                                  int qubit) {
  const Basis& b = *model.basis();
  double total = 0;
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (qubit_level(b.label(i), qubit) == 1) total += std::norm(frame.dressed.vector(i).dot(psi));
  }
  return total;
}

std::vector<double> ExperimentResult::column(const std::string& name) const {
  const auto it = std::find(columns.begin(), columns.end(), name);
  if (it == columns.end()) throw InvalidArgument("no column '" + name + "'");
  const auto c = static_cast<std::size_t>(it - columns.begin());
  std::vector<double> out;
  for (const auto& row : values) out.push_back(row[c]);
  return out;
}

void ExperimentResult::write_csv(std::ostream& out) const {
  out << std::setprecision(12) << parameter;
  for (const auto& c : columns) out << "," << c;
  out << "\n";
  for (std::size_t k = 0; k < grid.size(); ++k) {
    out << grid[k];
    for (double v : values[k]) out << "," << v;
    out << "\n";
  }
}

// ---------------------------------------------------------------- Landau–Zener

double landau_zener_probability(double g, double v) {
  if (v == 0) throw InvalidArgument("sweep rate must be non-zero");
  return std::exp(-kTwoPi * kTwoPi * g * g / std::abs(v));
}

double landau_zener_numeric(double g, double v, double half_window, const PropagationOptions& options) {
  if (!(half_window > 0)) throw InvalidArgument("half_window must be positive");
  auto h = [g, v](double t) {
    ComplexMatrix m(2, 2);
    m << 0.5 * v * t, g, g, -0.5 * v * t;
    return m;
  };
  ComplexVector psi = ComplexVector::Zero(2);
  psi(0) = 1.0;
  return std::norm(propagate(h, psi, -half_window, half_window, options)(0));
}

namespace {

HamiltonianModel lz_model(const DeviceParams& p) {
  DeviceParams q = p;
  q.excitation_cap = 1;
  return HamiltonianModel(q);
}

PulseSchedule lz_schedule(const DeviceParams& p, const LzConfig& c, double ramp, bool round_trip) {
  const HamiltonianModel sector1(p, 1);
  const int rank = c.shape == RampShape::kGapAdapted
                       ? qubit_branch_rank(sector1, c.start_frequency, c.other_frequency, 1)
                       : 0;
  const auto up = make_profile(c.shape, p, c.transmon, 1, c.start_frequency, c.top_frequency, c.other_frequency, rank,
                               24);
  PulseSchedule s(c.start_frequency, c.other_frequency);
  s.ramp(1, ramp, up);
  if (round_trip) {
    s.hold(1, c.total_time - 2.0 * ramp);
    s.ramp(1, ramp, reversed(up));
  }
  s.hold(2, s.end_time(1));
  return s;
}

}  // namespace

ExperimentResult lz_ramp_experiment(const DeviceParams& p, const LzConfig& c) {
  require_band_crossing(p, c.start_frequency, c.top_frequency);
  for (double t : c.ramp_times) {
    if (!(t > 0) || 2.0 * t > c.total_time + 1e-12) {
      throw InvalidArgument("ramp times must satisfy 0 < 2t <= total_time");
    }
  }
  const HamiltonianModel model = lz_model(p);
  const IdleFrame frame = IdleFrame::at(model, c.start_frequency, c.other_frequency);
  const Basis& basis = *model.basis();
  const std::size_t excited = basis.index_of(basis.qubit_label(1, 0));
  ComplexVector psi0 = frame.state(basis, basis.qubit_label(1, 0));
  IdleFrame readout = frame;
  if (!c.dressed_states) {
    psi0 = ComplexVector::Unit(model.dimension(), static_cast<Eigen::Index>(excited));
    // Identity dressing turns the dressed readout into a bare one.
    readout.dressed.eig.vectors = ComplexMatrix::Identity(model.dimension(), model.dimension());
    for (std::size_t i = 0; i < basis.size(); ++i) readout.dressed.eigen_index[i] = i;
  }

  ExperimentResult out;
  out.parameter = "ramp_time_ns";
  out.grid = c.ramp_times;
  out.columns = {"p_e"};
  out.values.assign(c.ramp_times.size(), {0.0});
  parallel_for(c.ramp_times.size(), [&](std::size_t k) {
    const PulseSchedule s = lz_schedule(p, c, c.ramp_times[k], true);
    if (c.decoherence) {
      OpenSystemOptions open{c.realizations, c.seed, 1};
      const ComplexMatrix rho = run_schedule_open(model, frame, s, psi0 * psi0.adjoint(), open, c.propagation);
      out.values[k][0] = excited_population_rho(model, readout, rho, 1);
    } else {
      out.values[k][0] =
          dressed_excited_population(model, readout, run_schedule(model, frame, s, psi0, c.propagation), 1);
    }
  });
  out.metadata = {{"dt_ns", std::to_string(c.propagation.dt)},
                  {"decoherence", c.decoherence ? "true" : "false"},
                  {"realizations", std::to_string(c.decoherence ? c.realizations : 1)},
                  {"ramp_shape", to_string(c.shape)},
                  {"states", c.dressed_states ? "dressed" : "bare"}};
  return out;
}

double lz_single_passage_residual(const DeviceParams& p, const LzConfig& c, double ramp_time) {
  require_band_crossing(p, c.start_frequency, c.top_frequency);
  const HamiltonianModel model = lz_model(p);
  const IdleFrame start = IdleFrame::at(model, c.start_frequency, c.other_frequency);
  const IdleFrame top = IdleFrame::at(model, c.top_frequency, c.other_frequency);
  const ComplexVector psi0 = start.state(*model.basis(), model.basis()->qubit_label(1, 0));
  const PulseSchedule s = lz_schedule(p, c, ramp_time, false);
  const ComplexVector psi = run_schedule(model, start, s, psi0, c.propagation);
  return std::norm(top.state(*model.basis(), model.basis()->qubit_label(1, 0)).dot(psi));
}

double fringe_peak_frequency(const std::vector<double>& t, const std::vector<double>& y, double t_min, double f_min,
                             double f_max) {
  if (t.size() != y.size()) throw InvalidArgument("fringe series lengths differ");
  std::vector<double> ts, ys;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] > t_min) {
      ts.push_back(t[i]);
      ys.push_back(y[i]);
    }
  }
  if (ts.size() < 4) throw InvalidArgument("too few points above t_min for a fringe spectrum");
  // Remove a least-squares line so the slow envelope does not dominate.
  const double n = static_cast<double>(ts.size());
  double st = 0, sy = 0, stt = 0, sty = 0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    st += ts[i];
    sy += ys[i];
    stt += ts[i] * ts[i];
    sty += ts[i] * ys[i];
  }
  const double slope = (n * sty - st * sy) / (n * stt - st * st);
  const double icpt = (sy - slope * st) / n;
  for (std::size_t i = 0; i < ts.size(); ++i) ys[i] -= icpt + slope * ts[i];

  constexpr int kBins = 4000;
  double best_f = f_min, best_a = -1;
  for (int k = 0; k <= kBins; ++k) {
    const double f = f_min + (f_max - f_min) * k / kBins;
    Complex acc = 0;
    for (std::size_t i = 0; i < ts.size(); ++i) acc += ys[i] * std::polar(1.0, -kTwoPi * f * ts[i]);
    if (std::abs(acc) > best_a) {
      best_a = std::abs(acc);
      best_f = f;
    }
  }
  return best_f;
}

// ---------------------------------------------------------------- load / retrieve

namespace {

struct LoadSetup {
  HamiltonianModel sector1;
  std::vector<double> up;
};

LoadSetup load_setup(const DeviceParams& p, const LoadConfig& c) {
  require_band_crossing(p, c.idle_q1, c.park_q1);
  HamiltonianModel sector1(p, 1);
  const int rank = qubit_branch_rank(sector1, c.idle_q1, c.idle_q2, 1);
  auto up = make_profile(c.shape, p, c.transmon, 1, c.idle_q1, c.park_q1, c.idle_q2, rank, c.segments);
  return {std::move(sector1), std::move(up)};
}

LoadResult summarize(const HamiltonianModel& sector1, const ComplexVector& psi, double nu_q1, double nu_q2) {
  const DeviceParams& p = sector1.params();
  const Basis& b = *sector1.basis();
  const IdleFrame f = IdleFrame::at(sector1, nu_q1, nu_q2);
  LoadResult r;
  r.state = LabeledState{psi, sector1.basis()};
  r.mode_populations = normal_mode_populations(p, b, psi);
  for (double m : r.mode_populations) r.filter_population += m;
  r.qubit1_population = std::norm(f.state(b, b.qubit_label(1, 0)).dot(psi));
  r.qubit2_population = std::norm(f.state(b, b.qubit_label(0, 1)).dot(psi));
  return r;
}

}  // namespace

LoadResult load_photon(const DeviceParams& p, double ramp_time, const LoadConfig& c) {
  const auto setup = load_setup(p, c);
  const auto& m = setup.sector1;
  const IdleFrame idle = IdleFrame::at(m, c.idle_q1, c.idle_q2);
  PulseSchedule s(c.idle_q1, c.idle_q2);
  s.ramp(1, ramp_time, setup.up).align();
  const ComplexVector psi = run_schedule(m, idle, s, idle.state(*m.basis(), m.basis()->qubit_label(1, 0)), c.propagation);
  return summarize(m, psi, c.park_q1, c.idle_q2);
}

LoadResult retrieve_photon(const DeviceParams& p, double ramp_time, const LoadConfig& c) {
  const auto setup = load_setup(p, c);
  const auto& m = setup.sector1;
  const auto eig = eig_hermitian(m(c.park_q1, c.idle_q2));
  const ComplexVector psi0 = eig.vectors.col(photon_branch_rank(m, c.park_q1, c.idle_q2));
  const IdleFrame park = IdleFrame::at(m, c.park_q1, c.idle_q2);
  PulseSchedule s(c.park_q1, c.idle_q2);
  s.ramp(1, ramp_time, reversed(setup.up)).align();
  const ComplexVector psi = run_schedule(m, park, s, psi0, c.propagation);
  return summarize(m, psi, c.idle_q1, c.idle_q2);
}

LoadResult load_and_retrieve(const DeviceParams& p, double load_time, double retrieve_time, const LoadConfig& c) {
  const auto setup = load_setup(p, c);
  const auto& m = setup.sector1;
  const IdleFrame idle = IdleFrame::at(m, c.idle_q1, c.idle_q2);
  PulseSchedule s(c.idle_q1, c.idle_q2);
  s.ramp(1, load_time, setup.up).ramp(1, retrieve_time, reversed(setup.up)).align();
  const ComplexVector psi = run_schedule(m, idle, s, idle.state(*m.basis(), m.basis()->qubit_label(1, 0)), c.propagation);
  return summarize(m, psi, c.idle_q1, c.idle_q2);
}

// ---------------------------------------------------------------- Stark Ramsey

FringeFit fit_complex_fringe(const std::vector<double>& tau, const std::vector<Complex>& s, double f_max) {
  if (tau.size() != s.size() || tau.size() < 3) throw InvalidArgument("fringe fit needs at least three samples");
  const std::size_t n = tau.size();
  Complex mean = 0;
  for (const auto& v : s) mean += v;
  mean /= static_cast<double>(n);
  double spread = 0;
  for (const auto& v : s) spread += std::norm(v - mean);
  spread = std::sqrt(spread);
  if (spread < 1e-9) return {0.0, 0.0, 0.0};

  // For fixed f the model is linear in (a, b); solve the 2×2 normal equations.
  auto solve = [&](double f, Complex* a_out) {
    Complex s_e = 0, s_1 = 0, e_sum = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const Complex e = std::polar(1.0, -kTwoPi * f * tau[i]);
      s_e += std::conj(e) * s[i];
      s_1 += s[i];
      e_sum += e;
    }
    const double nn = static_cast<double>(n);
    const Complex det = nn * nn - std::norm(e_sum);
    Complex a = 0, b = s_1 / nn;
    if (std::abs(det) > 1e-12) {
      a = (nn * s_e - std::conj(e_sum) * s_1) / det;
      b = (s_1 - e_sum * a) / nn;
    }
    double r = 0;
    for (std::size_t i = 0; i < n; ++i) r += std::norm(s[i] - a * std::polar(1.0, -kTwoPi * f * tau[i]) - b);
    if (a_out) *a_out = a;
    return r;
  };

  const auto [lo, hi] = std::minmax_element(tau.begin(), tau.end());
  const double span = *hi - *lo;
  const double step = 1.0 / (20.0 * span);
  double best_f = 0, best_r = solve(0.0, nullptr);
  for (double f = -f_max; f <= f_max; f += step) {
    const double r = solve(f, nullptr);
    if (r < best_r) {
      best_r = r;
      best_f = f;
    }
  }
  double a = best_f - step, b = best_f + step;
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - invphi * (b - a), d = a + invphi * (b - a);
  double fc = solve(c, nullptr), fd = solve(d, nullptr);
  for (int it = 0; it < 100 && b - a > 1e-12; ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = solve(c, nullptr);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = solve(d, nullptr);
    }
  }
  FringeFit out;
  out.frequency = 0.5 * (a + b);
  Complex amp;
  out.residual = std::sqrt(solve(out.frequency, &amp)) / spread;
  out.amplitude = std::abs(amp);
  return out;
}

double stark_oracle(const DeviceParams& p, double park_q1, double nu_q2f, double reference) {
  const HamiltonianModel sector1(p, 1);
  const int rank = photon_branch_rank(sector1, park_q1, reference);
  return eig_hermitian(sector1(park_q1, nu_q2f)).values(rank) - eig_hermitian(sector1(park_q1, reference)).values(rank);
}

ExperimentResult stark_ramsey(const DeviceParams& p, const StarkConfig& c) {
  if (c.nu_q2f.empty() || c.tau.empty()) throw InvalidArgument("Stark grids must be non-empty");
  require_band_crossing(p, c.idle_q1, c.park_q1);
  const double tau_max = *std::max_element(c.tau.begin(), c.tau.end());
  if (*std::min_element(c.tau.begin(), c.tau.end()) < 0) throw InvalidArgument("tau must be non-negative");
  for (double nu : c.nu_q2f) {
    if (nu >= c.park_q1 - mode_band_margin(p)) {
      throw InvalidArgument("qubit 2 target must stay below the qubit 1 park frequency");
    }
  }

  DeviceParams cap1 = p;
  cap1.excitation_cap = 1;
  const HamiltonianModel model(cap1);
  const HamiltonianModel sector1(cap1, 1);
  const IdleFrame frame = IdleFrame::at(model, c.idle_q1, c.reference);
  const ComplexVector gg = frame.state(*model.basis(), model.basis()->qubit_label(0, 0));

  const int q1_rank = qubit_branch_rank(sector1, c.idle_q1, c.reference, 1);
  const auto load = gap_adapted_profile(cap1, 1, c.idle_q1, c.park_q1, c.reference, q1_rank, c.segments);
  const int photon_rank = photon_branch_rank(sector1, c.park_q1, c.reference);

  // The reference point is always evaluated so shifts can be referenced to it.
  std::vector<double> targets{c.reference};
  for (double nu : c.nu_q2f) targets.push_back(nu);
  std::vector<std::vector<double>> q2_profiles;
  for (double nu : targets) {
    q2_profiles.push_back(gap_adapted_profile(cap1, 2, c.reference, nu, c.park_q1, photon_rank, c.segments));
  }

  const std::size_t nt = c.tau.size();
  std::vector<Complex> signal(targets.size() * nt);
  parallel_for(signal.size(), [&](std::size_t job) {
    const std::size_t g = job / nt;
    const double tau = c.tau[job % nt];
    PulseSchedule s(c.idle_q1, c.reference);
    s.ramp(1, c.load_ramp, load).hold(1, tau_max + 2.0 * c.q2_ramp).ramp(1, c.load_ramp, reversed(load));
    s.hold(2, c.load_ramp + tau_max - tau)
        .ramp(2, c.q2_ramp, q2_profiles[g])
        .hold(2, tau)
        .ramp(2, c.q2_ramp, reversed(q2_profiles[g]))
        .hold(2, c.load_ramp);
    s.event({0.0, 1, EventKind::kRotation, 0.0, std::numbers::pi / 2});
    const double end = s.total_time();
    std::array<double, 2> pe{};
    ComplexVector before;
    if (!c.decoherence) before = run_schedule(model, frame, s, gg, c.propagation);
    for (int axis = 0; axis < 2; ++axis) {
      const MicrowaveEvent last{end, 1, EventKind::kRotation, axis * std::numbers::pi / 2, std::numbers::pi / 2};
      if (c.decoherence) {
        PulseSchedule full = s;
        full.event(last);
        OpenSystemOptions open{c.realizations, c.seed, 1};
        pe[static_cast<std::size_t>(axis)] =
            excited_population_rho(model, frame, run_schedule_open(model, frame, full, gg * gg.adjoint(), open,
                                                                   c.propagation),
                                   1);
      } else {
        pe[static_cast<std::size_t>(axis)] =
            dressed_excited_population(model, frame, event_operator(model, frame, last) * before, 1);
      }
    }
    signal[job] = Complex(2.0 * pe[0] - 1.0, -(2.0 * pe[1] - 1.0));
  });

  std::vector<FringeFit> fits;
  for (std::size_t g = 0; g < targets.size(); ++g) {
    fits.push_back(fit_complex_fringe(c.tau, {signal.begin() + static_cast<std::ptrdiff_t>(g * nt),
                                              signal.begin() + static_cast<std::ptrdiff_t>((g + 1) * nt)}));
  }

  ExperimentResult out;
  out.parameter = "nu_q2f_ghz";
  out.grid = c.nu_q2f;
  out.columns = {"fringe_frequency", "stark_shift", "oracle", "residual", "reliable"};
  for (std::size_t g = 1; g < targets.size(); ++g) {
    const double shift = fits[g].frequency - fits[0].frequency;
    out.values.push_back({fits[g].frequency, shift, stark_oracle(cap1, c.park_q1, targets[g], c.reference),
                          fits[g].residual, fits[g].residual <= c.residual_limit ? 1.0 : 0.0});
  }
  out.metadata = {{"dt_ns", std::to_string(c.propagation.dt)},
                  {"decoherence", c.decoherence ? "true" : "false"},
                  {"realizations", std::to_string(c.decoherence ? c.realizations : 1)},
                  {"park_q1_ghz", std::to_string(c.park_q1)}};
  return out;
}

}  // namespace mmqed
