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

#pragma once

#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "mmqed/hamiltonian.hpp"
#include "mmqed/propagate.hpp"
#include "mmqed/schedule.hpp"

namespace mmqed {

/// Dressed eigenbasis at the idle point and the qubit transition
/// frequencies that define each qubit's rotating frame.
struct IdleFrame {
  DressedBasis dressed;
  double f1 = 0;  // E(eg) − E(gg), GHz
  double f2 = 0;  // E(ge) − E(gg), GHz

  static IdleFrame at(const HamiltonianModel& model, double nu_q1, double nu_q2);

  /// Dressed state adiabatically connected to the bare label.
  ComplexVector state(const Basis& basis, const OccupationLabel& label) const;
};

/// Unitary for an ideal microwave event on a full (multi-sector) model.
/// Rotations act on pairs of dressed states differing by one excitation of
/// the driven qubit at its 0-1 transition; virtual Z multiplies dressed states
/// by exp(−iθ·level).
ComplexMatrix event_operator(const HamiltonianModel& model, const IdleFrame& frame, const MicrowaveEvent& event);

HamiltonianFn schedule_hamiltonian(const HamiltonianModel& model, const PulseSchedule& schedule);

/// Closed-system run from t = 0 to the schedule end with events applied.
ComplexVector run_schedule(const HamiltonianModel& model, const IdleFrame& frame, const PulseSchedule& schedule,
                           const ComplexVector& psi0, const PropagationOptions& options = {});

/// Noise operators for both qubits of a model using the device T1 and
/// Ramsey σ values.
std::vector<QubitNoise> device_noise(const HamiltonianModel& model);

ComplexMatrix run_schedule_open(const HamiltonianModel& model, const IdleFrame& frame, const PulseSchedule& schedule,
                                const ComplexMatrix& rho0, const OpenSystemOptions& open,
                                const PropagationOptions& options = {});

/// Rows: dressed computational states |q1 q2⟩ in order gg, ge, eg, ee, with
/// the rotating-frame phase exp(i2π(q1·f1 + q2·f2)·t) removed.
Eigen::Matrix<Complex, 4, Eigen::Dynamic> computational_projector(const HamiltonianModel& model,
                                                                 const IdleFrame& frame, double t);

/// Population of the dressed states with the given qubit excited (level 1),
/// summed over everything else.
double dressed_excited_population(const HamiltonianModel& model, const IdleFrame& frame, const ComplexVector& psi,
                                  int qubit);

struct ExperimentResult {
  std::string parameter;
  std::vector<double> grid;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> values;  // [point][column]
  std::map<std::string, std::string> metadata;

  std::vector<double> column(const std::string& name) const;
  void write_csv(std::ostream& out) const;
};

struct LzConfig {
  std::vector<double> ramp_times;  // ns
  double total_time = 110.0;       // ns
  double start_frequency = 6.2;    // GHz
  double top_frequency = 8.1;      // GHz
  double other_frequency = 5.3;    // qubit 2, GHz
  RampShape shape = RampShape::kLinear;
  TransmonParams transmon;         // for flux-linear ramps
  bool dressed_states = true;      // false: bare |e⟩ preparation and bare readout
  bool decoherence = false;
  int realizations = 1;
  std::uint64_t seed = 0;
  PropagationOptions propagation;
};

/// Up-ramp(t), hold(T − 2t), down-ramp(t) of qubit 1 prepared in its dressed
/// excited state. Columns: p_e (final dressed qubit-1 population).
ExperimentResult lz_ramp_experiment(const DeviceParams& p, const LzConfig& config);

/// Dressed qubit-1-like population at the top after a single up-ramp.
double lz_single_passage_residual(const DeviceParams& p, const LzConfig& config, double ramp_time);

/// Dominant fringe frequency (GHz) of y(t) over points with t > t_min, after
/// removing a linear trend, searched on [f_min, f_max].
double fringe_peak_frequency(const std::vector<double>& t, const std::vector<double>& y, double t_min = 10.0,
                             double f_min = 0.05, double f_max = 0.6);

/// Two-level crossing H = [[v·t/2, g], [g, −v·t/2]] (GHz, v in GHz/ns):
/// probability of staying in the diabatic state, exp(−4π²g²/|v|).
double landau_zener_probability(double g, double v);

/// Same quantity by propagating from −half_window to +half_window (ns).
double landau_zener_numeric(double g, double v, double half_window, const PropagationOptions& options = {});

struct LoadConfig {
  double idle_q1 = 6.2;
  double idle_q2 = 5.3;
  double park_q1 = 7.6;
  RampShape shape = RampShape::kGapAdapted;
  int segments = 24;
  TransmonParams transmon;
  PropagationOptions propagation;
};

struct LoadResult {
  LabeledState state;
  std::vector<double> mode_populations;  // single-photon normal modes, ascending frequency
  double filter_population = 0;          // all filter single-photon states
  double qubit1_population = 0;          // dressed qubit 1 at the final frequencies
  double qubit2_population = 0;
};

/// Qubit 1 from its dressed excited state at idle, ramped to the park point.
LoadResult load_photon(const DeviceParams& p, double ramp_time, const LoadConfig& config = {});

/// Photon in the dressed lowest-mode state at the park point, qubit 1 ramped
/// back to idle by the reversed profile.
LoadResult retrieve_photon(const DeviceParams& p, double ramp_time, const LoadConfig& config = {});

/// Load followed immediately by retrieve; returns the final state.
LoadResult load_and_retrieve(const DeviceParams& p, double load_time, double retrieve_time,
                             const LoadConfig& config = {});

struct FringeFit {
  double frequency = 0;  // GHz
  double residual = 0;   // ‖fit error‖ / ‖signal − mean‖
  double amplitude = 0;
};

/// Least-squares fit of s(τ) ≈ a·exp(−i2πfτ) + b.
FringeFit fit_complex_fringe(const std::vector<double>& tau, const std::vector<Complex>& signal,
                             double f_max = 0.45);

struct StarkConfig {
  std::vector<double> nu_q2f;                 // GHz
  std::vector<double> tau;                    // ns
  double reference = 5.3;                     // GHz
  double idle_q1 = 6.2;
  double park_q1 = 8.6;
  double load_ramp = 25.0;                    // ns
  double q2_ramp = 30.0;                      // ns
  int segments = 24;
  bool decoherence = false;
  int realizations = 1;
  std::uint64_t seed = 0;
  double residual_limit = 0.2;
  PropagationOptions propagation;
};

/// Static oracle: energy of the loaded-photon branch with qubit 2 at nu_q2f
/// minus the same branch at the reference frequency.
double stark_oracle(const DeviceParams& p, double park_q1, double nu_q2f, double reference);

/// Columns: fringe_frequency, stark_shift (relative to the reference point),
/// oracle, residual, reliable.
ExperimentResult stark_ramsey(const DeviceParams& p, const StarkConfig& config);

}  // namespace mmqed
