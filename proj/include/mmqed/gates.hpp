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

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "mmqed/dynamics.hpp"
#include "mmqed/hamiltonian.hpp"
#include "mmqed/schedule.hpp"
#include "mmqed/tomography.hpp"

namespace mmqed {

/// Photon-mediated CZ: qubit 1 loads a photon into the lowest filter mode,
/// qubit 2 is raised toward the filter for the interaction time, then both
/// return.
struct CzSchedule {
  double load_ramp = 20.0;              // ns
  double q2_ramp = 8.0;                 // ns
  double interaction_frequency = 6.85;  // GHz, below the lowest filter mode
  double interaction_duration = 23.0;   // ns
  double retrieve_ramp = 20.0;          // ns
  std::array<double, 2> virtual_z{0.0, 0.0};  // rad, applied after the gate

  double total_time() const { return load_ramp + 2.0 * q2_ramp + interaction_duration + retrieve_ramp; }
};

struct GateOptions {
  double idle_q1 = 6.2;
  double idle_q2 = 5.3;
  double park_q1 = 7.6;
  int qubit_levels = 3;   // overrides the device value
  int q1_segments = 24;
  int q2_segments = 16;
  double leakage_limit = 0.05;
  PropagationOptions propagation;
  int threads = 0;
};

/// Device used for gate simulations: qubit levels from the options and an
/// excitation cap of at least two.
DeviceParams gate_device(const DeviceParams& p, const GateOptions& options);

/// padding: idle hold at both ends on both qubits (microwave pulse timing).
PulseSchedule build_cz_pulse(const DeviceParams& p, const CzSchedule& s, const GateOptions& options,
                             double padding = 0.0);

void validate_cz(const DeviceParams& p, const CzSchedule& s);

struct GateReport {
  double conditional_phase = 0;        // rad, (−π, π]
  std::array<double, 4> phases{};      // gg, ge, eg, ee, rotating frame, before virtual Z
  std::array<double, 4> leakage{};     // population leaving the computational space
  double exchange_leakage = 0;         // max |⟨eg|U|ge⟩|², |⟨ge|U|eg⟩|²
  double average_fidelity = 0;         // vs CZ after virtual Z
  double total_time = 0;               // ns
  bool valid = true;                   // all leakages below the limit
  Matrix4c unitary = Matrix4c::Zero();  // computational block after virtual Z
  std::optional<double> bell_fidelity;
  std::optional<double> concurrence;
  bool decoherence = false;
};

/// Propagates the four dressed computational states through the schedule.
GateReport conditional_phase(const DeviceParams& p, const CzSchedule& s, const GateOptions& options = {});

/// −2π ∫ (E_ee + E_gg − E_eg − E_ge) dt along the schedule, with each energy
/// taken from the adiabatically connected eigenstate (energy rank within its
/// excitation block).
double conditional_phase_oracle(const DeviceParams& p, const CzSchedule& s, const GateOptions& options = {},
                                double sample_dt = 0.02);

/// Average gate fidelity (Tr(MM†) + |Tr M|²)/20 of a 4×4 block against CZ.
double cz_average_fidelity(const Matrix4c& u);

struct CalibrationOptions {
  double phase_tolerance = 0.02;      // rad
  double max_duration = 80.0;         // ns
  double duration_step = 2.0;         // ns, bracket scan
  double gain_tolerance = 1e-4;
  int max_sweeps = 6;
  std::array<double, 2> ramp_bounds{10.0, 40.0};     // ns, load and retrieve
  std::array<double, 2> q2_ramp_bounds{3.0, 20.0};   // ns
  double min_interaction_frequency = 6.5;            // GHz
  double interaction_margin = 0.08;                  // GHz below the lowest mode
  /// Weight of the T1 loss estimate in the objective (0: ideal fidelity only).
  double decay_weight = 1.0;
  bool refine = true;
};

struct CalibrationTracePoint {
  double duration = 0;           // ns
  double conditional_phase = 0;  // rad, unwrapped
};

struct CalibrationResult {
  CzSchedule schedule;
  GateReport report;
  std::vector<CalibrationTracePoint> phase_trace;
  double objective = 0;
  int evaluations = 0;
  int sweeps = 0;
};

/// Stage 1 sets the interaction duration so the conditional phase is π,
/// stage 2 sets virtual Z phases, stage 3 refines ramps and interaction
/// frequency by coordinate descent with golden-section line searches.
CalibrationResult calibrate_cz(const DeviceParams& p, const CzSchedule& initial, const GateOptions& options = {},
                               const CalibrationOptions& calibration = {});

struct BellOptions {
  bool decoherence = false;
  std::uint64_t shots = 10000;  // per setting; 0 uses exact probabilities
  int realizations = 400;
  std::uint64_t seed = 0;
  int bootstrap_resamples = 200;
  /// Width of each Gaussian microwave pulse. Rotations are instantaneous at
  /// the pulse centre, so the flux pulse is padded by half a width per side.
  double pulse_width = 20.0;  // ns
};

struct BellResult {
  GateReport report;
  Matrix4c simulated = Matrix4c::Zero();  // computational block, renormalized
  double leaked_population = 0;
  DensityMatrix reconstructed;
  MeasurementData measurements;
  std::optional<BootstrapResult> bootstrap;
};

/// π/2 on both qubits, CZ, virtual Z, −π/2 on qubit 2, then tomography.
BellResult bell_experiment(const DeviceParams& p, const CzSchedule& s, const GateOptions& options = {},
                           const BellOptions& bell = {});

}  // namespace mmqed
