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
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mmqed/hamiltonian.hpp"
#include "mmqed/transmon.hpp"

namespace mmqed {

/// A stretch of one qubit's frequency trajectory. The profile holds
/// frequencies at uniformly spaced fractions of the segment and is
/// interpolated linearly in time; a two-point profile is a plain linear ramp.
struct Segment {
  double start = 0;              // ns
  double end = 0;                // ns
  std::vector<double> profile;   // GHz, size >= 2

  double frequency_at(double t) const;
  double start_frequency() const { return profile.front(); }
  double end_frequency() const { return profile.back(); }
};

enum class EventKind { kRotation, kVirtualZ };

/// Ideal instantaneous microwave operation on one qubit, acting on the
/// dressed idle-point states. axis_phase is measured in the qubit's rotating
/// frame (0 = X, π/2 = Y).
struct MicrowaveEvent {
  double time = 0;  // ns
  int qubit = 1;
  EventKind kind = EventKind::kRotation;
  double axis_phase = 0;  // rad
  double angle = 0;       // rad
};

class PulseSchedule {
 public:
  PulseSchedule(double idle_q1, double idle_q2);

  /// Appends to qubit's trajectory; an empty qubit starts at t = 0.
  PulseSchedule& ramp(int qubit, double duration, std::vector<double> profile);
  PulseSchedule& linear(int qubit, double duration, double to);
  PulseSchedule& hold(int qubit, double duration);
  /// Extends the shorter trajectory with a hold so both end together.
  PulseSchedule& align();
  PulseSchedule& event(MicrowaveEvent e);

  double frequency(int qubit, double t) const;
  double end_time(int qubit) const;
  double total_time() const;
  double last_frequency(int qubit) const;
  const std::vector<Segment>& segments(int qubit) const;
  const std::vector<MicrowaveEvent>& events() const { return events_; }

  /// Contiguity, common end time, events inside the span, and (when given)
  /// every frequency inside the achievable band.
  void validate(std::optional<std::pair<double, double>> band = std::nullopt) const;

 private:
  std::array<double, 2> idle_;
  std::array<std::vector<Segment>, 2> segments_;
  std::vector<MicrowaveEvent> events_;
};

/// Rank (in ascending energy) of the single-excitation eigenstate with the
/// largest weight on the given qubit's bare excited state.
int qubit_branch_rank(const HamiltonianModel& sector1, double nu_q1, double nu_q2, int qubit);

/// Ramp profile whose local sweep rate is proportional to the squared gap
/// between the tracked single-excitation branch and its nearest neighbour, so
/// time is spent where the crossings are narrow. The branch is identified by
/// its energy rank, which is preserved by adiabatic following.
std::vector<double> gap_adapted_profile(const DeviceParams& p, int qubit, double from, double to,
                                        double other_frequency, int tracked_rank, int segments = 24);

/// Linear in flux between the fluxes of the two endpoint frequencies.
std::vector<double> flux_linear_profile(const TransmonParams& t, double from, double to, int segments = 64);

enum class RampShape { kLinear, kFluxLinear, kGapAdapted };

RampShape parse_ramp_shape(const std::string& name);
std::string to_string(RampShape shape);

/// Default operating frequencies (GHz).
struct OperatingPoints {
  double idle_q1 = 6.2;
  double idle_q2 = 5.3;
  double park_q1 = 7.6;        // gate: photon held in the lowest mode
  double stark_park_q1 = 8.6;  // Stark experiment: qubit 2 goes above the band below this
  double lz_start = 6.2;
  double lz_top = 8.1;
};

}  // namespace mmqed
