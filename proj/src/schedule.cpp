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

#include "mmqed/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace mmqed {

namespace {

std::size_t qubit_slot(int qubit) {
  if (qubit != 1 && qubit != 2) throw InvalidArgument("qubit index must be 1 or 2");
  return static_cast<std::size_t>(qubit - 1);
}

constexpr double kTimeSlack = 1e-9;

}  // namespace

double Segment::frequency_at(double t) const {
  if (end <= start) return profile.back();
  const double u = std::clamp((t - start) / (end - start), 0.0, 1.0) * static_cast<double>(profile.size() - 1);
  const auto k = std::min(static_cast<std::size_t>(u), profile.size() - 2);
  const double frac = u - static_cast<double>(k);
  return profile[k] + frac * (profile[k + 1] - profile[k]);
}

PulseSchedule::PulseSchedule(double idle_q1, double idle_q2) : idle_{idle_q1, idle_q2} {
  if (!(idle_q1 > 0 && idle_q2 > 0)) throw InvalidArgument("idle frequencies must be positive");
}

PulseSchedule& PulseSchedule::ramp(int qubit, double duration, std::vector<double> profile) {
  if (duration < 0) throw InvalidArgument("segment duration must be non-negative");
  if (profile.size() < 2) throw InvalidArgument("segment profile needs at least two points");
  if (duration == 0) return *this;
  auto& segs = segments_[qubit_slot(qubit)];
  const double start = end_time(qubit);
  segs.push_back({start, start + duration, std::move(profile)});
  return *this;
}

PulseSchedule& PulseSchedule::linear(int qubit, double duration, double to) {
  return ramp(qubit, duration, {last_frequency(qubit), to});
}

PulseSchedule& PulseSchedule::hold(int qubit, double duration) {
  const double nu = last_frequency(qubit);
  return ramp(qubit, duration, {nu, nu});
}

PulseSchedule& PulseSchedule::align() {
  const double t = total_time();
  for (int q = 1; q <= 2; ++q) {
    if (end_time(q) < t) hold(q, t - end_time(q));
  }
  return *this;
}

PulseSchedule& PulseSchedule::event(MicrowaveEvent e) {
  qubit_slot(e.qubit);
  auto pos = std::upper_bound(events_.begin(), events_.end(), e.time,
                              [](double t, const MicrowaveEvent& x) { return t < x.time; });
  events_.insert(pos, e);
  return *this;
}

double PulseSchedule::frequency(int qubit, double t) const {
  const auto& segs = segments_[qubit_slot(qubit)];
  if (segs.empty() || t <= segs.front().start) return segs.empty() ? idle_[qubit_slot(qubit)] : segs.front().start_frequency();
  auto it = std::upper_bound(segs.begin(), segs.end(), t, [](double x, const Segment& s) { return x < s.end; });
  if (it == segs.end()) return segs.back().end_frequency();
  return it->frequency_at(t);
}

double PulseSchedule::end_time(int qubit) const {
  const auto& segs = segments_[qubit_slot(qubit)];
  return segs.empty() ? 0.0 : segs.back().end;
}

double PulseSchedule::total_time() const { return std::max(end_time(1), end_time(2)); }

double PulseSchedule::last_frequency(int qubit) const {
  const auto& segs = segments_[qubit_slot(qubit)];
  return segs.empty() ? idle_[qubit_slot(qubit)] : segs.back().end_frequency();
}

const std::vector<Segment>& PulseSchedule::segments(int qubit) const { return segments_[qubit_slot(qubit)]; }

void PulseSchedule::validate(std::optional<std::pair<double, double>> band) const {
  const double total = total_time();
  for (int q = 1; q <= 2; ++q) {
    const auto& segs = segments(q);
    double t = 0;
    double nu = idle_[qubit_slot(q)];
    for (const auto& s : segs) {
      if (std::abs(s.start - t) > kTimeSlack) throw InvalidArgument("schedule segments are not contiguous");
      if (std::abs(s.start_frequency() - nu) > 1e-12) throw InvalidArgument("schedule frequency jumps between segments");
      if (band) {
        for (double f : s.profile) {
          if (f < band->first || f > band->second) {
            std::ostringstream msg;
            msg << "qubit " << q << " frequency " << f << " GHz outside the achievable band [" << band->first << ", "
                << band->second << "]";
            throw InvalidArgument(msg.str());
          }
        }
      }
      t = s.end;
      nu = s.end_frequency();
    }
    if (!segs.empty() && std::abs(t - total) > kTimeSlack) {
      throw InvalidArgument("qubit trajectories end at different times; call align()");
    }
  }
  for (const auto& e : events_) {
    if (e.time < -kTimeSlack || e.time > total + kTimeSlack) throw InvalidArgument("microwave event outside the schedule");
  }
}

int qubit_branch_rank(const HamiltonianModel& sector1, double nu_q1, double nu_q2, int qubit) {
  const Basis& b = *sector1.basis();
  const auto i = static_cast<Eigen::Index>(b.index_of(qubit == 1 ? b.qubit_label(1, 0) : b.qubit_label(0, 1)));
  const auto eig = eig_hermitian(sector1(nu_q1, nu_q2));
  Eigen::Index best = 0;
  eig.vectors.row(i).cwiseAbs2().maxCoeff(&best);
  return static_cast<int>(best);
}

std::vector<double> gap_adapted_profile(const DeviceParams& p, int qubit, double from, double to,
                                        double other_frequency, int tracked_rank, int segments) {
  qubit_slot(qubit);
  if (segments < 1) throw InvalidArgument("gap-adapted profile needs at least one segment");
  if (from == to) return std::vector<double>(static_cast<std::size_t>(segments) + 1, from);
  const HamiltonianModel sector1(p, 1);
  if (tracked_rank < 0 || tracked_rank >= sector1.dimension()) throw InvalidArgument("tracked rank out of range");

  constexpr int kSamples = 300;
  std::vector<double> nu(kSamples), density(kSamples);
  for (int k = 0; k < kSamples; ++k) {
    nu[k] = from + (to - from) * k / (kSamples - 1.0);
    const RealVector e = eig_hermitian(qubit == 1 ? sector1(nu[k], other_frequency) : sector1(other_frequency, nu[k])).values;
    double gap = std::numeric_limits<double>::infinity();
    if (tracked_rank > 0) gap = std::min(gap, e(tracked_rank) - e(tracked_rank - 1));
    if (tracked_rank + 1 < e.size()) gap = std::min(gap, e(tracked_rank + 1) - e(tracked_rank));
    density[k] = 1.0 / (gap * gap);
  }
  // Cumulative "time" fraction against frequency (trapezoid rule), then invert.
  std::vector<double> cumulative(kSamples, 0.0);
  for (int k = 1; k < kSamples; ++k) {
    cumulative[k] = cumulative[k - 1] + 0.5 * (density[k] + density[k - 1]) * std::abs(nu[k] - nu[k - 1]);
  }
  for (double& c : cumulative) c /= cumulative.back();
  std::vector<double> profile(static_cast<std::size_t>(segments) + 1);
  for (int s = 0; s <= segments; ++s) {
    const double f = static_cast<double>(s) / segments;
    auto it = std::lower_bound(cumulative.begin(), cumulative.end(), f);
    const auto k = static_cast<std::size_t>(std::clamp<std::ptrdiff_t>(it - cumulative.begin(), 1, kSamples - 1));
    const double c0 = cumulative[k - 1], c1 = cumulative[k];
    const double w = c1 > c0 ? (f - c0) / (c1 - c0) : 0.0;
    profile[static_cast<std::size_t>(s)] = nu[k - 1] + std::clamp(w, 0.0, 1.0) * (nu[k] - nu[k - 1]);
  }
  profile.front() = from;
  profile.back() = to;
  return profile;
}

std::vector<double> flux_linear_profile(const TransmonParams& t, double from, double to, int segments) {
  if (segments < 1) throw InvalidArgument("flux-linear profile needs at least one segment");
  const double phi0 = frequency_to_flux(t, from), phi1 = frequency_to_flux(t, to);
  std::vector<double> profile(static_cast<std::size_t>(segments) + 1);
  for (int s = 0; s <= segments; ++s) {
    profile[static_cast<std::size_t>(s)] = transmon_frequency(t, phi0 + (phi1 - phi0) * s / segments);
  }
  profile.front() = from;
  profile.back() = to;
  return profile;
}

RampShape parse_ramp_shape(const std::string& name) {
  if (name == "linear") return RampShape::kLinear;
  if (name == "flux-linear") return RampShape::kFluxLinear;
  if (name == "gap-adapted") return RampShape::kGapAdapted;
  throw InvalidArgument("unknown ramp shape '" + name + "' (expected linear, flux-linear or gap-adapted)");
}

std::string to_string(RampShape shape) {
  switch (shape) {
    case RampShape::kLinear:
      return "linear";
    case RampShape::kFluxLinear:
      return "flux-linear";
    case RampShape::kGapAdapted:
      return "gap-adapted";
  }
  return "linear";
}

}  // namespace mmqed
