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
#include <stdexcept>
#include <string>
#include <vector>

#include "mmqed/dynamics.hpp"
#include "mmqed/gates.hpp"
#include "mmqed/hamiltonian.hpp"
#include "mmqed/transmon.hpp"

namespace mmqed {

/// Bad configuration: `path()` is the dotted field path (e.g. "device.g_f").
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(std::string path, const std::string& detail)
      : std::invalid_argument(path + ": " + detail), path_(std::move(path)) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

/// Inclusive range start, start + step, ... ≤ stop, or an explicit list.
struct Grid {
  double start = 0;
  double stop = 0;
  double step = 1;
  std::vector<double> values;  // wins when non-empty

  std::vector<double> points() const;
  static Grid range(double start, double stop, double step) { return {start, stop, step, {}}; }
  static Grid list(std::vector<double> v) { return {0, 0, 1, std::move(v)}; }
};

struct SpectroscopyRun {
  int transmon_qubit = 1;
  Grid flux = Grid::range(0.0, 0.5, 0.0025);      // Φ0
  int band_qubit = 1;
  Grid band = Grid::range(6.6, 7.8, 0.002);       // GHz
  double other_qubit_frequency = 5.0;             // GHz
  double crossing_center = 6.4;                   // qubit 1, GHz
  Grid crossing_offset = Grid::range(-0.02, 0.02, 0.0005);  // qubit 2 − qubit 1, GHz
};

struct ExchangeRun {
  Grid delta_over_gf = Grid::range(3.0, 10.0, 0.25);  // qubits below the filter
  std::array<double, 2> fit_window{4.0, 8.0};
  double xi_q1 = 6.4;      // GHz
  double xi_offset = 0.05;  // qubit 2 sits this far below qubit 1
};

struct LzRun {
  Grid ramp_times = Grid::range(0.5, 55.0, 0.5);
  double total_time = 110.0;
  double start_frequency = 6.2;
  double top_frequency = 8.1;
  double other_frequency = 5.3;
  std::string shape = "linear";
  bool dressed_states = true;
  bool decoherence = false;
  int realizations = 400;
};

struct StarkRun {
  Grid nu_q2f = Grid::list({5.3, 6.0, 6.5, 6.8, 7.0, 7.2, 7.4, 7.6, 7.8, 8.0, 8.2, 8.4});
  Grid tau = Grid::range(0.0, 60.0, 1.0);
  double reference = 5.3;
  double idle_q1 = 6.2;
  double park_q1 = 8.6;
  double load_ramp = 25.0;
  double q2_ramp = 30.0;
  int segments = 24;
  bool decoherence = false;
  int realizations = 400;
  double residual_limit = 0.2;
};

struct BellRun {
  bool calibrate = true;  // false: use cz.schedule as given
  bool decoherence = false;
  std::uint64_t shots = 10000;
  int realizations = 400;
  int bootstrap_resamples = 200;
  double pulse_width = 20.0;
};

struct CzRun {
  CzSchedule schedule;
  GateOptions options;
  CalibrationOptions calibration;
};

struct RunConfig {
  DeviceParams device;
  std::array<TransmonParams, 2> transmon;
  PropagationOptions propagation;
  std::uint64_t seed = 20260101;
  int threads = 0;
  std::string output_dir = "out";
  SpectroscopyRun spectroscopy;
  ExchangeRun exchange_scan;
  LzRun lz_ramp;
  StarkRun stark_ramsey;
  CzRun cz;
  BellRun bell;

  /// Cross-field checks; throws ConfigError naming the field.
  void validate() const;

  /// Gate options with the shared propagation and thread settings applied.
  GateOptions gate_options() const;
  LzConfig lz_config() const;
  StarkConfig stark_config() const;
  BellOptions bell_options() const;
};

/// Parses a JSON document; every key must be known.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

/// Applies "a.b.c=value" on top of a JSON document before parsing. The value
/// is read as JSON when it parses, otherwise as a string.
std::string apply_overrides(const std::string& text, const std::vector<std::string>& overrides);

/// Canonical JSON of the fully-resolved configuration.
std::string to_json(const RunConfig& config);

/// FNV-1a (64 bit) of the canonical JSON without output_dir and threads, as
/// 16 hex digits.
std::string config_hash(const RunConfig& config);

}  // namespace mmqed
