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

#include "mmqed/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

namespace mmqed {

using json = nlohmann::json;

std::vector<double> Grid::points() const {
  if (!values.empty()) return values;
  std::vector<double> out;
  const auto n = static_cast<long>(std::floor((stop - start) / step + 1e-9));
  for (long k = 0; k <= n; ++k) out.push_back(start + static_cast<double>(k) * step);
  return out;
}

namespace {

// Reads fields out of a JSON object, remembering which keys were used so the
// leftovers can be reported.
class Reader {
 public:
  Reader(const json& node, std::string path) : node_(node), path_(std::move(path)) {
    if (!node_.is_object()) throw ConfigError(path_.empty() ? "<root>" : path_, "expected an object");
  }

  std::string at(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

  template <typename T>
  void operator()(const std::string& key, T& value) {
    auto it = node_.find(key);
    if (it == node_.end()) return;
    used_.insert(key);
    read(*it, at(key), value);
  }

  template <typename Fn>
  void object(const std::string& key, Fn&& fn) {
    auto it = node_.find(key);
    if (it == node_.end()) return;
    used_.insert(key);
    Reader child(*it, at(key));
    fn(child);
    child.finish();
  }

  void finish() const {
    for (auto it = node_.begin(); it != node_.end(); ++it) {
      if (!used_.count(it.key())) throw ConfigError(at(it.key()), "unknown key");
    }
  }

 private:
  static void read(const json& j, const std::string& path, double& v) {
    if (!j.is_number()) throw ConfigError(path, "expected a number");
    v = j.get<double>();
  }
  static void read(const json& j, const std::string& path, int& v) {
    if (!j.is_number_integer()) throw ConfigError(path, "expected an integer");
    v = j.get<int>();
  }
  static void read(const json& j, const std::string& path, std::uint64_t& v) {
    if (!j.is_number_unsigned()) throw ConfigError(path, "expected a non-negative integer");
    v = j.get<std::uint64_t>();
  }
  static void read(const json& j, const std::string& path, bool& v) {
    if (!j.is_boolean()) throw ConfigError(path, "expected true or false");
    v = j.get<bool>();
  }
  static void read(const json& j, const std::string& path, std::string& v) {
    if (!j.is_string()) throw ConfigError(path, "expected a string");
    v = j.get<std::string>();
  }
  static void read(const json& j, const std::string& path, std::array<double, 2>& v) {
    if (!j.is_array() || j.size() != 2) throw ConfigError(path, "expected two numbers");
    for (std::size_t k = 0; k < 2; ++k) read(j[k], path + "[" + std::to_string(k) + "]", v[k]);
  }
  static void read(const json& j, const std::string& path, Grid& g) {
    if (j.is_array()) {
      if (j.empty()) throw ConfigError(path, "grid is empty");
      g = Grid{};
      for (std::size_t k = 0; k < j.size(); ++k) {
        double x = 0;
        read(j[k], path + "[" + std::to_string(k) + "]", x);
        g.values.push_back(x);
      }
      return;
    }
    // A range overlays the default range; replacing a list needs all keys.
    const bool was_list = !g.values.empty();
    Reader r(j, path);
    g.values.clear();
    r("start", g.start);
    r("stop", g.stop);
    r("step", g.step);
    r.finish();
    for (const char* k : {"start", "stop", "step"}) {
      if (was_list && !j.contains(k)) throw ConfigError(path + "." + k, "missing");
    }
  }

  const json& node_;
  std::string path_;
  std::set<std::string> used_;
};

class Writer {
 public:
  explicit Writer(json& node) : node_(node) { node_ = json::object(); }

  template <typename T>
  void operator()(const std::string& key, const T& value) {
    node_[key] = write(value);
  }

  template <typename Fn>
  void object(const std::string& key, Fn&& fn) {
    json child;
    Writer w(child);
    fn(w);
    node_[key] = std::move(child);
  }

 private:
  template <typename T>
  static json write(const T& v) {
    return v;
  }
  static json write(const Grid& g) {
    if (!g.values.empty()) return g.values;
    return {{"start", g.start}, {"stop", g.stop}, {"step", g.step}};
  }

  json& node_;
};

template <typename V, typename D>
void visit_device(V& v, D& d) {
  v("n_modes", d.n_modes);
  v("nu_f", d.nu_f);
  v("g_f", d.g_f);
  v("g_q1f", d.g_q1f);
  v("g_q2f", d.g_q2f);
  v("qubit_levels", d.qubit_levels);
  v("anharmonicity", d.anharmonicity);
  v("photon_cutoff", d.photon_cutoff);
  v("excitation_cap", d.excitation_cap);
  v("t1_us", d.t1_us);
  v("ramsey_sigma_ns", d.ramsey_sigma_ns);
  v("max_dimension", d.max_dimension);
}

template <typename V, typename T>
void visit_transmon(V& v, T& t) {
  v("e_c", t.e_c);
  v("e_j_max", t.e_j_max);
  v("charge_cutoff", t.charge_cutoff);
  v("n_g", t.n_g);
}

// One function serves both reading and writing: C is RunConfig or
// const RunConfig.
template <typename V, typename C>
void visit(V& v, C& c) {
  v.object("device", [&](V& d) { visit_device(d, c.device); });
  v.object("transmon_q1", [&](V& t) { visit_transmon(t, c.transmon[0]); });
  v.object("transmon_q2", [&](V& t) { visit_transmon(t, c.transmon[1]); });
  v.object("propagation", [&](V& p) {
    p("dt", c.propagation.dt);
    p("norm_tolerance", c.propagation.norm_tolerance);
  });
  v("seed", c.seed);
  v("threads", c.threads);
  v("output_dir", c.output_dir);
  v.object("spectroscopy", [&](V& s) {
    auto& r = c.spectroscopy;
    s("transmon_qubit", r.transmon_qubit);
    s("flux", r.flux);
    s("band_qubit", r.band_qubit);
    s("band", r.band);
    s("other_qubit_frequency", r.other_qubit_frequency);
    s("crossing_center", r.crossing_center);
    s("crossing_offset", r.crossing_offset);
  });
  v.object("exchange_scan", [&](V& s) {
    auto& r = c.exchange_scan;
    s("delta_over_gf", r.delta_over_gf);
    s("fit_window", r.fit_window);
    s("xi_q1", r.xi_q1);
    s("xi_offset", r.xi_offset);
  });
  v.object("lz_ramp", [&](V& s) {
    auto& r = c.lz_ramp;
    s("ramp_times", r.ramp_times);
    s("total_time", r.total_time);
    s("start_frequency", r.start_frequency);
    s("top_frequency", r.top_frequency);
    s("other_frequency", r.other_frequency);
    s("shape", r.shape);
    s("dressed_states", r.dressed_states);
    s("decoherence", r.decoherence);
    s("realizations", r.realizations);
  });
  v.object("stark_ramsey", [&](V& s) {
    auto& r = c.stark_ramsey;
    s("nu_q2f", r.nu_q2f);
    s("tau", r.tau);
    s("reference", r.reference);
    s("idle_q1", r.idle_q1);
    s("park_q1", r.park_q1);
    s("load_ramp", r.load_ramp);
    s("q2_ramp", r.q2_ramp);
    s("segments", r.segments);
    s("decoherence", r.decoherence);
    s("realizations", r.realizations);
    s("residual_limit", r.residual_limit);
  });
  v.object("cz", [&](V& s) {
    s.object("schedule", [&](V& x) {
      auto& r = c.cz.schedule;
      x("load_ramp", r.load_ramp);
      x("q2_ramp", r.q2_ramp);
      x("interaction_frequency", r.interaction_frequency);
      x("interaction_duration", r.interaction_duration);
      x("retrieve_ramp", r.retrieve_ramp);
      x("virtual_z", r.virtual_z);
    });
    s.object("options", [&](V& x) {
      auto& r = c.cz.options;
      x("idle_q1", r.idle_q1);
      x("idle_q2", r.idle_q2);
      x("park_q1", r.park_q1);
      x("qubit_levels", r.qubit_levels);
      x("q1_segments", r.q1_segments);
      x("q2_segments", r.q2_segments);
      x("leakage_limit", r.leakage_limit);
    });
    s.object("calibration", [&](V& x) {
      auto& r = c.cz.calibration;
      x("phase_tolerance", r.phase_tolerance);
      x("max_duration", r.max_duration);
      x("duration_step", r.duration_step);
      x("gain_tolerance", r.gain_tolerance);
      x("max_sweeps", r.max_sweeps);
      x("ramp_bounds", r.ramp_bounds);
      x("q2_ramp_bounds", r.q2_ramp_bounds);
      x("min_interaction_frequency", r.min_interaction_frequency);
      x("interaction_margin", r.interaction_margin);
      x("decay_weight", r.decay_weight);
      x("refine", r.refine);
    });
  });
  v.object("bell", [&](V& s) {
    auto& r = c.bell;
    s("calibrate", r.calibrate);
    s("decoherence", r.decoherence);
    s("shots", r.shots);
    s("realizations", r.realizations);
    s("bootstrap_resamples", r.bootstrap_resamples);
    s("pulse_width", r.pulse_width);
  });
}

void check(bool ok, const std::string& path, const std::string& what) {
  if (!ok) throw ConfigError(path, what);
}

void check_grid(const Grid& g, const std::string& path) {
  if (g.values.empty()) {
    check(std::isfinite(g.start) && std::isfinite(g.stop), path, "bounds must be finite");
    check(g.step > 0, path + ".step", "must be positive");
    check(g.stop >= g.start, path + ".stop", "must not be below start");
    check((g.stop - g.start) / g.step < 1e6, path, "too many points");
  }
  const auto pts = g.points();
  for (std::size_t k = 1; k < pts.size(); ++k) check(pts[k] > pts[k - 1], path, "points must be ascending");
}

}  // namespace

void RunConfig::validate() const {
  check(device.n_modes >= 1, "device.n_modes", "must be >= 1");
  check(device.nu_f > 0, "device.nu_f", "must be positive");
  for (auto [v, name] : {std::pair{device.g_f, "g_f"}, {device.g_q1f, "g_q1f"}, {device.g_q2f, "g_q2f"}}) {
    check(v >= 0 && std::isfinite(v), std::string("device.") + name, "must be non-negative");
  }
  check(device.qubit_levels == 2 || device.qubit_levels == 3, "device.qubit_levels", "must be 2 or 3");
  check(device.photon_cutoff >= 1, "device.photon_cutoff", "must be >= 1");
  check(device.excitation_cap >= 1, "device.excitation_cap", "must be >= 1");
  for (int k = 0; k < 2; ++k) {
    const auto i = static_cast<std::size_t>(k);
    check(device.t1_us[i] > 0, "device.t1_us[" + std::to_string(k) + "]", "must be positive");
    check(device.ramsey_sigma_ns[i] > 0, "device.ramsey_sigma_ns[" + std::to_string(k) + "]", "must be positive");
  }
  try {
    device.validate();
  } catch (const InvalidArgument& e) {
    throw ConfigError("device", e.what());
  }
  for (int k = 0; k < 2; ++k) {
    const std::string block = k == 0 ? "transmon_q1" : "transmon_q2";
    const auto& t = transmon[static_cast<std::size_t>(k)];
    check(t.e_c > 0, block + ".e_c", "must be positive");
    check(t.e_j_max > 0, block + ".e_j_max", "must be positive");
    check(t.charge_cutoff >= 10, block + ".charge_cutoff", "must be >= 10");
    try {
      transmon[static_cast<std::size_t>(k)].validate();
    } catch (const InvalidArgument& e) {
      throw ConfigError(k == 0 ? "transmon_q1" : "transmon_q2", e.what());
    }
  }
  check(propagation.dt > 0, "propagation.dt", "must be positive");
  check(propagation.norm_tolerance > 0, "propagation.norm_tolerance", "must be positive");
  check(threads >= 0, "threads", "must be non-negative");

  const auto& s = spectroscopy;
  check(s.transmon_qubit == 1 || s.transmon_qubit == 2, "spectroscopy.transmon_qubit", "must be 1 or 2");
  check(s.band_qubit == 1 || s.band_qubit == 2, "spectroscopy.band_qubit", "must be 1 or 2");
  check_grid(s.flux, "spectroscopy.flux");
  check_grid(s.band, "spectroscopy.band");
  check_grid(s.crossing_offset, "spectroscopy.crossing_offset");

  check_grid(exchange_scan.delta_over_gf, "exchange_scan.delta_over_gf");
  for (double x : exchange_scan.delta_over_gf.points()) check(x > 0, "exchange_scan.delta_over_gf", "must be positive");
  check(exchange_scan.fit_window[1] > exchange_scan.fit_window[0], "exchange_scan.fit_window", "must be ascending");

  check_grid(lz_ramp.ramp_times, "lz_ramp.ramp_times");
  for (double t : lz_ramp.ramp_times.points()) {
    check(t >= 0 && 2 * t <= lz_ramp.total_time, "lz_ramp.ramp_times", "need 0 <= 2·t_ramp <= total_time");
  }
  try {
    parse_ramp_shape(lz_ramp.shape);
  } catch (const InvalidArgument& e) {
    throw ConfigError("lz_ramp.shape", e.what());
  }
  check(lz_ramp.realizations >= 1, "lz_ramp.realizations", "must be >= 1");

  check_grid(stark_ramsey.nu_q2f, "stark_ramsey.nu_q2f");
  check_grid(stark_ramsey.tau, "stark_ramsey.tau");
  check(stark_ramsey.tau.points().size() >= 4, "stark_ramsey.tau", "needs at least 4 points");
  check(stark_ramsey.realizations >= 1, "stark_ramsey.realizations", "must be >= 1");
  check(stark_ramsey.load_ramp > 0, "stark_ramsey.load_ramp", "must be positive");
  check(stark_ramsey.q2_ramp > 0, "stark_ramsey.q2_ramp", "must be positive");

  check(cz.options.qubit_levels == 2 || cz.options.qubit_levels == 3, "cz.options.qubit_levels", "must be 2 or 3");
  const auto& z = cz.schedule;
  check(z.load_ramp > 0, "cz.schedule.load_ramp", "must be positive");
  check(z.q2_ramp > 0, "cz.schedule.q2_ramp", "must be positive");
  check(z.retrieve_ramp > 0, "cz.schedule.retrieve_ramp", "must be positive");
  check(z.interaction_duration >= 0, "cz.schedule.interaction_duration", "must be non-negative");
  try {
    validate_cz(gate_device(device, cz.options), cz.schedule);
  } catch (const InvalidArgument& e) {
    throw ConfigError("cz.schedule.interaction_frequency", e.what());
  }
  check(cz.options.leakage_limit > 0, "cz.options.leakage_limit", "must be positive");
  check(cz.calibration.phase_tolerance > 0, "cz.calibration.phase_tolerance", "must be positive");
  check(cz.calibration.duration_step > 0, "cz.calibration.duration_step", "must be positive");
  check(cz.calibration.max_duration > 0, "cz.calibration.max_duration", "must be positive");

  check(bell.realizations >= 1, "bell.realizations", "must be >= 1");
  check(bell.pulse_width >= 0, "bell.pulse_width", "must be non-negative");
  check(bell.bootstrap_resamples == 0 || bell.bootstrap_resamples >= 2, "bell.bootstrap_resamples",
        "must be 0 or >= 2");
}

GateOptions RunConfig::gate_options() const {
  GateOptions o = cz.options;
  o.propagation = propagation;
  o.threads = threads;
  return o;
}

LzConfig RunConfig::lz_config() const {
  LzConfig c;
  c.ramp_times = lz_ramp.ramp_times.points();
  c.total_time = lz_ramp.total_time;
  c.start_frequency = lz_ramp.start_frequency;
  c.top_frequency = lz_ramp.top_frequency;
  c.other_frequency = lz_ramp.other_frequency;
  c.shape = parse_ramp_shape(lz_ramp.shape);
  c.transmon = transmon[0];
  c.dressed_states = lz_ramp.dressed_states;
  c.decoherence = lz_ramp.decoherence;
  c.realizations = lz_ramp.realizations;
  c.seed = seed;
  c.propagation = propagation;
  return c;
}

StarkConfig RunConfig::stark_config() const {
  StarkConfig c;
  const auto& r = stark_ramsey;
  c.nu_q2f = r.nu_q2f.points();
  c.tau = r.tau.points();
  c.reference = r.reference;
  c.idle_q1 = r.idle_q1;
  c.park_q1 = r.park_q1;
  c.load_ramp = r.load_ramp;
  c.q2_ramp = r.q2_ramp;
  c.segments = r.segments;
  c.decoherence = r.decoherence;
  c.realizations = r.realizations;
  c.seed = seed;
  c.residual_limit = r.residual_limit;
  c.propagation = propagation;
  return c;
}

BellOptions RunConfig::bell_options() const {
  BellOptions b;
  b.decoherence = bell.decoherence;
  b.shots = bell.shots;
  b.realizations = bell.realizations;
  b.seed = seed;
  b.bootstrap_resamples = bell.bootstrap_resamples;
  b.pulse_width = bell.pulse_width;
  return b;
}

RunConfig parse_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("<root>", std::string("invalid JSON: ") + e.what());
  }
  RunConfig c;
  Reader root(doc, "");
  visit(root, c);
  root.finish();
  c.validate();
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("<file>", "cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

std::string apply_overrides(const std::string& text, const std::vector<std::string>& overrides) {
  json doc = text.empty() ? json::object() : json::parse(text);
  for (const auto& o : overrides) {
    const auto eq = o.find('=');
    if (eq == std::string::npos || eq == 0) throw ConfigError(o, "override must look like key=value");
    const std::string key = o.substr(0, eq), raw = o.substr(eq + 1);
    json value = json::parse(raw, nullptr, false);
    if (value.is_discarded()) value = raw;
    json* node = &doc;
    std::size_t begin = 0;
    while (true) {
      const auto dot = key.find('.', begin);
      const std::string part = key.substr(begin, dot - begin);
      if (part.empty()) throw ConfigError(key, "empty path component");
      if (!node->is_object()) throw ConfigError(key, "cannot descend into a non-object");
      if (dot == std::string::npos) {
        (*node)[part] = value;
        break;
      }
      node = &(*node)[part];
      if (node->is_null()) *node = json::object();
      begin = dot + 1;
    }
  }
  return doc.dump();
}

std::string to_json(const RunConfig& config) {
  json doc;
  Writer w(doc);
  visit(w, config);
  return doc.dump(2);
}

std::string config_hash(const RunConfig& config) {
  // Where results go and how many threads compute them do not change them.
  json doc = json::parse(to_json(config));
  doc.erase("output_dir");
  doc.erase("threads");
  const std::string canonical = doc.dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : canonical) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace mmqed
