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

#include "mmqed/io.hpp"

#include <Eigen/Core>
#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace mmqed {

namespace {

std::ofstream open(const std::filesystem::path& p) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + p.string());
  return out;
}

}  // namespace

ArtifactWriter::ArtifactWriter(std::filesystem::path dir, const RunConfig& config, std::string command)
    : dir_(std::move(dir)),
      config_(config),
      command_(std::move(command)),
      hash_(config_hash(config)),
      start_(std::chrono::steady_clock::now()) {
  std::filesystem::create_directories(dir_);
}

void ArtifactWriter::csv(const std::string& name, const std::function<void(std::ostream&)>& body) {
  auto out = open(dir_ / name);
  out << "# config_hash=" << hash_ << "\n";
  body(out);
  files_.push_back(name);
}

void ArtifactWriter::json(const std::string& name, const std::string& body) {
  auto doc = nlohmann::json::parse(body);
  doc["config_hash"] = hash_;
  doc["schema_version"] = kSchemaVersion;
  auto out = open(dir_ / name);
  out << doc.dump(2) << "\n";
  files_.push_back(name);
}

void ArtifactWriter::manifest(bool passed) {
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  nlohmann::json m;
  m["command"] = command_;
  m["config_hash"] = hash_;
  m["seed"] = config_.seed;
  m["passed"] = passed;
  m["wall_time_s"] = wall;
  m["versions"] = {{"mmqed", kVersion},
                   {"schema", kSchemaVersion},
                   {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
                                 std::to_string(EIGEN_MINOR_VERSION)},
                   {"nlohmann_json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                                         std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                                         std::to_string(NLOHMANN_JSON_VERSION_PATCH)},
                   {"compiler", __VERSION__}};
  m["artifacts"] = files_;
  m["config"] = nlohmann::json::parse(to_json(config_));
  auto out = open(dir_ / "manifest.json");
  out << m.dump(2) << "\n";
}

}  // namespace mmqed
