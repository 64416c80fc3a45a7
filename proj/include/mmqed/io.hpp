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

#include <chrono>
#include <filesystem>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "mmqed/config.hpp"

namespace mmqed {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr int kSchemaVersion = 1;

/// Artifact directory for one command. CSV files start with a
/// "# config_hash=..." line; JSON documents carry "config_hash" and
/// "schema_version" keys. Everything except the manifest is a pure function
/// of the configuration.
class ArtifactWriter {
 public:
  ArtifactWriter(std::filesystem::path dir, const RunConfig& config, std::string command);

  void csv(const std::string& name, const std::function<void(std::ostream&)>& body);
  /// `body` is a JSON object serialized as text.
  void json(const std::string& name, const std::string& body);

  /// manifest.json: command, config hash, seed, versions, wall time, files.
  void manifest(bool passed);

  const std::string& hash() const { return hash_; }
  const std::vector<std::string>& files() const { return files_; }

 private:
  std::filesystem::path dir_;
  const RunConfig& config_;
  std::string command_;
  std::string hash_;
  std::vector<std::string> files_;
  std::chrono::steady_clock::time_point start_;
};

}  // namespace mmqed
