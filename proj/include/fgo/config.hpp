// Copyright 2026 The FGO Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "fgo/model.hpp"

namespace fgo {

/// Everything a command needs besides its input and output paths.
struct RunConfig {
  ModelParams model;
  std::uint64_t seed = 0;
  double decision_radius = 1.0;
};

/// reference (1, 0, 0), with-sa (0.35, 0.65, 0), with-tj (0.03, 0, 0.97),
/// with-both (0.05, 0.15, 0.80) as (alpha_ref, alpha_sa, alpha_tj).
ModelWeights preset_weights(std::string_view name);
std::vector<std::string> preset_names();

/// Sets one key. Throws ConfigError for unknown keys or unparsable values.
void apply_setting(RunConfig& config, std::string_view key, std::string_view value);

/// Flat `key = value` lines; `#` starts a comment. Later keys win.
void parse_config(std::istream& in, RunConfig& config);
void load_config(const std::filesystem::path& path, RunConfig& config);

/// Writes every key in a form parse_config reads back unchanged.
void write_config(std::ostream& out, const RunConfig& config);

/// Applies FGO_SEED when set.
void apply_environment(RunConfig& config);

}  // namespace fgo
