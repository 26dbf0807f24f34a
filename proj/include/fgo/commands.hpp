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

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fgo/config.hpp"
#include "fgo/synthetic.hpp"
#include "fgo/tuning.hpp"

namespace fgo {

/// One dataset line: `id image=<ppm> gt1=<lm1> [gt2=<lm1>] [contours=<lm1> segments=<lm1>]`.
/// Relative paths resolve against the manifest's directory.
struct ManifestEntry {
  std::string id;
  std::filesystem::path image;
  std::vector<std::filesystem::path> ground_truths;
  std::optional<std::filesystem::path> contours;
  std::optional<std::filesystem::path> segments;
};

std::vector<ManifestEntry> read_manifest(std::istream& in, const std::filesystem::path& base_dir);
std::vector<ManifestEntry> load_manifest(const std::filesystem::path& path);
void write_manifest(std::ostream& out, const std::vector<ManifestEntry>& entries);

/// When alpha_tj > 0 but no label maps exist, moves the TJ mass onto
/// alpha_ref. Returns true if the weights changed.
bool drop_tj_without_labels(ModelWeights& weights);

/// Direction of the strongest final map at each pixel as a gray level:
/// 0 where every map is zero, otherwise 1 + round(254 * phi / 2pi).
Grid<std::uint8_t> direction_image(const DirectedMaps& final_maps);

/// 255 correct, 0 wrong, 64 tie, 128 everywhere without a record.
Grid<std::uint8_t> correctness_image(const DirectedMaps& final_maps, const FGGroundTruth& gt, double radius);

struct RunOptions {
  std::filesystem::path image;
  std::optional<std::filesystem::path> contours;
  std::optional<std::filesystem::path> segments;
  std::vector<std::filesystem::path> ground_truths;
  std::filesystem::path out_dir;
};
int cmd_run(const RunOptions& options, RunConfig config, std::ostream& log);

struct EvalOptions {
  std::filesystem::path manifest;
  std::optional<std::filesystem::path> report;  // stdout when absent
  std::optional<std::pair<std::string, std::string>> compare;  // (base preset, candidate preset)
  enum class Subset { all, train, test } subset = Subset::all;
};
int cmd_eval(const EvalOptions& options, RunConfig config, std::ostream& out, std::ostream& log);

struct TuneOptions {
  std::filesystem::path manifest;
  std::vector<WeightName> weights;
  std::filesystem::path out;          // tuned config
  std::optional<std::filesystem::path> trace;
  bool use_all = false;               // tune on every image instead of the train split
  std::size_t cache_mb = 2048;        // keep per-image components below this budget
  GridSearchOptions search;
};
int cmd_tune(const TuneOptions& options, RunConfig config, std::ostream& log);

struct SynthOptions {
  StimulusKind kind = StimulusKind::isolated_square;
  StimulusParams params;
  std::filesystem::path out_dir;
  std::string prefix;  // defaults to the kind name
};
int cmd_synth(const SynthOptions& options, std::ostream& log);

/// Parses argv and dispatches. Returns the process exit code.
int run_cli(int argc, char** argv);

}  // namespace fgo
