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
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fgo/grid.hpp"
#include "fgo/orientation.hpp"

namespace fgo {

/// Boundary pixel with the unit normal pointing toward the figure side.
struct BoundaryRecord {
  long x = 0;
  long y = 0;
  double nx = 0.0;
  double ny = 0.0;
};

struct FGGroundTruth {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<BoundaryRecord> records;
};

/// Records sit on -1 cells with at least one +1 cell among their 8
/// neighbours; the normal is the normalized mean offset toward those cells.
/// A map without any -1/+1 interface yields no records.
FGGroundTruth load_ground_truth(const LabelMap& signed_map);

struct Decision {
  double dx = 0.0;
  double dy = 0.0;
  bool tie = true;
};

/// Strongest of the 16 final maps within `radius` pixels of (x, y). The
/// winner (theta, side) points along theta + side * pi/2. All-zero
/// neighbourhoods and equal maxima pointing in opposite directions are ties.
Decision decide_figure(const DirectedMaps& final_maps, long x, long y, double radius = 1.0);

/// 1 if the decision agrees with the normal, 0 if not, 0.5 for a tie.
double decision_score(const Decision& d, const BoundaryRecord& r);

struct GroundTruthScore {
  double correct = 0.0;
  std::size_t total = 0;
  std::size_t ties = 0;
  std::vector<double> per_record;  // decision_score per record, in record order

  double accuracy() const;
};

GroundTruthScore score_decisions(std::span<const Decision> decisions, std::span<const BoundaryRecord> records);
GroundTruthScore score_ground_truth(const DirectedMaps& final_maps, const FGGroundTruth& gt, double radius = 1.0);

struct ImageResult {
  std::string id;
  double accuracy = 0.0;            // mean over the supplied ground truths
  std::size_t boundary_pixels = 0;  // summed over ground truths
  std::size_t ties = 0;
  double correct = 0.0;
  std::vector<double> correctness;  // per-record scores of all ground truths
};

/// Scores one image against one or more annotations. Annotations without
/// records are skipped; with none left the result is nullopt.
std::optional<ImageResult> compute_fgca(const std::string& id, const DirectedMaps& final_maps,
                                        std::span<const FGGroundTruth> gts, double radius = 1.0);

struct EvalReport {
  std::vector<ImageResult> per_image;
  double aggregate = 0.0;       // pixel weighted
  double per_image_mean = 0.0;
  double std_dev = 0.0;         // of per-image accuracies
  std::optional<double> p_value;
};

EvalReport make_report(std::vector<ImageResult> per_image);

/// Line-oriented table followed by a key=value block.
void write_report(std::ostream& out, const EvalReport& report);

struct SplitSpec {
  std::vector<std::string> train_ids;
  std::vector<std::string> test_ids;
  std::uint64_t seed = 0;
};

/// Seeded shuffle; the first floor(n/2) ids train, the rest test.
SplitSpec make_split(std::vector<std::string> ids, std::uint64_t seed);

}  // namespace fgo
