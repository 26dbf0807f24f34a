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

#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "fgo/border_ownership.hpp"

namespace fgo {

enum class WeightName { alpha_ref, alpha_sa, alpha_tj };

WeightName parse_weight_name(std::string_view s);  // alphaRef, alphaSA, alphaTJ
std::string_view to_string(WeightName w);

struct GridSearchOptions {
  double coarse_step = 0.1;
  double stop_threshold = 0.005;
  std::size_t max_rounds = 8;  // refinement rounds after the coarse grid
};

struct GridPoint {
  ModelWeights weights;
  double objective = 0.0;
  std::size_t round = 0;
  double step = 0.0;
};

struct GridSearchResult {
  ModelWeights best;
  double best_objective = 0.0;
  std::vector<GridPoint> trace;       // every evaluation in scan order
  std::vector<double> round_best;     // incumbent objective after each round
  std::size_t rounds = 0;
  double final_step = 0.0;
  bool stopped_by_threshold = false;  // false: max_rounds reached
};

/// Scores a batch of weight vectors at once so callers can share work
/// across grid points.
using BatchObjective = std::function<std::vector<double>(std::span<const ModelWeights>)>;

/// Maximizes `objective` over the simplex spanned by `names`; weights not
/// named are zero, w_opp and feature weights come from `base`. The scan order
/// is deterministic and the incumbent only changes on strict improvement.
GridSearchResult grid_search_weights(std::span<const WeightName> names, const BatchObjective& objective,
                                     const ModelWeights& base = {}, const GridSearchOptions& options = {});

}  // namespace fgo
