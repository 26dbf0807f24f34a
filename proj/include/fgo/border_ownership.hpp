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

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "fgo/filters.hpp"
#include "fgo/grid.hpp"
#include "fgo/orientation.hpp"

namespace fgo {

/// Cue mixing weights. The alphas form a simplex; w_opp scales inhibition
/// from the opposite side; feature weights scale (color, intensity,
/// orientation) in the final sum.
struct ModelWeights {
  double alpha_ref = 1.0;
  double alpha_sa = 0.0;
  double alpha_tj = 0.0;
  double w_opp = 1.0;
  std::array<double, 3> feature_weights{1.0, 1.0, 1.0};

  void validate() const;
};

/// Even-Gabor parameters replacing the DoG for the orientation channel.
struct OrientationCSKernelParams {
  double sigma1 = 3.2;
  double gamma1 = 0.8;
  double omega1 = 0.7854;
};

struct CSPyramidPair {
  Pyramid light;
  Pyramid dark;
};

/// Per-level pyramids for each of the 16 (orientation, side) pairs.
struct DirectedPyramids {
  std::array<std::vector<FeatureMap>, kNumDirected> levels;

  std::vector<FeatureMap>& at(std::size_t orientation, Side side) { return levels[directed_index(orientation, side)]; }
  const std::vector<FeatureMap>& at(std::size_t orientation, Side side) const {
    return levels[directed_index(orientation, side)];
  }
  std::size_t num_levels() const { return levels[0].size(); }
};

/// Bank of the 16 normalized von Mises kernels, one per BO direction.
class VonMisesBank {
 public:
  explicit VonMisesBank(double r0 = 2.0, VonMisesForm form = VonMisesForm::cosine, std::size_t size = 0);
  const FeatureMap& at(std::size_t orientation, Side side) const { return kernels_[directed_index(orientation, side)]; }

 private:
  std::array<FeatureMap, kNumDirected> kernels_;
};

/// Light/dark center-surround pyramids with a zero-mean difference of
/// Gaussians: light = max(0, beta * on), dark = max(0, beta * off).
CSPyramidPair compute_cs_pyramids(const Pyramid& feature, const DoGParams& dog);

/// Oriented variant: the DoG is replaced by +/- the zero-mean even Gabor at
/// the given orientation bin.
CSPyramidPair compute_cs_pyramids(const Pyramid& feature, std::size_t orientation,
                                  const OrientationCSKernelParams& params);

/// N(.) applied level by level.
std::vector<FeatureMap> normalize_levels(const Pyramid& pyr, const NormalizationParams& params);

/// For every level k: sum over j >= k (1-based, j <= last_level) of
/// 2^-j * (kernel * normalized[j]) resampled to level k. Levels past
/// `last_level` get all-zero maps.
std::vector<FeatureMap> coarser_scale_support(std::span<const FeatureMap> normalized, const FeatureMap& kernel,
                                              std::optional<std::size_t> last_level = std::nullopt);

/// max(0, C^k (1 + excite^k - w_opp inhibit^k)) per level.
std::vector<FeatureMap> modulate(std::span<const FeatureMap> complex, std::span<const FeatureMap> excite,
                                 std::span<const FeatureMap> inhibit, double w_opp);

struct LightDarkBO {
  std::vector<FeatureMap> light;
  std::vector<FeatureMap> dark;
};

/// Light- and dark-object BO pyramids of one orientation and side.
LightDarkBO compute_bo_light_dark(const Pyramid& complex, const CSPyramidPair& cs, std::size_t orientation, Side side,
                                  const VonMisesBank& kernels, double w_opp, const NormalizationParams& norm = {});

/// BO pyramid driven by a directed local cue (SA or TJ). `cue` holds the
/// pyramids for the two sides of this orientation. With top_layers_only = n
/// only the n finest levels are modulated.
std::vector<FeatureMap> compute_bo_local_cue(const Pyramid& complex, const Pyramid& cue_same, const Pyramid& cue_opposite,
                                             std::size_t orientation, Side side, const VonMisesBank& kernels,
                                             double w_opp, std::optional<std::size_t> top_layers_only = std::nullopt,
                                             const NormalizationParams& norm = {});

struct BOComponentsRef {
  const DirectedPyramids* light_plus_dark = nullptr;
  const DirectedPyramids* sa = nullptr;
  const DirectedPyramids* tj = nullptr;
};

/// alpha_ref (L + D) + alpha_sa SA + alpha_tj TJ. Terms with zero weight are
/// skipped entirely.
DirectedPyramids combine_bo(const BOComponentsRef& parts, const ModelWeights& weights);

/// Per level and pixel keep only the orientation with the largest |B+ - B-|
/// (lowest index on ties) and only its positive side.
DirectedPyramids winning_bo(const DirectedPyramids& combined);

/// Element-wise sum of directed pyramids with identical layout.
DirectedPyramids sum_directed(std::span<const DirectedPyramids> sets);

/// Cross-scale, cross-feature sum at native resolution.
DirectedMaps final_bo_maps(std::span<const DirectedPyramids> winning, std::span<const double> feature_weights,
                           std::size_t rows, std::size_t cols);

}  // namespace fgo
