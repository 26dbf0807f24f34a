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

#include <optional>

#include "fgo/border_ownership.hpp"
#include "fgo/channels.hpp"
#include "fgo/filters.hpp"
#include "fgo/io.hpp"
#include "fgo/spectral_anisotropy.hpp"
#include "fgo/tjunction.hpp"

namespace fgo {

struct FeatureSelection {
  bool color = true;
  bool intensity = true;
  bool orientation = true;
};

/// Every tunable of the feed-forward model. Defaults reproduce the reference
/// parameter set.
struct ModelParams {
  GaborParams gabor{0.0, 2.24, 0.5, 1.57, 0};
  DoGParams dog{0.90, 2.70, 0};
  OrientationCSKernelParams orientation_cs{};
  double r0 = 2.0;
  VonMisesForm von_mises_form = VonMisesForm::cosine;
  std::size_t num_scales = 10;
  PyramidFactor factor = PyramidFactor::half_octave;
  NormalizationParams normalization{};
  ModelWeights weights{};
  SAParams sa{};
  TJParams tj{};
  std::optional<std::size_t> top_layers_only;
  FeatureSelection features{};
  std::size_t jobs = 1;

  void validate() const;
};

/// Native-resolution local cue maps. Absent cues do not enter the model.
struct CueMaps {
  std::optional<DirectedMaps> sa;
  std::optional<DirectedMaps> tj;
};

/// Everything that does not depend on the cue weights. Color and intensity
/// carry no local cues, so their contribution is alpha_ref times a fixed
/// native-resolution sum and is stored already summed across scales.
struct BOComponents {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::optional<DirectedMaps> color_final;
  std::optional<DirectedMaps> intensity_final;
  std::optional<DirectedPyramids> orientation_light_dark;
  std::optional<DirectedPyramids> orientation_sa;
  std::optional<DirectedPyramids> orientation_tj;
};

/// T-junction cue maps from contour and segmentation label maps.
TJMaps compute_tj_cue(const LabelMap& contours, const LabelMap& segments, const TJParams& params,
                      std::vector<TJunction>* junctions = nullptr);

BOComponents compute_bo_components(const RGBImage& image, const ModelParams& params, const CueMaps& cues = {});

/// Combines the orientation channel with `weights`, selects winners and sums
/// features and scales into the 16 final maps.
DirectedMaps finish_bo_maps(const BOComponents& components, const ModelWeights& weights);

/// Full pipeline. When alpha_sa > 0 and no SA maps are supplied they are
/// computed from the image; alpha_tj > 0 requires supplied TJ maps.
DirectedMaps run_model(const RGBImage& image, const ModelParams& params, const CueMaps& cues = {});

}  // namespace fgo
