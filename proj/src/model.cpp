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
#include "fgo/model.hpp"

#include <array>

#include "fgo/parallel.hpp"

namespace fgo {

void ModelParams::validate() const {
  gabor.validate();
  dog.validate();
  weights.validate();
  sa.validate();
  tj.validate();
  if (!(r0 > 0.0)) throw ArgumentError("R0 must be positive");
  if (num_scales == 0) throw ConfigError("at least one scale is required");
  if (top_layers_only && *top_layers_only == 0) throw ConfigError("top_layers_only must be >= 1");
  if (!features.color && !features.intensity && !features.orientation) {
    throw ConfigError("at least one feature channel must be enabled");
  }
}

TJMaps compute_tj_cue(const LabelMap& contours, const LabelMap& segments, const TJParams& params,
                      std::vector<TJunction>* junctions) {
  auto found = detect_tjunctions(contours, segments, params);
  const auto orientation = local_orientation_of_contours(contours, params.orientation_fit_radius);
  auto maps = build_tj_maps(contours, segments, found, orientation, params);
  if (junctions != nullptr) *junctions = std::move(found);
  return maps;
}

namespace {

// Light+dark BO for a symmetric (DoG) feature, all 16 directions, followed
// by the winner selection. Cue weights do not apply to these channels.
DirectedPyramids symmetric_feature_winning(const Pyramid& feature, const std::array<Pyramid, kNumOrientations>& complex,
                                           const VonMisesBank& kernels, const ModelParams& params) {
  const CSPyramidPair cs = compute_cs_pyramids(feature, params.dog);
  const auto nl = normalize_levels(cs.light, params.normalization);
  const auto nd = normalize_levels(cs.dark, params.normalization);

  std::array<std::vector<FeatureMap>, kNumDirected> light_support, dark_support;
  parallel_for(kNumDirected, params.jobs, [&](std::size_t d) {
    const std::size_t i = d / 2;
    const Side s = d % 2 == 0 ? Side::plus : Side::minus;
    light_support[d] = coarser_scale_support(nl, kernels.at(i, s));
    dark_support[d] = coarser_scale_support(nd, kernels.at(i, s));
  });

  DirectedPyramids combined;
  parallel_for(kNumDirected, params.jobs, [&](std::size_t d) {
    const std::size_t i = d / 2;
    const Side s = d % 2 == 0 ? Side::plus : Side::minus;
    const std::size_t o = directed_index(i, opposite(s));
    auto light = modulate(complex[i].levels, light_support[d], dark_support[o], params.weights.w_opp);
    const auto dark = modulate(complex[i].levels, dark_support[d], light_support[o], params.weights.w_opp);
    for (std::size_t k = 0; k < light.size(); ++k) add_scaled(light[k], dark[k], 1.0);
    combined.levels[d] = std::move(light);
  });
  return winning_bo(combined);
}

std::array<Pyramid, kNumDirected> cue_pyramids(const DirectedMaps& cue, const ModelParams& params) {
  std::array<Pyramid, kNumDirected> out;
  for (std::size_t d = 0; d < kNumDirected; ++d) out[d] = build_pyramid(cue.maps[d], params.num_scales, params.factor);
  return out;
}

DirectedPyramids local_cue_bo(const DirectedMaps& cue, const std::array<Pyramid, kNumOrientations>& complex,
                              const VonMisesBank& kernels, const ModelParams& params) {
  const auto pyr = cue_pyramids(cue, params);
  DirectedPyramids out;
  parallel_for(kNumDirected, params.jobs, [&](std::size_t d) {
    const std::size_t i = d / 2;
    const Side s = d % 2 == 0 ? Side::plus : Side::minus;
    out.levels[d] = compute_bo_local_cue(complex[i], pyr[d], pyr[directed_index(i, opposite(s))], i, s, kernels,
                                         params.weights.w_opp, params.top_layers_only, params.normalization);
  });
  return out;
}

void require_cue_shape(const DirectedMaps& cue, std::size_t rows, std::size_t cols) {
  for (const auto& m : cue.maps) {
    if (m.rows() != rows || m.cols() != cols) throw DimensionError("cue map shape differs from the image");
  }
}

}  // namespace

BOComponents compute_bo_components(const RGBImage& image, const ModelParams& params, const CueMaps& cues) {
  params.validate();
  BOComponents out;
  out.rows = image.rows();
  out.cols = image.cols();

  const ChannelSet channels = compute_channels(image, params.gabor);
  const ChannelPyramids pyr = build_channel_pyramids(channels, params.num_scales, params.factor);
  const VonMisesBank kernels(params.r0, params.von_mises_form);

  const std::array<double, 1> unit{1.0};
  if (params.features.intensity) {
    const std::array<DirectedPyramids, 1> w{symmetric_feature_winning(pyr.intensity, pyr.orientation, kernels, params)};
    out.intensity_final = final_bo_maps(w, unit, out.rows, out.cols);
  }
  if (params.features.color) {
    std::vector<DirectedPyramids> per_opponent;
    for (const auto& c : pyr.color) per_opponent.push_back(symmetric_feature_winning(c, pyr.orientation, kernels, params));
    const std::array<DirectedPyramids, 1> w{sum_directed(per_opponent)};
    out.color_final = final_bo_maps(w, unit, out.rows, out.cols);
  }
  if (params.features.orientation) {
    DirectedPyramids light_dark;
    parallel_for(kNumOrientations, params.jobs, [&](std::size_t i) {
      const CSPyramidPair cs = compute_cs_pyramids(pyr.orientation[i], i, params.orientation_cs);
      for (Side s : {Side::plus, Side::minus}) {
        auto bo = compute_bo_light_dark(pyr.orientation[i], cs, i, s, kernels, params.weights.w_opp, params.normalization);
        for (std::size_t k = 0; k < bo.light.size(); ++k) add_scaled(bo.light[k], bo.dark[k], 1.0);
        light_dark.at(i, s) = std::move(bo.light);
      }
    });
    out.orientation_light_dark = std::move(light_dark);
    if (cues.sa) {
      require_cue_shape(*cues.sa, out.rows, out.cols);
      out.orientation_sa = local_cue_bo(*cues.sa, pyr.orientation, kernels, params);
    }
    if (cues.tj) {
      require_cue_shape(*cues.tj, out.rows, out.cols);
      out.orientation_tj = local_cue_bo(*cues.tj, pyr.orientation, kernels, params);
    }
  }
  return out;
}

DirectedMaps finish_bo_maps(const BOComponents& components, const ModelWeights& weights) {
  weights.validate();
  if (!components.color_final && !components.intensity_final && !components.orientation_light_dark) {
    throw ConfigError("no feature channel was computed");
  }
  DirectedMaps out = DirectedMaps::zeros(components.rows, components.cols);
  if (components.orientation_light_dark) {
    const BOComponentsRef parts{&*components.orientation_light_dark,
                                components.orientation_sa ? &*components.orientation_sa : nullptr,
                                components.orientation_tj ? &*components.orientation_tj : nullptr};
    const std::array<DirectedPyramids, 1> w{winning_bo(combine_bo(parts, weights))};
    const std::array<double, 1> fw{weights.feature_weights[2]};
    out = final_bo_maps(w, fw, components.rows, components.cols);
  }
  // Color and intensity: their combined pyramid is alpha_ref (L + D) and
  // winner selection commutes with a non-negative scale.
  const auto add = [&](const std::optional<DirectedMaps>& part, double w) {
    if (!part || w == 0.0) return;
    for (std::size_t d = 0; d < kNumDirected; ++d) add_scaled(out.maps[d], part->maps[d], w);
  };
  add(components.color_final, weights.alpha_ref * weights.feature_weights[0]);
  add(components.intensity_final, weights.alpha_ref * weights.feature_weights[1]);
  return out;
}

DirectedMaps run_model(const RGBImage& image, const ModelParams& params, const CueMaps& cues) {
  params.validate();
  CueMaps used;
  if (params.features.orientation && params.weights.alpha_sa > 0.0) {
    used.sa = cues.sa ? *cues.sa : compute_sa_maps(compute_intensity(image), params.sa);
  }
  if (params.features.orientation && params.weights.alpha_tj > 0.0) {
    if (!cues.tj) throw ArgumentError("alpha_tj > 0 requires T-junction cue maps");
    used.tj = cues.tj;
  }
  return finish_bo_maps(compute_bo_components(image, params, used), params.weights);
}

}  // namespace fgo
