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
#include "fgo/border_ownership.hpp"

#include <algorithm>
#include <cmath>

namespace fgo {

void ModelWeights::validate() const {
  if (alpha_ref < 0.0 || alpha_sa < 0.0 || alpha_tj < 0.0) throw ArgumentError("cue weights must be non-negative");
  if (std::abs(alpha_ref + alpha_sa + alpha_tj - 1.0) > 1e-9) throw ArgumentError("cue weights must sum to 1");
  if (w_opp < 0.0) throw ArgumentError("w_opp must be non-negative");
  for (double w : feature_weights) {
    if (w < 0.0) throw ArgumentError("feature weights must be non-negative");
  }
}

VonMisesBank::VonMisesBank(double r0, VonMisesForm form, std::size_t size) {
  for (std::size_t i = 0; i < kNumOrientations; ++i) {
    for (Side s : {Side::plus, Side::minus}) {
      kernels_[directed_index(i, s)] = make_von_mises({bo_direction(i, s), r0, size, form});
    }
  }
}

namespace {

CSPyramidPair cs_with_kernels(const Pyramid& feature, const FeatureMap& on, const FeatureMap& off) {
  CSPyramidPair out;
  out.light.factor = out.dark.factor = feature.factor;
  for (const auto& level : feature.levels) {
    out.light.levels.push_back(rectified(correlate2d(level, on, KernelFit::any)));
    out.dark.levels.push_back(rectified(correlate2d(level, off, KernelFit::any)));
  }
  return out;
}

void require_aligned(std::span<const FeatureMap> a, std::span<const FeatureMap> b) {
  if (a.size() != b.size()) throw DimensionError("pyramids differ in level count");
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (!a[k].same_shape(b[k])) throw DimensionError("pyramid levels differ in shape");
  }
}

}  // namespace

CSPyramidPair compute_cs_pyramids(const Pyramid& feature, const DoGParams& dog) {
  const FeatureMap on = remove_dc(make_center_surround(dog, Polarity::on));
  return cs_with_kernels(feature, on, scaled(on, -1.0));
}

CSPyramidPair compute_cs_pyramids(const Pyramid& feature, std::size_t orientation,
                                  const OrientationCSKernelParams& params) {
  const GaborParams g{orientation_angle(orientation), params.sigma1, params.gamma1, params.omega1, 0};
  const FeatureMap on = make_gabor(g, Parity::even, DcHandling::remove);
  return cs_with_kernels(feature, on, scaled(on, -1.0));
}

std::vector<FeatureMap> normalize_levels(const Pyramid& pyr, const NormalizationParams& params) {
  std::vector<FeatureMap> out;
  out.reserve(pyr.size());
  for (const auto& level : pyr.levels) out.push_back(normalize_map(level, params));
  return out;
}

std::vector<FeatureMap> coarser_scale_support(std::span<const FeatureMap> normalized, const FeatureMap& kernel,
                                              std::optional<std::size_t> last_level) {
  const std::size_t n = normalized.size();
  const std::size_t last = std::min(n, last_level.value_or(n));
  std::vector<FeatureMap> grouped;
  grouped.reserve(last);
  for (std::size_t j = 0; j < last; ++j) grouped.push_back(correlate2d(normalized[j], kernel, KernelFit::any));

  std::vector<FeatureMap> out;
  out.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    FeatureMap acc(normalized[k].rows(), normalized[k].cols(), 0.0);
    for (std::size_t j = k; j < last; ++j) {
      const double weight = std::ldexp(1.0, -static_cast<int>(j + 1));
      add_scaled(acc, resample(grouped[j], acc.rows(), acc.cols()), weight);
    }
    out.push_back(std::move(acc));
  }
  return out;
}

std::vector<FeatureMap> modulate(std::span<const FeatureMap> complex, std::span<const FeatureMap> excite,
                                 std::span<const FeatureMap> inhibit, double w_opp) {
  require_aligned(complex, excite);
  require_aligned(complex, inhibit);
  std::vector<FeatureMap> out;
  out.reserve(complex.size());
  for (std::size_t k = 0; k < complex.size(); ++k) {
    FeatureMap b(complex[k].rows(), complex[k].cols(), 0.0);
    auto c = complex[k].values(), e = excite[k].values(), h = inhibit[k].values();
    auto o = b.values();
    for (std::size_t i = 0; i < o.size(); ++i) o[i] = std::max(0.0, c[i] * (1.0 + e[i] - w_opp * h[i]));
    out.push_back(std::move(b));
  }
  return out;
}

LightDarkBO compute_bo_light_dark(const Pyramid& complex, const CSPyramidPair& cs, std::size_t orientation, Side side,
                                  const VonMisesBank& kernels, double w_opp, const NormalizationParams& norm) {
  require_aligned(complex.levels, cs.light.levels);
  require_aligned(complex.levels, cs.dark.levels);
  const auto nl = normalize_levels(cs.light, norm);
  const auto nd = normalize_levels(cs.dark, norm);
  const FeatureMap& same = kernels.at(orientation, side);
  const FeatureMap& other = kernels.at(orientation, opposite(side));
  LightDarkBO out;
  out.light = modulate(complex.levels, coarser_scale_support(nl, same), coarser_scale_support(nd, other), w_opp);
  out.dark = modulate(complex.levels, coarser_scale_support(nd, same), coarser_scale_support(nl, other), w_opp);
  return out;
}

std::vector<FeatureMap> compute_bo_local_cue(const Pyramid& complex, const Pyramid& cue_same, const Pyramid& cue_opposite,
                                             std::size_t orientation, Side side, const VonMisesBank& kernels,
                                             double w_opp, std::optional<std::size_t> top_layers_only,
                                             const NormalizationParams& norm) {
  require_aligned(complex.levels, cue_same.levels);
  require_aligned(complex.levels, cue_opposite.levels);
  const auto ns = normalize_levels(cue_same, norm);
  const auto no = normalize_levels(cue_opposite, norm);
  return modulate(complex.levels, coarser_scale_support(ns, kernels.at(orientation, side), top_layers_only),
                  coarser_scale_support(no, kernels.at(orientation, opposite(side)), top_layers_only), w_opp);
}

DirectedPyramids combine_bo(const BOComponentsRef& parts, const ModelWeights& weights) {
  weights.validate();
  if (parts.light_plus_dark == nullptr) throw ArgumentError("combine_bo: light+dark BO pyramids are required");
  if (weights.alpha_sa > 0.0 && parts.sa == nullptr) throw ArgumentError("combine_bo: alpha_sa > 0 without SA pyramids");
  if (weights.alpha_tj > 0.0 && parts.tj == nullptr) throw ArgumentError("combine_bo: alpha_tj > 0 without TJ pyramids");
  DirectedPyramids out;
  for (std::size_t d = 0; d < kNumDirected; ++d) {
    const auto& base = parts.light_plus_dark->levels[d];
    auto& dst = out.levels[d];
    dst.reserve(base.size());
    for (std::size_t k = 0; k < base.size(); ++k) {
      FeatureMap m = scaled(base[k], weights.alpha_ref);
      if (weights.alpha_sa > 0.0) add_scaled(m, parts.sa->levels[d][k], weights.alpha_sa);
      if (weights.alpha_tj > 0.0) add_scaled(m, parts.tj->levels[d][k], weights.alpha_tj);
      dst.push_back(std::move(m));
    }
  }
  return out;
}

DirectedPyramids winning_bo(const DirectedPyramids& combined) {
  const std::size_t levels = combined.num_levels();
  DirectedPyramids out;
  for (std::size_t d = 0; d < kNumDirected; ++d) {
    if (combined.levels[d].size() != levels) throw DimensionError("winning_bo: level count differs across directions");
    for (std::size_t k = 0; k < levels; ++k) {
      const auto& ref = combined.levels[0][k];
      if (!combined.levels[d][k].same_shape(ref)) throw DimensionError("winning_bo: level shapes differ");
      out.levels[d].emplace_back(ref.rows(), ref.cols(), 0.0);
    }
  }
  for (std::size_t k = 0; k < levels; ++k) {
    const std::size_t n = combined.levels[0][k].size();
    for (std::size_t p = 0; p < n; ++p) {
      std::size_t best = 0;
      double best_abs = -1.0, best_diff = 0.0;
      for (std::size_t i = 0; i < kNumOrientations; ++i) {
        const double diff = combined.at(i, Side::plus)[k].values()[p] - combined.at(i, Side::minus)[k].values()[p];
        if (std::abs(diff) > best_abs) {
          best_abs = std::abs(diff);
          best_diff = diff;
          best = i;
        }
      }
      if (best_diff > 0.0) {
        out.at(best, Side::plus)[k].values()[p] = best_diff;
      } else if (best_diff < 0.0) {
        out.at(best, Side::minus)[k].values()[p] = -best_diff;
      }
    }
  }
  return out;
}

DirectedPyramids sum_directed(std::span<const DirectedPyramids> sets) {
  if (sets.empty()) throw ArgumentError("sum_directed: no inputs");
  DirectedPyramids out = sets[0];
  for (std::size_t s = 1; s < sets.size(); ++s) {
    for (std::size_t d = 0; d < kNumDirected; ++d) {
      if (sets[s].levels[d].size() != out.levels[d].size()) throw DimensionError("sum_directed: level count differs");
      for (std::size_t k = 0; k < out.levels[d].size(); ++k) add_scaled(out.levels[d][k], sets[s].levels[d][k], 1.0);
    }
  }
  return out;
}

DirectedMaps final_bo_maps(std::span<const DirectedPyramids> winning, std::span<const double> feature_weights,
                           std::size_t rows, std::size_t cols) {
  if (winning.empty()) throw ArgumentError("final_bo_maps: no feature channels");
  if (feature_weights.size() != winning.size()) throw ArgumentError("final_bo_maps: one weight per feature required");
  DirectedMaps out;
  for (std::size_t d = 0; d < kNumDirected; ++d) {
    const std::size_t levels = winning[0].levels[d].size();
    std::vector<FeatureMap> per_level;
    per_level.reserve(levels);
    for (std::size_t k = 0; k < levels; ++k) {
      FeatureMap acc(winning[0].levels[d][k].rows(), winning[0].levels[d][k].cols(), 0.0);
      for (std::size_t f = 0; f < winning.size(); ++f) add_scaled(acc, winning[f].levels[d][k], feature_weights[f]);
      per_level.push_back(std::move(acc));
    }
    out.maps[d] = cross_scale_sum(per_level, rows, cols);
  }
  return out;
}

}  // namespace fgo
