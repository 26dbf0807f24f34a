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

#include "fgo/filters.hpp"
#include "fgo/grid.hpp"
#include "fgo/io.hpp"
#include "fgo/orientation.hpp"

namespace fgo {

inline constexpr std::size_t kNumColorChannels = 4;

enum class ColorOpponent { rg, gr, by, yb };

struct ChannelSet {
  FeatureMap intensity;
  std::array<FeatureMap, kNumColorChannels> color;     // RG, GR, BY, YB
  std::array<FeatureMap, kNumOrientations> orientation;  // C_theta, theta = i pi / 8
};

struct ChannelPyramids {
  Pyramid intensity;
  std::array<Pyramid, kNumColorChannels> color;
  std::array<Pyramid, kNumOrientations> orientation;
};

/// (r + g + b) / 3.
FeatureMap compute_intensity(const RGBImage& img);

/// Rectified opponency maps RG, GR, BY, YB from intensity-normalized rgb.
/// Pixels with I <= 0.1 max(I) are treated as colorless.
std::array<FeatureMap, kNumColorChannels> compute_color_opponency(const RGBImage& img);

/// Complex-cell energy for the eight orientation bins; `base.theta` is ignored.
std::array<FeatureMap, kNumOrientations> compute_orientation_channels(const FeatureMap& intensity,
                                                                       const GaborParams& base);

ChannelSet compute_channels(const RGBImage& img, const GaborParams& base);

ChannelPyramids build_channel_pyramids(const ChannelSet& channels, std::size_t num_levels, PyramidFactor factor);

}  // namespace fgo
