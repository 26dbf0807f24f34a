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
#include "fgo/channels.hpp"

#include <algorithm>
#include <cmath>

namespace fgo {

FeatureMap compute_intensity(const RGBImage& img) {
  FeatureMap out(img.rows(), img.cols(), 0.0);
  auto r = img.r.values(), g = img.g.values(), b = img.b.values();
  auto o = out.values();
  for (std::size_t i = 0; i < o.size(); ++i) o[i] = (r[i] + g[i] + b[i]) / 3.0;
  return out;
}

std::array<FeatureMap, kNumColorChannels> compute_color_opponency(const RGBImage& img) {
  const FeatureMap intensity = compute_intensity(img);
  const double threshold = 0.1 * max_value(intensity);
  std::array<FeatureMap, kNumColorChannels> out;
  for (auto& m : out) m = FeatureMap(img.rows(), img.cols(), 0.0);

  auto I = intensity.values();
  for (std::size_t i = 0; i < I.size(); ++i) {
    if (!(I[i] > threshold)) continue;
    const double r = img.r.values()[i] / I[i];
    const double g = img.g.values()[i] / I[i];
    const double b = img.b.values()[i] / I[i];
    const double R = std::max(0.0, r - (g + b) / 2.0);
    const double G = std::max(0.0, g - (r + b) / 2.0);
    const double B = std::max(0.0, b - (g + r) / 2.0);
    const double Y = std::max(0.0, (r + g) / 2.0 - std::abs(r - g) / 2.0 - b);
    out[0].values()[i] = std::max(0.0, R - G);
    out[1].values()[i] = std::max(0.0, G - R);
    out[2].values()[i] = std::max(0.0, B - Y);
    out[3].values()[i] = std::max(0.0, Y - B);
  }
  return out;
}

std::array<FeatureMap, kNumOrientations> compute_orientation_channels(const FeatureMap& intensity,
                                                                       const GaborParams& base) {
  if (intensity.empty()) throw ArgumentError("orientation channels: empty intensity map");
  std::array<FeatureMap, kNumOrientations> out;
  for (std::size_t i = 0; i < kNumOrientations; ++i) {
    GaborParams p = base;
    p.theta = orientation_angle(i);
    out[i] = complex_response(intensity, p, KernelFit::any);
  }
  return out;
}

ChannelSet compute_channels(const RGBImage& img, const GaborParams& base) {
  ChannelSet ch;
  ch.intensity = compute_intensity(img);
  ch.color = compute_color_opponency(img);
  ch.orientation = compute_orientation_channels(ch.intensity, base);
  return ch;
}

ChannelPyramids build_channel_pyramids(const ChannelSet& channels, std::size_t num_levels, PyramidFactor factor) {
  ChannelPyramids p;
  p.intensity = build_pyramid(channels.intensity, num_levels, factor);
  for (std::size_t i = 0; i < kNumColorChannels; ++i) p.color[i] = build_pyramid(channels.color[i], num_levels, factor);
  for (std::size_t i = 0; i < kNumOrientations; ++i) {
    p.orientation[i] = build_pyramid(channels.orientation[i], num_levels, factor);
  }
  return p;
}

}  // namespace fgo
