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
#include <cmath>
#include <cstddef>
#include <numbers>

#include "fgo/grid.hpp"

namespace fgo {

inline constexpr std::size_t kNumOrientations = 8;
inline constexpr std::size_t kNumDirected = 2 * kNumOrientations;

/// Edge orientation of bin i: i * pi / 8, in [0, pi).
inline double orientation_angle(std::size_t i) { return static_cast<double>(i) * std::numbers::pi / kNumOrientations; }

/// Which normal of an oriented edge the figure lies on: plus is
/// theta + pi/2, minus is theta - pi/2.
enum class Side { plus, minus };

inline Side opposite(Side s) { return s == Side::plus ? Side::minus : Side::plus; }
inline double side_sign(Side s) { return s == Side::plus ? 1.0 : -1.0; }

inline double bo_direction(std::size_t orientation, Side side) {
  return orientation_angle(orientation) + side_sign(side) * 0.5 * std::numbers::pi;
}

inline constexpr std::size_t directed_index(std::size_t orientation, Side side) {
  return 2 * orientation + (side == Side::minus ? 1 : 0);
}

/// One map per (orientation, side); 16 in all.
struct DirectedMaps {
  std::array<FeatureMap, kNumDirected> maps;

  FeatureMap& at(std::size_t orientation, Side side) { return maps[directed_index(orientation, side)]; }
  const FeatureMap& at(std::size_t orientation, Side side) const { return maps[directed_index(orientation, side)]; }

  static DirectedMaps zeros(std::size_t rows, std::size_t cols) {
    DirectedMaps d;
    for (auto& m : d.maps) m = FeatureMap(rows, cols, 0.0);
    return d;
  }
};

}  // namespace fgo
