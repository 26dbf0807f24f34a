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
#include <string>
#include <string_view>
#include <vector>

#include "fgo/evaluation.hpp"
#include "fgo/io.hpp"

namespace fgo {

enum class StimulusKind { isolated_square, overlapping_squares, shaded_edge, annulus };

/// Accepts both "isolated-square" and "isolatedSquare" spellings.
StimulusKind parse_stimulus_kind(std::string_view s);
std::string_view to_string(StimulusKind k);

using Color = std::array<double, 3>;

struct StimulusParams {
  std::size_t size = 64;  // image side; shaded edges use the next odd height
  std::size_t square = 24;
  double radius = 20.0;   // disk radius of the annulus kind
  double gradient = 0.5;  // shaded edge: fraction of the figure level lost at the far end
  long offset_x = 0;
  long offset_y = 0;
  Color figure{0.8, 0.8, 0.8};
  Color ground{0.2, 0.2, 0.2};
  Color back{0.5, 0.5, 0.5};  // occluded square of overlapping_squares
};

/// Rendered image plus exact annotations. Contours and segments are present
/// for every kind.
struct Stimulus {
  RGBImage image;
  LabelMap signed_ground_truth;
  FGGroundTruth ground_truth;
  std::optional<LabelMap> contours;
  std::optional<LabelMap> segments;
};

/// Kinds:
///  isolated_square      figure square centred (plus offset) on the ground.
///  overlapping_squares  front square occluding a back square; the squares
///                       span 5/12 of the image and the front one is shifted
///                       by half a side, which yields two T-junctions.
///  shaded_edge          horizontal edge on the middle row, figure above
///                       with a vertical luminance ramp.
///  annulus              figure disk; its ground truth ring points inward.
Stimulus generate_synthetic_stimulus(StimulusKind kind, const StimulusParams& params = {});

/// Signed ground truth for a stack of regions. `front_to_back` lists every
/// region id ordered by depth. Each region's border against farther regions
/// gets -1, its interior pixels touching that border get +1.
LabelMap signed_map_from_regions(const LabelMap& regions, std::span<const std::int32_t> front_to_back);

/// One contour id per (region, farther neighbour) border; the nearest
/// farther neighbour wins where several touch.
LabelMap contours_from_regions(const LabelMap& regions, std::span<const std::int32_t> front_to_back);

/// Three rays from the image centre with the given angles in degrees. Each
/// ray is its own contour; the wedges between rays are the segments.
struct JunctionFixture {
  LabelMap contours;
  LabelMap segments;
};
JunctionFixture render_three_ray_junction(std::size_t size, const std::array<double, 3>& angles_deg);

struct NamedStimulus {
  std::string name;
  Stimulus stimulus;
};

/// Ten fixtures with known figure sides: three isolated squares, two
/// overlapping-square scenes, three shaded edges and two disks.
std::vector<NamedStimulus> fixture_battery();

}  // namespace fgo
