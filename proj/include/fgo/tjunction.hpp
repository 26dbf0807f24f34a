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
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string_view>
#include <vector>

#include "fgo/grid.hpp"
#include "fgo/orientation.hpp"

namespace fgo {

struct TJParams {
  double area_mask_radius = 6.0;
  std::size_t angle_track_length = 7;
  std::size_t min_track_length = 3;
  double influence_radius = 15.0;
  int max_probe_length = 3;
  double y_junction_center = 120.0;  // degrees
  double y_junction_tolerance = 10.0;
  double arrow_threshold = 180.0;
  double candidate_merge_radius = 2.0;
  double segment_neighborhood_radius = 2.0;
  double orientation_fit_radius = 3.0;

  void validate() const;
};

struct Pixel {
  long x = 0;  // column
  long y = 0;  // row
  bool operator==(const Pixel&) const = default;
};

using ContourTriple = std::array<std::int32_t, 3>;
using HatPair = std::array<std::int32_t, 2>;  // sorted ascending

struct JunctionCandidate {
  Pixel location;
  ContourTriple contours{};  // sorted ascending
  ContourTriple regions{};   // sorted ascending
  // Unrounded cluster centroid (x, y). Contour directions are measured from
  // here; when absent, from `location`.
  std::optional<std::array<double, 2>> centroid;
};

enum class Rejection { none, y_junction, arrow_junction, tie, malformed };

std::string_view to_string(Rejection r);

struct AreaClassification {
  bool tie = false;
  std::int32_t figure_region = 0;
  HatPair hat{};
  std::array<std::size_t, 3> counts{};  // per candidate region, same order
};

struct AngleClassification {
  Rejection rejected = Rejection::none;
  HatPair hat{};                    // pair bounding the largest sector
  std::array<double, 3> sectors{};  // degrees, consecutive sectors in polar order, sum 360
  std::array<double, 3> directions{};  // polar angle (degrees) of each contour, candidate order
};

struct TJunction {
  Pixel location;
  ContourTriple contours{};
  ContourTriple regions{};
  HatPair hat_by_area{};
  std::int32_t figure_region = 0;
  HatPair hat_by_angle{};
  std::array<double, 3> angles{};
  bool matched = false;
  Rejection rejected = Rejection::none;
};

/// Pixels where exactly three contour ids meet in a 3x3 window and exactly
/// three regions lie within the segment neighborhood radius; nearby pixels
/// are merged into one candidate at their rounded centroid. Sorted by (y, x).
std::vector<JunctionCandidate> find_junction_candidates(const LabelMap& contours, const LabelMap& segments,
                                                        const TJParams& params = {});

/// Index of the strictly largest count, or nullopt on a tie for the maximum.
std::optional<std::size_t> largest_region(const std::array<std::size_t, 3>& counts);

/// Figure region = region with the largest pixel count in the area mask;
/// the hat is the two contours that border it.
AreaClassification classify_junction_area(const LabelMap& contours, const LabelMap& segments,
                                          const JunctionCandidate& candidate, const TJParams& params = {});

/// Sector analysis of three contour directions (degrees, any range).
AngleClassification classify_sectors(const std::array<double, 3>& directions, const ContourTriple& contour_ids,
                                     const TJParams& params = {});

/// Tracks each contour away from the junction and classifies the sectors
/// between the resulting direction vectors.
AngleClassification classify_junction_angle(const LabelMap& contours, const JunctionCandidate& candidate,
                                            const TJParams& params = {});

/// Full detection: candidates, both classifications, matching. Candidates
/// that cannot be classified are kept with Rejection::malformed.
std::vector<TJunction> detect_tjunctions(const LabelMap& contours, const LabelMap& segments,
                                         const TJParams& params = {});

/// Per-pixel contour orientation in [0, pi) from a total-least-squares line
/// fit over same-id pixels within `radius`. Undefined for isolated pixels.
struct ContourOrientation {
  Grid<double> angle;
  Grid<std::uint8_t> defined;
};

ContourOrientation local_orientation_of_contours(const LabelMap& contours, double radius = 3.0);

/// Nearest of the eight orientation bins (circular in pi).
std::size_t orientation_bin(double angle);

struct TJMaps {
  DirectedMaps maps;
  std::size_t skipped_pixels = 0;
};

/// Paints +1 at hat-contour pixels near each matched junction, in the map of
/// the pixel's orientation bin and the side whose normal probe lands in the
/// figure region.
TJMaps build_tj_maps(const LabelMap& contours, const LabelMap& segments, const std::vector<TJunction>& junctions,
                     const ContourOrientation& orientation, const TJParams& params = {});

/// One record per line: x y c1 c2 c3 hat1 hat2 figureRegion matched rejectedReason
void write_junctions(std::ostream& out, const std::vector<TJunction>& junctions);

}  // namespace fgo
