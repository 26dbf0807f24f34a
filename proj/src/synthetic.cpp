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
#include "fgo/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "fgo/error.hpp"

namespace fgo {

StimulusKind parse_stimulus_kind(std::string_view s) {
  if (s == "isolated-square" || s == "isolatedSquare") return StimulusKind::isolated_square;
  if (s == "overlapping-squares" || s == "overlappingSquares") return StimulusKind::overlapping_squares;
  if (s == "shaded-edge" || s == "shadedEdge") return StimulusKind::shaded_edge;
  if (s == "annulus") return StimulusKind::annulus;
  throw ArgumentError("unknown stimulus kind: " + std::string(s));
}

std::string_view to_string(StimulusKind k) {
  switch (k) {
    case StimulusKind::isolated_square: return "isolated-square";
    case StimulusKind::overlapping_squares: return "overlapping-squares";
    case StimulusKind::shaded_edge: return "shaded-edge";
    case StimulusKind::annulus: return "annulus";
  }
  return "?";
}

namespace {

constexpr long kDr4[4] = {-1, 1, 0, 0};
constexpr long kDc4[4] = {0, 0, -1, 1};

std::vector<std::size_t> depth_ranks(const LabelMap& regions, std::span<const std::int32_t> front_to_back) {
  std::int32_t max_id = 0;
  for (auto v : regions.values()) max_id = std::max(max_id, v);
  std::vector<std::size_t> rank(static_cast<std::size_t>(max_id) + 1, SIZE_MAX);
  for (std::size_t i = 0; i < front_to_back.size(); ++i) {
    const auto id = front_to_back[i];
    if (id <= 0 || id > max_id) continue;
    rank[static_cast<std::size_t>(id)] = i;
  }
  for (auto v : regions.values()) {
    if (v <= 0 || rank[static_cast<std::size_t>(v)] == SIZE_MAX) throw ArgumentError("region id missing from depth order");
  }
  return rank;
}

// For each pixel: the id of the nearest farther region among its 4
// neighbours, or 0 when it is not on a border.
LabelMap farther_neighbour(const LabelMap& regions, const std::vector<std::size_t>& rank) {
  LabelMap out(regions.rows(), regions.cols(), 0);
  for (std::size_t r = 0; r < regions.rows(); ++r) {
    for (std::size_t c = 0; c < regions.cols(); ++c) {
      const auto own = rank[static_cast<std::size_t>(regions(r, c))];
      std::size_t best = SIZE_MAX;
      for (int k = 0; k < 4; ++k) {
        const long rr = static_cast<long>(r) + kDr4[k], cc = static_cast<long>(c) + kDc4[k];
        if (!regions.contains(rr, cc)) continue;
        const auto id = regions(static_cast<std::size_t>(rr), static_cast<std::size_t>(cc));
        const auto rk = rank[static_cast<std::size_t>(id)];
        if (rk > own && rk < best) {
          best = rk;
          out(r, c) = id;
        }
      }
    }
  }
  return out;
}

RGBImage paint(const LabelMap& regions, const std::vector<Color>& colors) {
  FeatureMap ch[3] = {FeatureMap(regions.rows(), regions.cols()), FeatureMap(regions.rows(), regions.cols()),
                      FeatureMap(regions.rows(), regions.cols())};
  for (std::size_t r = 0; r < regions.rows(); ++r) {
    for (std::size_t c = 0; c < regions.cols(); ++c) {
      const auto& col = colors[static_cast<std::size_t>(regions(r, c))];
      for (int k = 0; k < 3; ++k) ch[k](r, c) = col[static_cast<std::size_t>(k)];
    }
  }
  return RGBImage(std::move(ch[0]), std::move(ch[1]), std::move(ch[2]));
}

Stimulus finish(RGBImage image, LabelMap regions, const std::vector<std::int32_t>& order) {
  Stimulus s;
  s.image = std::move(image);
  s.signed_ground_truth = signed_map_from_regions(regions, order);
  s.ground_truth = load_ground_truth(s.signed_ground_truth);
  s.contours = contours_from_regions(regions, order);
  s.segments = std::move(regions);
  return s;
}

void require_color(const Color& c) {
  for (double v : c) {
    if (!(v >= 0.0 && v <= 1.0)) throw ArgumentError("stimulus colors must lie in [0, 1]");
  }
}

Stimulus isolated_square(const StimulusParams& p) {
  const long n = static_cast<long>(p.size), s = static_cast<long>(p.square);
  const long top = (n - s) / 2 + p.offset_y, left = (n - s) / 2 + p.offset_x;
  if (s < 2 || top < 1 || left < 1 || top + s > n - 1 || left + s > n - 1) {
    throw ArgumentError("square does not fit inside the image with a ground margin");
  }
  LabelMap regions(p.size, p.size, 1);
  for (long r = top; r < top + s; ++r)
    for (long c = left; c < left + s; ++c) regions(static_cast<std::size_t>(r), static_cast<std::size_t>(c)) = 2;
  auto image = paint(regions, {Color{}, p.ground, p.figure});
  return finish(std::move(image), std::move(regions), {2, 1});
}

Stimulus overlapping_squares(const StimulusParams& p) {
  const long n = static_cast<long>(p.size);
  const long s = n * 5 / 12, a = n * 5 / 24, shift = s / 2;
  LabelMap regions(p.size, p.size, 1);
  for (long r = a; r < a + s; ++r)
    for (long c = a; c < a + s; ++c) regions(static_cast<std::size_t>(r), static_cast<std::size_t>(c)) = 2;
  for (long r = a + shift; r < a + shift + s; ++r)
    for (long c = a + shift; c < a + shift + s; ++c) regions(static_cast<std::size_t>(r), static_cast<std::size_t>(c)) = 3;
  auto image = paint(regions, {Color{}, p.ground, p.back, p.figure});
  return finish(std::move(image), std::move(regions), {3, 2, 1});
}

Stimulus shaded_edge(const StimulusParams& p) {
  if (p.gradient < 0.0 || p.gradient > 1.0) throw ArgumentError("gradient must lie in [0, 1]");
  const std::size_t rows = p.size | 1u, cols = p.size;
  const std::size_t edge = rows / 2;
  LabelMap regions(rows, cols, 1);
  FeatureMap ch[3] = {FeatureMap(rows, cols), FeatureMap(rows, cols), FeatureMap(rows, cols)};
  for (std::size_t r = 0; r < rows; ++r) {
    // The middle row carries the mean of both sides so that a zero gradient
    // gives an image antisymmetric about that row.
    const double t = r < edge ? static_cast<double>(edge - r) / static_cast<double>(edge) : 0.0;
    for (std::size_t c = 0; c < cols; ++c) {
      if (r <= edge) regions(r, c) = 2;
      for (std::size_t k = 0; k < 3; ++k) {
        double v;
        if (r < edge) v = p.figure[k] * (1.0 - p.gradient * t);
        else if (r == edge) v = 0.5 * (p.figure[k] + p.ground[k]);
        else v = p.ground[k];
        ch[k](r, c) = v;
      }
    }
  }
  return finish(RGBImage(std::move(ch[0]), std::move(ch[1]), std::move(ch[2])), std::move(regions), {2, 1});
}

Stimulus disk(const StimulusParams& p) {
  const double centre = (static_cast<double>(p.size) - 1.0) / 2.0;
  const double cx = centre + static_cast<double>(p.offset_x), cy = centre + static_cast<double>(p.offset_y);
  if (!(p.radius >= 2.0) || cx - p.radius < 1.0 || cy - p.radius < 1.0 ||
      cx + p.radius > static_cast<double>(p.size) - 2.0 || cy + p.radius > static_cast<double>(p.size) - 2.0) {
    throw ArgumentError("disk does not fit inside the image with a ground margin");
  }
  LabelMap regions(p.size, p.size, 1);
  for (std::size_t r = 0; r < p.size; ++r)
    for (std::size_t c = 0; c < p.size; ++c)
      if (std::hypot(static_cast<double>(c) - cx, static_cast<double>(r) - cy) <= p.radius) regions(r, c) = 2;
  auto image = paint(regions, {Color{}, p.ground, p.figure});
  return finish(std::move(image), std::move(regions), {2, 1});
}

}  // namespace

LabelMap signed_map_from_regions(const LabelMap& regions, std::span<const std::int32_t> front_to_back) {
  const auto rank = depth_ranks(regions, front_to_back);
  const LabelMap border = farther_neighbour(regions, rank);
  LabelMap out(regions.rows(), regions.cols(), 0);
  for (std::size_t i = 0; i < regions.size(); ++i) {
    if (border.values()[i] != 0) out.values()[i] = -1;
  }
  // +1 on interior pixels touching their own region's border and no other.
  for (std::size_t r = 0; r < regions.rows(); ++r) {
    for (std::size_t c = 0; c < regions.cols(); ++c) {
      if (out(r, c) != 0) continue;
      bool own = false, foreign = false;
      for (long dr = -1; dr <= 1; ++dr) {
        for (long dc = -1; dc <= 1; ++dc) {
          const long rr = static_cast<long>(r) + dr, cc = static_cast<long>(c) + dc;
          if (!regions.contains(rr, cc)) continue;
          const auto ur = static_cast<std::size_t>(rr), uc = static_cast<std::size_t>(cc);
          if (out(ur, uc) != -1) continue;
          (regions(ur, uc) == regions(r, c) ? own : foreign) = true;
        }
      }
      if (own && !foreign) out(r, c) = 1;
    }
  }
  return out;
}

LabelMap contours_from_regions(const LabelMap& regions, std::span<const std::int32_t> front_to_back) {
  const auto rank = depth_ranks(regions, front_to_back);
  const LabelMap border = farther_neighbour(regions, rank);
  LabelMap out(regions.rows(), regions.cols(), 0);
  std::vector<std::pair<std::int32_t, std::int32_t>> ids;
  for (std::size_t i = 0; i < regions.size(); ++i) {
    const auto b = border.values()[i];
    if (b == 0) continue;
    const std::pair<std::int32_t, std::int32_t> key{regions.values()[i], b};
    auto it = std::find(ids.begin(), ids.end(), key);
    if (it == ids.end()) it = ids.insert(ids.end(), key);
    out.values()[i] = static_cast<std::int32_t>(it - ids.begin()) + 1;
  }
  return out;
}

Stimulus generate_synthetic_stimulus(StimulusKind kind, const StimulusParams& params) {
  if (params.size < 32) throw ArgumentError("stimulus size must be at least 32 px");
  require_color(params.figure);
  require_color(params.ground);
  require_color(params.back);
  switch (kind) {
    case StimulusKind::isolated_square: return isolated_square(params);
    case StimulusKind::overlapping_squares: return overlapping_squares(params);
    case StimulusKind::shaded_edge: return shaded_edge(params);
    case StimulusKind::annulus: return disk(params);
  }
  throw ArgumentError("unknown stimulus kind");
}

JunctionFixture render_three_ray_junction(std::size_t size, const std::array<double, 3>& angles_deg) {
  if (size < 16) throw ArgumentError("junction fixture needs at least 16 px");
  std::array<double, 3> sorted = angles_deg;
  for (auto& a : sorted) a = std::fmod(std::fmod(a, 360.0) + 360.0, 360.0);
  std::sort(sorted.begin(), sorted.end());
  if (sorted[0] == sorted[1] || sorted[1] == sorted[2]) throw ArgumentError("ray angles must be distinct");

  const double centre = static_cast<double>(size / 2);
  JunctionFixture f{LabelMap(size, size, 0), LabelMap(size, size, 0)};
  for (std::size_t r = 0; r < size; ++r) {
    for (std::size_t c = 0; c < size; ++c) {
      double a = std::atan2(static_cast<double>(r) - centre, static_cast<double>(c) - centre) * 180.0 / std::numbers::pi;
      if (a < 0.0) a += 360.0;
      std::int32_t region = 3;  // wraps from the last ray to the first
      if (a >= sorted[0] && a < sorted[1]) region = 1;
      else if (a >= sorted[1] && a < sorted[2]) region = 2;
      f.segments(r, c) = region;
    }
  }
  const double length = centre - 2.0;
  for (std::size_t k = 0; k < 3; ++k) {
    const double phi = angles_deg[k] * std::numbers::pi / 180.0;
    for (double t = 1.0; t <= length; t += 0.25) {
      const long c = std::lround(centre + t * std::cos(phi)), r = std::lround(centre + t * std::sin(phi));
      if (!f.contours.contains(r, c)) continue;
      auto& v = f.contours(static_cast<std::size_t>(r), static_cast<std::size_t>(c));
      if (v == 0) v = static_cast<std::int32_t>(k) + 1;
    }
  }
  return f;
}

std::vector<NamedStimulus> fixture_battery() {
  std::vector<NamedStimulus> out;
  auto add = [&](std::string name, StimulusKind kind, const StimulusParams& p) {
    out.push_back({std::move(name), generate_synthetic_stimulus(kind, p)});
  };
  StimulusParams p;
  add("square-light", StimulusKind::isolated_square, p);
  p.figure = {0.25, 0.25, 0.25};
  p.ground = {0.75, 0.75, 0.75};
  add("square-dark", StimulusKind::isolated_square, p);
  p = {};
  p.square = 16;
  p.offset_x = -8;
  p.offset_y = 6;
  p.figure = {0.9, 0.3, 0.2};
  p.ground = {0.2, 0.5, 0.3};
  add("square-small-color", StimulusKind::isolated_square, p);

  p = {};
  p.size = 96;
  add("overlap-light", StimulusKind::overlapping_squares, p);
  p.figure = {0.15, 0.15, 0.15};
  p.back = {0.45, 0.45, 0.45};
  p.ground = {0.85, 0.85, 0.85};
  add("overlap-dark", StimulusKind::overlapping_squares, p);

  for (double g : {0.3, 0.5, 0.7}) {
    p = {};
    p.gradient = g;
    add("shaded-edge-" + std::to_string(static_cast<int>(std::lround(g * 10))), StimulusKind::shaded_edge, p);
  }

  p = {};
  add("disk-light", StimulusKind::annulus, p);
  p.radius = 14.0;
  p.figure = {0.3, 0.3, 0.3};
  p.ground = {0.7, 0.7, 0.7};
  add("disk-dark", StimulusKind::annulus, p);
  return out;
}

}  // namespace fgo
