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
#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "fgo/spectral_anisotropy.hpp"
#include "fgo/synthetic.hpp"
#include "fgo/tjunction.hpp"
#include "oracles.hpp"

namespace fgo {
namespace {

constexpr double kPi = std::numbers::pi;

TEST(SpectralAnisotropy, Frequencies) {
  EXPECT_NEAR(sa_carrier_frequency(9, 4), 1.396, 1e-3);
  EXPECT_DOUBLE_EQ(sa_carrier_frequency(9, 4), kPi * 4 / 9);
  EXPECT_DOUBLE_EQ(sa_carrier_frequency(25, 5), kPi * 5 / 25);
  EXPECT_EQ(SAParams{}.filter_sizes(), (std::vector<std::size_t>{9, 11, 13, 15, 17, 19, 21, 23, 25}));
}

TEST(SpectralAnisotropy, ConstantImageIsZero) {
  auto sa = compute_sa_maps(FeatureMap(40, 40, 0.3));
  for (const auto& m : sa.maps)
    for (double v : m.values()) EXPECT_NEAR(v, 0.0, 1e-10);
}

TEST(SpectralAnisotropy, MirrorSymmetricStimulus) {
  // Random rows mirrored about the middle row.
  const std::size_t n = 41, e = 20;
  std::mt19937_64 rng(41);
  auto half = oracle::random_map(rng, e + 1, n, 0, 1);
  FeatureMap img(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) img(r, c) = half(r <= e ? r : 2 * e - r, c);
  auto sa = compute_sa_maps(img);
  for (std::size_t c = 0; c < n; ++c) EXPECT_NEAR(sa.at(0, Side::plus)(e, c), sa.at(0, Side::minus)(e, c), 1e-6);
}

TEST(SpectralAnisotropy, RampSideWins) {
  auto st = generate_synthetic_stimulus(StimulusKind::shaded_edge);
  auto img = st.image.r;
  auto sa = compute_sa_maps(img);
  const std::size_t e = img.rows() / 2;
  for (std::size_t c = 10; c + 10 < img.cols(); ++c)
    EXPECT_GT(sa.at(0, Side::minus)(e, c), sa.at(0, Side::plus)(e, c)) << c;  // minus points up, into the ramp
}

TEST(SpectralAnisotropy, TranslationCovariant) {
  const std::size_t n = 80, dy = 3, dx = 5;
  std::mt19937_64 rng(42);
  auto img = oracle::random_map(rng, n, n, 0, 1);
  FeatureMap moved(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) moved(r, c) = img((r + n - dy) % n, (c + n - dx) % n);
  auto a = compute_sa_maps(img), b = compute_sa_maps(moved);
  // Far enough that neither the filter support nor the r offset reaches a border or the wrap seam.
  for (std::size_t k = 0; k < kNumDirected; ++k)
    for (std::size_t r = 38; r < 42; ++r)
      for (std::size_t c = 38; c < 42; ++c) EXPECT_NEAR(a.maps[k](r, c), b.maps[k](r + dy, c + dx), 1e-6);
}

TEST(JunctionCandidates, BlankAndMismatch) {
  LabelMap blank(20, 20, 0);
  EXPECT_TRUE(find_junction_candidates(blank, blank).empty());
  EXPECT_THROW(find_junction_candidates(blank, LabelMap(20, 21, 0)), DimensionError);
}

TEST(JunctionCandidates, PlusJunctionExcluded) {
  const long n = 31, m = 15;
  LabelMap contours(n, n, 0), segments(n, n, 0);
  for (long r = 0; r < n; ++r)
    for (long c = 0; c < n; ++c) segments(r, c) = (r < m ? 1 : 3) + (c < m ? 0 : 1);
  for (long t = 1; t < m; ++t) {
    contours(m, m + t) = 1;
    contours(m, m - t) = 2;
    contours(m - t, m) = 3;
    contours(m + t, m) = 4;
  }
  EXPECT_TRUE(find_junction_candidates(contours, segments).empty());
}

TEST(JunctionCandidates, OverlappingSquaresGiveTwo) {
  StimulusParams p;
  p.size = 96;
  auto st = generate_synthetic_stimulus(StimulusKind::overlapping_squares, p);
  auto cands = find_junction_candidates(*st.contours, *st.segments);
  ASSERT_EQ(cands.size(), 2u);
  // Occlusion points: where the front square's left/top edges cut the back square.
  EXPECT_NEAR(cands[0].location.x, 60, 2);
  EXPECT_NEAR(cands[0].location.y, 40, 2);
  EXPECT_NEAR(cands[1].location.x, 40, 2);
  EXPECT_NEAR(cands[1].location.y, 60, 2);
  EXPECT_EQ(find_junction_candidates(*st.contours, *st.segments).size(), 2u);
}

TEST(AreaClassification, Argmax) {
  EXPECT_EQ(largest_region({60, 30, 24}), 0u);
  EXPECT_EQ(largest_region({10, 30, 24}), 1u);
  EXPECT_FALSE(largest_region({38, 38, 37}).has_value());
}

TEST(AreaClassification, TShapeLargestWedge) {
  // Hat along 0 and 180 degrees, stem pointing down; the upper half-plane
  // (segment 3) is the largest region.
  auto f = render_three_ray_junction(41, {0.0, 90.0, 180.0});
  auto cands = find_junction_candidates(f.contours, f.segments);
  ASSERT_EQ(cands.size(), 1u);
  auto area = classify_junction_area(f.contours, f.segments, cands[0]);
  ASSERT_FALSE(area.tie);
  EXPECT_EQ(area.figure_region, 3);
  EXPECT_EQ(area.hat, (HatPair{1, 3}));
}

TEST(AngleClassification, Sectors) {
  ContourTriple ids{1, 2, 3};
  auto t = classify_sectors({0.0, 90.0, 180.0}, ids);
  EXPECT_EQ(t.rejected, Rejection::none);
  EXPECT_EQ(t.hat, (HatPair{1, 3}));
  std::array<double, 3> sorted = t.sectors;
  std::sort(sorted.begin(), sorted.end());
  EXPECT_NEAR(sorted[0], 90.0, 1e-9);
  EXPECT_NEAR(sorted[2], 180.0, 1e-9);
  EXPECT_NEAR(t.sectors[0] + t.sectors[1] + t.sectors[2], 360.0, 1e-9);

  EXPECT_EQ(classify_sectors({90.0, 210.0, 330.0}, ids).rejected, Rejection::y_junction);
  EXPECT_EQ(classify_sectors({0.0, 80.0, 160.0}, ids).rejected, Rejection::arrow_junction);  // 80, 80, 200
  EXPECT_EQ(classify_sectors({0.0, 125.0, 240.0}, ids).rejected, Rejection::y_junction);
  EXPECT_EQ(classify_sectors({0.0, 100.0, 215.0}, ids).rejected, Rejection::none);
}

TEST(AngleClassification, RenderedFixtures) {
  auto check = [](std::array<double, 3> angles, Rejection expected) {
    auto f = render_three_ray_junction(41, angles);
    auto cands = find_junction_candidates(f.contours, f.segments);
    ASSERT_EQ(cands.size(), 1u);
    auto a = classify_junction_angle(f.contours, cands[0]);
    EXPECT_EQ(a.rejected, expected);
    EXPECT_NEAR(a.sectors[0] + a.sectors[1] + a.sectors[2], 360.0, 0.5);
  };
  check({0.0, 90.0, 180.0}, Rejection::none);
  check({90.0, 210.0, 330.0}, Rejection::y_junction);
  check({0.0, 80.0, 160.0}, Rejection::arrow_junction);
}

TEST(Detection, TMatchesAndIsDeterministic) {
  auto f = render_three_ray_junction(41, {0.0, 90.0, 180.0});
  auto js = detect_tjunctions(f.contours, f.segments);
  ASSERT_EQ(js.size(), 1u);
  EXPECT_TRUE(js[0].matched);
  EXPECT_EQ(js[0].hat_by_area, js[0].hat_by_angle);
  auto again = detect_tjunctions(f.contours, f.segments);
  EXPECT_EQ(again[0].location, js[0].location);
  EXPECT_EQ(again[0].angles, js[0].angles);
}

TEST(LocalOrientation, Lines) {
  LabelMap h(21, 21, 0), d(21, 21, 0);
  for (std::size_t i = 2; i < 19; ++i) {
    h(10, i) = 1;
    d(i, i) = 1;
  }
  auto oh = local_orientation_of_contours(h), od = local_orientation_of_contours(d);
  for (std::size_t i = 2; i < 19; ++i) {
    ASSERT_TRUE(oh.defined(10, i));
    EXPECT_NEAR(oh.angle(10, i), 0.0, 1e-9);
  }
  for (std::size_t i = 5; i < 16; ++i) EXPECT_NEAR(od.angle(i, i), kPi / 4, 0.02);
  LabelMap lone(5, 5, 0);
  lone(2, 2) = 7;
  EXPECT_FALSE(local_orientation_of_contours(lone).defined(2, 2));
}

TEST(LocalOrientation, QuarterArc) {
  const double R = 20.0;
  LabelMap arc(30, 30, 0);
  for (double t = 0; t <= kPi / 2; t += 0.005)
    arc(static_cast<std::size_t>(std::lround(2 + R * std::sin(t))), static_cast<std::size_t>(std::lround(2 + R * std::cos(t)))) = 1;
  auto o = local_orientation_of_contours(arc);
  std::size_t checked = 0;
  for (std::size_t r = 0; r < 30; ++r)
    for (std::size_t c = 0; c < 30; ++c) {
      if (!arc(r, c) || !o.defined(r, c)) continue;
      double phi = std::atan2(static_cast<double>(r) - 2, static_cast<double>(c) - 2);
      double tangent = std::fmod(phi + kPi / 2, kPi);
      double diff = std::abs(o.angle(r, c) - tangent);
      diff = std::min(diff, kPi - diff);
      EXPECT_LT(diff, 0.2) << r << "," << c;
      ++checked;
    }
  EXPECT_GT(checked, 20u);
}

TEST(TJMaps, NoMatchedJunctionsIsZero) {
  auto f = render_three_ray_junction(41, {90.0, 210.0, 330.0});
  auto js = detect_tjunctions(f.contours, f.segments);
  auto maps = build_tj_maps(f.contours, f.segments, js, local_orientation_of_contours(f.contours));
  for (const auto& m : maps.maps.maps) EXPECT_EQ(sum_values(m), 0.0);
}

TEST(TJMaps, HorizontalHatFigureAbove) {
  auto f = render_three_ray_junction(41, {0.0, 90.0, 180.0});
  auto js = detect_tjunctions(f.contours, f.segments);
  auto maps = build_tj_maps(f.contours, f.segments, js, local_orientation_of_contours(f.contours));
  // Figure (segment 3) lies at negative y: normal theta - pi/2 for theta = 0.
  EXPECT_GT(sum_values(maps.maps.at(0, Side::minus)), 10.0);
  for (std::size_t k = 0; k < kNumDirected; ++k) {
    if (k == directed_index(0, Side::minus)) continue;
    EXPECT_EQ(sum_values(maps.maps.maps[k]), 0.0) << k;
  }
  const auto& m = maps.maps.at(0, Side::minus);
  for (std::size_t r = 0; r < 41; ++r)
    for (std::size_t c = 0; c < 41; ++c)
      if (m(r, c) != 0.0) {
        EXPECT_EQ(m(r, c), 1.0);
        EXPECT_TRUE(f.contours(r, c) == 1 || f.contours(r, c) == 3);
        EXPECT_LE(std::hypot(double(r) - 20, double(c) - 20), 15.0);
      }
}

TEST(TJMaps, OccluderContoursFacingInterior) {
  StimulusParams p;
  p.size = 96;
  auto st = generate_synthetic_stimulus(StimulusKind::overlapping_squares, p);
  const auto& seg = *st.segments;
  auto js = detect_tjunctions(*st.contours, seg);
  ASSERT_EQ(js.size(), 2u);
  auto maps = build_tj_maps(*st.contours, seg, js, local_orientation_of_contours(*st.contours));
  std::size_t painted = 0;
  for (std::size_t i = 0; i < kNumOrientations; ++i) {
    const auto& plus = maps.maps.at(i, Side::plus);
    const auto& minus = maps.maps.at(i, Side::minus);
    for (std::size_t r = 0; r < 96; ++r)
      for (std::size_t c = 0; c < 96; ++c) {
        EXPECT_FALSE(plus(r, c) != 0.0 && minus(r, c) != 0.0);
        for (Side s : {Side::plus, Side::minus}) {
          if (maps.maps.at(i, s)(r, c) == 0.0) continue;
          ++painted;
          EXPECT_EQ(seg(r, c), 3);  // occluder pixel
          double dir = bo_direction(i, s);
          double to_center_x = 60.0 - double(c), to_center_y = 60.0 - double(r);
          EXPECT_GT(std::cos(dir) * to_center_x + std::sin(dir) * to_center_y, 0.0);
          bool near = false;
          for (const auto& j : js) near |= std::hypot(double(j.location.x) - c, double(j.location.y) - r) <= 15.0;
          EXPECT_TRUE(near);
        }
      }
  }
  EXPECT_GT(painted, 20u);
}

}  // namespace
}  // namespace fgo
