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
#include <random>
#include <vector>

#include "fgo/grid.hpp"
#include "oracles.hpp"

namespace fgo {
namespace {

TEST(Correlate, IdentityKernel) {
  std::mt19937_64 rng(1);
  auto m = oracle::random_map(rng, 7, 9);
  EXPECT_EQ(correlate2d(m, FeatureMap(1, 1, 1.0)), m);
}

TEST(Correlate, ConstantTimesKernelSum) {
  std::mt19937_64 rng(2);
  auto k = oracle::random_map(rng, 5, 3);
  auto out = correlate2d(FeatureMap(6, 6, 0.7), k);
  for (double v : oracle::cells(out)) EXPECT_NEAR(v, 0.7 * sum_values(k), 1e-12);
}

TEST(Correlate, MatchesNestedLoops) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 20; ++i) {
    auto m = oracle::random_map(rng, 8, 8);
    auto k = oracle::random_map(rng, 3, 3);
    EXPECT_LT(oracle::max_abs_diff(correlate2d(m, k), oracle::correlate(m, k)), 1e-12);
  }
}

TEST(Correlate, Errors) {
  FeatureMap m(8, 8, 1.0);
  EXPECT_THROW(correlate2d(m, FeatureMap(2, 3, 1.0)), ArgumentError);
  EXPECT_THROW(correlate2d(m, FeatureMap(9, 3, 1.0)), DimensionError);
  // Coarse pyramid levels accept oversized kernels explicitly.
  auto big = correlate2d(m, FeatureMap(9, 9, 1.0), KernelFit::any);
  EXPECT_NEAR(big(0, 0), 81.0, 1e-12);
}

TEST(Correlate, Linear) {
  std::mt19937_64 rng(4);
  auto x = oracle::random_map(rng, 16, 16), y = oracle::random_map(rng, 16, 16);
  auto k = oracle::random_map(rng, 5, 5);
  FeatureMap mix = scaled(x, 0.3);
  add_scaled(mix, y, -1.7);
  FeatureMap expect = scaled(correlate2d(x, k), 0.3);
  add_scaled(expect, correlate2d(y, k), -1.7);
  EXPECT_LT(oracle::max_abs_diff(correlate2d(mix, k), expect), 1e-10);
}

TEST(Resample, IdentityAndConstant) {
  std::mt19937_64 rng(5);
  auto m = oracle::random_map(rng, 6, 5);
  EXPECT_LT(oracle::max_abs_diff(resample(m, 6, 5), m), 1e-15);
  for (double v : oracle::cells(resample(FeatureMap(7, 3, 2.5), 4, 11))) EXPECT_DOUBLE_EQ(v, 2.5);
  EXPECT_THROW(resample(m, 0, 3), ArgumentError);
}

TEST(Resample, RampByHand) {
  // v(r, c) = 4r + c. Corner-aligned 4 -> 2 samples source 0 and 3.
  FeatureMap ramp(4, 4);
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c) ramp(r, c) = 4.0 * r + c;
  auto out = resample(ramp, 2, 2);
  EXPECT_DOUBLE_EQ(out(0, 0), 0.0);
  EXPECT_DOUBLE_EQ(out(0, 1), 3.0);
  EXPECT_DOUBLE_EQ(out(1, 0), 12.0);
  EXPECT_DOUBLE_EQ(out(1, 1), 15.0);
  // 4 -> 3 lands on source 1.5: mean of the four neighbours.
  auto mid = resample(ramp, 3, 3);
  EXPECT_DOUBLE_EQ(mid(1, 1), 0.25 * (ramp(1, 1) + ramp(1, 2) + ramp(2, 1) + ramp(2, 2)));
}

TEST(Resample, BilinearFunctionExact) {
  FeatureMap f(9, 13);
  for (std::size_t r = 0; r < 9; ++r)
    for (std::size_t c = 0; c < 13; ++c) f(r, c) = 1.0 + 0.5 * r - 0.25 * c + 0.1 * r * c;
  auto out = resample(f, 5, 7);
  for (std::size_t r = 0; r < 5; ++r)
    for (std::size_t c = 0; c < 7; ++c) {
      double y = r * 8.0 / 4.0, x = c * 12.0 / 6.0;
      EXPECT_NEAR(out(r, c), 1.0 + 0.5 * y - 0.25 * x + 0.1 * x * y, 1e-12);
    }
}

TEST(Rescale, Examples) {
  FeatureMap unit(1, 3, std::vector<double>{0.0, 0.25, 1.0});
  EXPECT_EQ(rescale_to_range(unit, 1.0), unit);
  for (double v : oracle::cells(rescale_to_range(FeatureMap(3, 3, 4.0), 1.0))) EXPECT_EQ(v, 0.0);
  auto out = rescale_to_range(FeatureMap(1, 3, std::vector<double>{-2.0, 0.0, 2.0}), 1.0);
  EXPECT_DOUBLE_EQ(out(0, 0), 0.0);
  EXPECT_DOUBLE_EQ(out(0, 1), 0.5);
  EXPECT_DOUBLE_EQ(out(0, 2), 1.0);
}

TEST(Normalize, IsolatedPeakUnchanged) {
  FeatureMap m(7, 7, 0.0);
  m(3, 3) = 5.0;
  auto out = normalize_map(m);
  EXPECT_DOUBLE_EQ(out(3, 3), 1.0);
  EXPECT_DOUBLE_EQ(sum_values(out), 1.0);
  for (double v : oracle::cells(normalize_map(FeatureMap(4, 4, 0.0)))) EXPECT_EQ(v, 0.0);
}

TEST(Normalize, SecondaryPeak) {
  FeatureMap m(9, 9, 0.0);
  m(2, 2) = 1.0;
  m(6, 6) = 0.6;
  m(6, 7) = 0.3;
  auto peaks = oracle::local_maxima(m);
  ASSERT_EQ(peaks.size(), 2u);  // 1.0 and 0.6; 0.3 sits next to 0.6
  auto out = normalize_map(m);
  for (std::size_t i = 0; i < m.size(); ++i) EXPECT_NEAR(out.values()[i], 0.16 * m.values()[i], 1e-12);
}

TEST(Normalize, OutputRange) {
  std::mt19937_64 rng(6);
  for (int i = 0; i < 10; ++i) {
    auto out = normalize_map(oracle::random_map(rng, 12, 12), {2.0, 3});
    EXPECT_GE(min_value(out), 0.0);
    EXPECT_LE(max_value(out), 8.0 + 1e-12);
  }
}

TEST(CrossScaleSum, Examples) {
  std::mt19937_64 rng(7);
  auto m = oracle::random_map(rng, 5, 6);
  std::vector<FeatureMap> one{m};
  EXPECT_EQ(cross_scale_sum(one, 5, 6), m);
  std::vector<FeatureMap> two{FeatureMap(8, 8, 1.5), FeatureMap(3, 3, 0.25)};
  for (double v : oracle::cells(cross_scale_sum(two, 8, 8))) EXPECT_DOUBLE_EQ(v, 1.75);
  std::vector<FeatureMap> three{oracle::random_map(rng, 16, 12), oracle::random_map(rng, 11, 9),
                                oracle::random_map(rng, 8, 6)};
  EXPECT_LT(oracle::max_abs_diff(cross_scale_sum(three, 16, 12), oracle::cross_scale_sum(three, 16, 12)), 1e-12);
  EXPECT_THROW(cross_scale_sum(std::span<const FeatureMap>{}, 2, 2), ArgumentError);
}

TEST(Pyramid, ShapeFollowsCeilChain) {
  auto shape = pyramid_shape(321, 481, 10, PyramidFactor::half_octave);
  ASSERT_EQ(shape.size(), 10u);
  double r = 321, c = 481;
  for (std::size_t k = 0; k < 10; ++k) {
    EXPECT_EQ(shape[k].first, static_cast<std::size_t>(r));
    EXPECT_EQ(shape[k].second, static_cast<std::size_t>(c));
    r = std::ceil(r / std::sqrt(2.0));
    c = std::ceil(c / std::sqrt(2.0));
  }
  EXPECT_EQ(shape.back(), std::make_pair(std::size_t{16}, std::size_t{23}));
  EXPECT_THROW(pyramid_shape(321, 481, 10, PyramidFactor::octave), ConfigError);
}

TEST(Pyramid, ConstantStaysConstant) {
  auto pyr = build_pyramid(FeatureMap(40, 30, 0.4), 6, PyramidFactor::half_octave);
  ASSERT_EQ(pyr.size(), 6u);
  for (const auto& l : pyr.levels)
    for (double v : oracle::cells(l)) EXPECT_NEAR(v, 0.4, 1e-15);
  auto one = build_pyramid(FeatureMap(5, 5, 1.0), 1, PyramidFactor::octave);
  EXPECT_EQ(one.size(), 1u);
}

TEST(Grid, Invariants) {
  EXPECT_THROW(FeatureMap(0, 3), ArgumentError);
  EXPECT_THROW(FeatureMap(2, 2, std::vector<double>(3)), DimensionError);
  FeatureMap m(2, 2, 0.0);
  m(1, 1) = std::nan("");
  EXPECT_THROW(require_finite(m), ArgumentError);
}

}  // namespace
}  // namespace fgo
