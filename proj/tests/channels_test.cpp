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

#include <random>

#include "fgo/channels.hpp"
#include "oracles.hpp"

namespace fgo {
namespace {

RGBImage pixel(double r, double g, double b) {
  return RGBImage(FeatureMap(1, 1, r), FeatureMap(1, 1, g), FeatureMap(1, 1, b));
}

TEST(Intensity, Examples) {
  EXPECT_DOUBLE_EQ(compute_intensity(pixel(1, 1, 1))(0, 0), 1.0);
  EXPECT_DOUBLE_EQ(compute_intensity(pixel(0, 0, 0))(0, 0), 0.0);
  EXPECT_DOUBLE_EQ(compute_intensity(pixel(0.6, 0.3, 0.0))(0, 0), 0.3);
  EXPECT_DOUBLE_EQ(compute_intensity(pixel(0.1, 0.5, 0.9))(0, 0), compute_intensity(pixel(0.9, 0.1, 0.5))(0, 0));
}

TEST(Opponency, HandEvaluated) {
  auto gray = compute_color_opponency(pixel(0.4, 0.4, 0.4));
  for (const auto& m : gray) EXPECT_DOUBLE_EQ(m(0, 0), 0.0);

  auto yellow = compute_color_opponency(pixel(1, 1, 0));
  EXPECT_NEAR(yellow[0](0, 0), 0.0, 1e-12);  // RG
  EXPECT_NEAR(yellow[1](0, 0), 0.0, 1e-12);  // GR
  EXPECT_NEAR(yellow[2](0, 0), 0.0, 1e-12);  // BY
  EXPECT_NEAR(yellow[3](0, 0), 1.5, 1e-12);  // YB

  auto red = compute_color_opponency(pixel(1, 0, 0));
  EXPECT_NEAR(red[0](0, 0), 3.0, 1e-12);
  EXPECT_NEAR(red[1](0, 0), 0.0, 1e-12);
  EXPECT_NEAR(red[2](0, 0), 0.0, 1e-12);
  EXPECT_NEAR(red[3](0, 0), 0.0, 1e-12);
}

TEST(Opponency, AntagonistsExclusiveAndNonNegative) {
  std::mt19937_64 rng(31);
  RGBImage img(oracle::random_map(rng, 10, 10, 0, 1), oracle::random_map(rng, 10, 10, 0, 1),
               oracle::random_map(rng, 10, 10, 0, 1));
  auto opp = compute_color_opponency(img);
  for (std::size_t i = 0; i < 100; ++i) {
    for (const auto& m : opp) EXPECT_GE(m.values()[i], 0.0);
    EXPECT_EQ(opp[0].values()[i] * opp[1].values()[i], 0.0);
    EXPECT_EQ(opp[2].values()[i] * opp[3].values()[i], 0.0);
  }
}

TEST(Opponency, DarkPixelsAreColorless) {
  FeatureMap r(1, 2, std::vector<double>{1.0, 0.05});
  auto opp = compute_color_opponency(RGBImage(r, FeatureMap(1, 2, 0.0), FeatureMap(1, 2, 0.0)));
  EXPECT_GT(opp[0](0, 0), 0.0);
  EXPECT_EQ(opp[0](0, 1), 0.0);  // I = 0.0167 <= 0.1 max I
}

TEST(Orientation, ConstantImage) {
  for (const auto& m : compute_orientation_channels(FeatureMap(24, 24, 0.5), GaborParams{}))
    for (double v : m.values()) EXPECT_NEAR(v, 0.0, 1e-12);
}

TEST(Orientation, VerticalEdgeSelectsHalfPi) {
  FeatureMap img(40, 40, 0.1);
  for (std::size_t r = 0; r < 40; ++r)
    for (std::size_t c = 20; c < 40; ++c) img(r, c) = 0.9;
  auto ch = compute_orientation_channels(img, GaborParams{});
  for (std::size_t r = 8; r < 32; ++r)
    for (std::size_t c : {19u, 20u}) {
      std::size_t best = 0;
      for (std::size_t i = 1; i < 8; ++i)
        if (ch[i](r, c) > ch[best](r, c)) best = i;
      EXPECT_EQ(best, 4u) << r << "," << c;
    }
}

TEST(Orientation, QuarterTurnShiftsByFour) {
  const std::size_t n = 40;
  std::mt19937_64 rng(32);
  auto img = oracle::random_map(rng, n, n, 0, 1);
  auto rot = [n](const FeatureMap& m) {
    FeatureMap o(n, n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) o(r, c) = m(n - 1 - c, r);
    return o;
  };
  auto a = compute_orientation_channels(img, GaborParams{});
  auto b = compute_orientation_channels(rot(img), GaborParams{});
  for (std::size_t i = 0; i < 8; ++i) {
    auto ra = rot(a[i]);
    const auto& bb = b[(i + 4) % 8];
    for (std::size_t r = 8; r < n - 8; ++r)
      for (std::size_t c = 8; c < n - 8; ++c) EXPECT_NEAR(ra(r, c), bb(r, c), 1e-6);
  }
}

TEST(ChannelPyramids, LevelsAndCollapse) {
  auto ch = compute_channels(RGBImage::gray(FeatureMap(32, 32, 0.5)), GaborParams{});
  auto one = build_channel_pyramids(ch, 1, PyramidFactor::half_octave);
  EXPECT_EQ(one.intensity.size(), 1u);
  EXPECT_EQ(one.intensity[0], ch.intensity);
  auto many = build_channel_pyramids(ch, 5, PyramidFactor::half_octave);
  for (const auto& l : many.intensity.levels)
    for (double v : l.values()) EXPECT_NEAR(v, 0.5, 1e-15);
  EXPECT_THROW(build_channel_pyramids(ch, 7, PyramidFactor::octave), ConfigError);
}

}  // namespace
}  // namespace fgo
