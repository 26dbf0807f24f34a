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
#include <sstream>

#include "fgo/io.hpp"
#include "oracles.hpp"

namespace fgo {
namespace {

TEST(Fm1, RoundTripIsBitExact) {
  std::mt19937_64 rng(11);
  auto m = oracle::random_map(rng, 5, 7, -1e3, 1e3);
  m(0, 0) = 1e-300;
  m(1, 1) = 0.1;
  std::stringstream s;
  io::write_fm1(s, m);
  EXPECT_EQ(s.str().rfind("FM1 5 7\n", 0), 0u);
  EXPECT_EQ(io::read_fm1(s), m);
}

TEST(Fm1, Malformed) {
  std::istringstream bad_header("FM2 1 1\n0\n");
  EXPECT_THROW(io::read_fm1(bad_header), FormatError);
  std::istringstream short_body("FM1 2 2\n1 2 3\n");
  EXPECT_THROW(io::read_fm1(short_body), FormatError);
  std::istringstream nan_body("FM1 1 1\nnan\n");
  EXPECT_THROW(io::read_fm1(nan_body), FormatError);
}

TEST(Lm1, RoundTripAndSign) {
  LabelMap m(2, 3, std::vector<std::int32_t>{0, 1, 2, 3, 40, 0});
  std::stringstream s;
  io::write_lm1(s, m);
  EXPECT_EQ(io::read_lm1(s), m);
  std::istringstream neg("LM1 1 3\n1 -1 0\n");
  EXPECT_THROW(io::read_lm1(neg), FormatError);
  std::istringstream signed_ok("LM1 1 3\n1 -1 0\n");
  EXPECT_EQ(io::read_signed_lm1(signed_ok)(0, 1), -1);
  std::istringstream signed_bad("LM1 1 2\n2 0\n");
  EXPECT_THROW(io::read_signed_lm1(signed_bad), FormatError);
}

TEST(Ppm, BinaryAndPlain) {
  FeatureMap r(2, 2, std::vector<double>{0.0, 1.0, 51.0 / 255, 1.0});
  RGBImage img(r, FeatureMap(2, 2, 0.2), FeatureMap(2, 2, 1.0));
  std::stringstream s;
  io::write_ppm(s, img);
  auto back = io::read_ppm(s);
  EXPECT_LT(oracle::max_abs_diff(back.r, img.r), 1e-15);
  EXPECT_LT(oracle::max_abs_diff(back.g, img.g), 1e-15);

  std::istringstream plain("P3\n# comment\n2 1\n255\n255 0 0  0 0 255\n");
  auto p = io::read_ppm(plain);
  EXPECT_EQ(p.rows(), 1u);
  EXPECT_EQ(p.cols(), 2u);
  EXPECT_DOUBLE_EQ(p.r(0, 0), 1.0);
  EXPECT_DOUBLE_EQ(p.b(0, 1), 1.0);
  std::istringstream bad("P7\n1 1\n255\n");
  EXPECT_THROW(io::read_ppm(bad), FormatError);
}

TEST(Pgm, RoundTrip) {
  Grid<std::uint8_t> g(2, 3, std::vector<std::uint8_t>{0, 1, 2, 128, 254, 255});
  std::stringstream s;
  io::write_pgm(s, g);
  EXPECT_EQ(io::read_pgm(s), g);
}

}  // namespace
}  // namespace fgo
