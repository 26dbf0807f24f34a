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

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>

#include "fgo/grid.hpp"

namespace fgo {

/// Three real planes in [0, 1] sharing one shape.
struct RGBImage {
  FeatureMap r, g, b;

  RGBImage() = default;
  RGBImage(FeatureMap red, FeatureMap green, FeatureMap blue);
  static RGBImage gray(const FeatureMap& level);

  std::size_t rows() const { return r.rows(); }
  std::size_t cols() const { return r.cols(); }
};

namespace io {

// FM1: "FM1 <rows> <cols>" followed by rows of space separated reals. Values
// are written in shortest round-trip form, so write -> read is bit exact.
void write_fm1(std::ostream& out, const FeatureMap& map);
FeatureMap read_fm1(std::istream& in);
void save_fm1(const std::filesystem::path& path, const FeatureMap& map);
FeatureMap load_fm1(const std::filesystem::path& path);

// LM1: "LM1 <rows> <cols>" followed by rows of integers. Contour and segment
// maps must be non-negative; signed ground-truth maps hold -1, 0 or +1.
void write_lm1(std::ostream& out, const LabelMap& map);
LabelMap read_lm1(std::istream& in);
LabelMap read_signed_lm1(std::istream& in);
void save_lm1(const std::filesystem::path& path, const LabelMap& map);
LabelMap load_lm1(const std::filesystem::path& path);
LabelMap load_signed_lm1(const std::filesystem::path& path);

// 8-bit PPM, binary (P6) or plain (P3). Samples are scaled by 1/maxval.
RGBImage read_ppm(std::istream& in);
RGBImage load_ppm(const std::filesystem::path& path);
void write_ppm(std::ostream& out, const RGBImage& img);
void save_ppm(const std::filesystem::path& path, const RGBImage& img);

// Binary 8-bit PGM (P5).
void write_pgm(std::ostream& out, const Grid<std::uint8_t>& img);
void save_pgm(const std::filesystem::path& path, const Grid<std::uint8_t>& img);
Grid<std::uint8_t> read_pgm(std::istream& in);

}  // namespace io
}  // namespace fgo
