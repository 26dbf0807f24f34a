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

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "fgo/error.hpp"

namespace fgo {

/// Dense row-major 2D grid. Geometry throughout the library uses x = column
/// and y = row, with angles measured from +x toward +y (clockwise on screen).
template <typename T>
class Grid {
 public:
  using value_type = T;

  Grid() = default;
  Grid(std::size_t rows, std::size_t cols, T fill = T{})
      : rows_(rows), cols_(cols), values_(rows * cols, fill) {
    if (rows == 0 || cols == 0) throw ArgumentError("grid dimensions must be >= 1");
  }
  Grid(std::size_t rows, std::size_t cols, std::vector<T> values)
      : rows_(rows), cols_(cols), values_(std::move(values)) {
    if (rows == 0 || cols == 0) throw ArgumentError("grid dimensions must be >= 1");
    if (values_.size() != rows * cols) throw DimensionError("grid value count does not match dimensions");
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }
  bool same_shape(const Grid& o) const { return rows_ == o.rows_ && cols_ == o.cols_; }
  template <typename U>
  bool same_shape(const Grid<U>& o) const { return rows_ == o.rows() && cols_ == o.cols(); }

  T& operator()(std::size_t r, std::size_t c) { return values_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return values_[r * cols_ + c]; }

  bool contains(long r, long c) const {
    return r >= 0 && c >= 0 && r < static_cast<long>(rows_) && c < static_cast<long>(cols_);
  }

  std::span<T> values() { return values_; }
  std::span<const T> values() const { return values_; }

  bool operator==(const Grid&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> values_;
};

/// Real-valued activation map. Every stored value is finite.
using FeatureMap = Grid<double>;

/// Integer label grid; 0 means "no label". Contour and segmentation maps are
/// non-negative, signed ground-truth maps hold {-1, 0, +1}.
using LabelMap = Grid<std::int32_t>;

/// Throws ArgumentError if any value is NaN or infinite.
void require_finite(const FeatureMap& map);

enum class PyramidFactor { half_octave, octave };

double factor_value(PyramidFactor f);

/// Levels ordered finest (index 0, the native map) to coarsest. The scale
/// index k used in the BO weighting is the 1-based position, k = index + 1.
struct Pyramid {
  std::vector<FeatureMap> levels;
  PyramidFactor factor = PyramidFactor::half_octave;

  std::size_t size() const { return levels.size(); }
  const FeatureMap& operator[](std::size_t i) const { return levels[i]; }
  FeatureMap& operator[](std::size_t i) { return levels[i]; }
};

struct NormalizationParams {
  double top = 1.0;               // M
  std::size_t local_max_window = 3;
};

/// Dimensions of every pyramid level, each ceil(previous / factor).
/// Throws ConfigError when the unrounded size of the coarsest level drops
/// below one pixel.
std::vector<std::pair<std::size_t, std::size_t>> pyramid_shape(std::size_t rows, std::size_t cols,
                                                               std::size_t num_levels, PyramidFactor factor);

Pyramid build_pyramid(const FeatureMap& base, std::size_t num_levels, PyramidFactor factor);

enum class KernelFit {
  strict,  // kernel must not exceed the input in either axis
  any,     // larger kernels are accepted; padding replicates edges indefinitely
};

/// 2D correlation anchored at the kernel center with replicate-edge padding.
/// The output has the input's dimensions.
FeatureMap correlate2d(const FeatureMap& input, const FeatureMap& kernel, KernelFit fit = KernelFit::strict);

/// Corner-aligned bilinear resampling: output corners coincide with input
/// corners. A 1-pixel target axis samples the input center.
FeatureMap resample(const FeatureMap& input, std::size_t target_rows, std::size_t target_cols);

/// Bilinear sample at continuous position (x = column, y = row). Returns 0
/// outside [0, cols-1] x [0, rows-1].
double sample_bilinear(const FeatureMap& map, double x, double y);

/// Affine map of [min, max] onto [0, top]; a flat map becomes all zeros.
FeatureMap rescale_to_range(const FeatureMap& input, double top);

/// Local-maxima normalization: rescale to [0, M], then multiply by
/// (M - mean of non-global local maxima)^2.
FeatureMap normalize_map(const FeatureMap& input, const NormalizationParams& params = {});

/// Resample every level to the target shape and add them in list order.
FeatureMap cross_scale_sum(std::span<const FeatureMap> levels, std::size_t target_rows, std::size_t target_cols);

// Element-wise helpers.
void add_scaled(FeatureMap& acc, const FeatureMap& term, double weight);
FeatureMap scaled(const FeatureMap& map, double weight);
FeatureMap rectified(FeatureMap map);
double max_value(const FeatureMap& map);
double min_value(const FeatureMap& map);
double sum_values(const FeatureMap& map);

}  // namespace fgo
