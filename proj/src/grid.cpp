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
#include "fgo/grid.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace fgo {

void require_finite(const FeatureMap& map) {
  for (double v : map.values()) {
    if (!std::isfinite(v)) throw ArgumentError("feature map holds a non-finite value");
  }
}

double factor_value(PyramidFactor f) { return f == PyramidFactor::octave ? 2.0 : std::sqrt(2.0); }

std::vector<std::pair<std::size_t, std::size_t>> pyramid_shape(std::size_t rows, std::size_t cols,
                                                               std::size_t num_levels, PyramidFactor factor) {
  if (num_levels == 0) throw ConfigError("pyramid needs at least one level");
  if (rows == 0 || cols == 0) throw ArgumentError("pyramid base must be non-empty");
  const double f = factor_value(factor);
  const double shrink = std::pow(f, static_cast<double>(num_levels - 1));
  if (static_cast<double>(rows) / shrink < 1.0 || static_cast<double>(cols) / shrink < 1.0) {
    throw ConfigError("pyramid of " + std::to_string(num_levels) + " levels collapses below 1x1 for a " +
                      std::to_string(rows) + "x" + std::to_string(cols) + " base");
  }
  std::vector<std::pair<std::size_t, std::size_t>> dims{{rows, cols}};
  for (std::size_t k = 1; k < num_levels; ++k) {
    auto [r, c] = dims.back();
    auto next = [f](std::size_t d) {
      // Guard against 3/sqrt(2)^2 style results landing a hair above an integer.
      const double q = static_cast<double>(d) / f;
      return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(q - 1e-9)));
    };
    dims.emplace_back(next(r), next(c));
  }
  return dims;
}

Pyramid build_pyramid(const FeatureMap& base, std::size_t num_levels, PyramidFactor factor) {
  const auto dims = pyramid_shape(base.rows(), base.cols(), num_levels, factor);
  Pyramid p;
  p.factor = factor;
  p.levels.reserve(num_levels);
  p.levels.push_back(base);
  for (std::size_t k = 1; k < num_levels; ++k) {
    p.levels.push_back(resample(p.levels.back(), dims[k].first, dims[k].second));
  }
  return p;
}

FeatureMap correlate2d(const FeatureMap& input, const FeatureMap& kernel, KernelFit fit) {
  if (input.empty() || kernel.empty()) throw ArgumentError("correlate2d: empty operand");
  if (kernel.rows() % 2 == 0 || kernel.cols() % 2 == 0) {
    throw ArgumentError("correlate2d: kernel dimensions must be odd");
  }
  if (fit == KernelFit::strict && (kernel.rows() > input.rows() || kernel.cols() > input.cols())) {
    throw DimensionError("correlate2d: kernel larger than input");
  }
  const std::size_t rows = input.rows(), cols = input.cols();
  const std::size_t kr = kernel.rows(), kc = kernel.cols();
  const long cr = static_cast<long>(kr / 2), cc = static_cast<long>(kc / 2);

  // Replicate-padded copy so the inner loop is branch free.
  const std::size_t pr = rows + kr - 1, pc = cols + kc - 1;
  std::vector<double> padded(pr * pc);
  for (std::size_t r = 0; r < pr; ++r) {
    const long sr = std::clamp<long>(static_cast<long>(r) - cr, 0, static_cast<long>(rows) - 1);
    for (std::size_t c = 0; c < pc; ++c) {
      const long sc = std::clamp<long>(static_cast<long>(c) - cc, 0, static_cast<long>(cols) - 1);
      padded[r * pc + c] = input(static_cast<std::size_t>(sr), static_cast<std::size_t>(sc));
    }
  }

  FeatureMap out(rows, cols, 0.0);
  auto kv = kernel.values();
  for (std::size_t r = 0; r < rows; ++r) {
    double* orow = &out(r, 0);
    for (std::size_t u = 0; u < kr; ++u) {
      const double* prow = &padded[(r + u) * pc];
      for (std::size_t v = 0; v < kc; ++v) {
        const double w = kv[u * kc + v];
        if (w == 0.0) continue;
        const double* src = prow + v;
        for (std::size_t c = 0; c < cols; ++c) orow[c] += w * src[c];
      }
    }
  }
  return out;
}

namespace {

// Source coordinate of output index i for corner-aligned sampling.
double source_coord(std::size_t i, std::size_t src, std::size_t dst) {
  if (dst == 1) return 0.5 * static_cast<double>(src - 1);
  return static_cast<double>(i) * static_cast<double>(src - 1) / static_cast<double>(dst - 1);
}

}  // namespace

FeatureMap resample(const FeatureMap& input, std::size_t target_rows, std::size_t target_cols) {
  if (target_rows == 0 || target_cols == 0) throw ArgumentError("resample: target dimensions must be >= 1");
  if (input.empty()) throw ArgumentError("resample: empty input");
  if (input.rows() == target_rows && input.cols() == target_cols) return input;

  const std::size_t rows = input.rows(), cols = input.cols();
  std::vector<std::size_t> c0(target_cols), c1(target_cols);
  std::vector<double> cw(target_cols);
  for (std::size_t j = 0; j < target_cols; ++j) {
    const double x = source_coord(j, cols, target_cols);
    c0[j] = std::min(static_cast<std::size_t>(std::floor(x)), cols - 1);
    c1[j] = std::min(c0[j] + 1, cols - 1);
    cw[j] = x - static_cast<double>(c0[j]);
  }
  FeatureMap out(target_rows, target_cols, 0.0);
  for (std::size_t i = 0; i < target_rows; ++i) {
    const double y = source_coord(i, rows, target_rows);
    const std::size_t r0 = std::min(static_cast<std::size_t>(std::floor(y)), rows - 1);
    const std::size_t r1 = std::min(r0 + 1, rows - 1);
    const double rw = y - static_cast<double>(r0);
    for (std::size_t j = 0; j < target_cols; ++j) {
      const double top = input(r0, c0[j]) * (1.0 - cw[j]) + input(r0, c1[j]) * cw[j];
      const double bot = input(r1, c0[j]) * (1.0 - cw[j]) + input(r1, c1[j]) * cw[j];
      out(i, j) = top * (1.0 - rw) + bot * rw;
    }
  }
  return out;
}

double sample_bilinear(const FeatureMap& map, double x, double y) {
  const double maxx = static_cast<double>(map.cols() - 1);
  const double maxy = static_cast<double>(map.rows() - 1);
  if (!(x >= 0.0 && y >= 0.0 && x <= maxx && y <= maxy)) return 0.0;
  const auto c0 = static_cast<std::size_t>(std::floor(x));
  const auto r0 = static_cast<std::size_t>(std::floor(y));
  const std::size_t c1 = std::min(c0 + 1, map.cols() - 1);
  const std::size_t r1 = std::min(r0 + 1, map.rows() - 1);
  const double fx = x - static_cast<double>(c0), fy = y - static_cast<double>(r0);
  const double top = map(r0, c0) * (1.0 - fx) + map(r0, c1) * fx;
  const double bot = map(r1, c0) * (1.0 - fx) + map(r1, c1) * fx;
  return top * (1.0 - fy) + bot * fy;
}

FeatureMap rescale_to_range(const FeatureMap& input, double top) {
  FeatureMap out(input.rows(), input.cols(), 0.0);
  const double lo = min_value(input), hi = max_value(input);
  if (!(hi > lo)) return out;
  const double s = top / (hi - lo);
  auto src = input.values();
  auto dst = out.values();
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] = std::clamp((src[i] - lo) * s, 0.0, top);
  return out;
}

FeatureMap normalize_map(const FeatureMap& input, const NormalizationParams& params) {
  if (!(params.top > 0.0)) throw ArgumentError("normalize_map: M must be positive");
  if (params.local_max_window < 3 || params.local_max_window % 2 == 0) {
    throw ArgumentError("normalize_map: local-maximum window must be odd and >= 3");
  }
  FeatureMap out = rescale_to_range(input, params.top);
  const double top = params.top;
  // Numerical floors: values within rounding noise of zero are not peaks, and
  // a neighbor equal up to rounding noise breaks strictness.
  const double floor_value = 1e-9 * top;
  const double tie_tol = 1e-12 * top;
  const long half = static_cast<long>(params.local_max_window / 2);
  const long rows = static_cast<long>(out.rows()), cols = static_cast<long>(out.cols());

  double sum = 0.0;
  std::size_t count = 0;
  for (long r = 0; r < rows; ++r) {
    for (long c = 0; c < cols; ++c) {
      const double v = out(r, c);
      if (v <= floor_value || v >= top - tie_tol) continue;  // global maximum is excluded
      bool is_max = true;
      for (long dr = -half; dr <= half && is_max; ++dr) {
        for (long dc = -half; dc <= half; ++dc) {
          if ((dr == 0 && dc == 0) || !out.contains(r + dr, c + dc)) continue;
          if (out(r + dr, c + dc) >= v - tie_tol) {
            is_max = false;
            break;
          }
        }
      }
      if (is_max) {
        sum += v;
        ++count;
      }
    }
  }
  const double mean = count > 0 ? sum / static_cast<double>(count) : 0.0;
  const double gain = (top - mean) * (top - mean);
  for (double& v : out.values()) v *= gain;
  return out;
}

FeatureMap cross_scale_sum(std::span<const FeatureMap> levels, std::size_t target_rows, std::size_t target_cols) {
  if (levels.empty()) throw ArgumentError("cross_scale_sum: no levels");
  FeatureMap acc(target_rows, target_cols, 0.0);
  for (const auto& level : levels) add_scaled(acc, resample(level, target_rows, target_cols), 1.0);
  return acc;
}

void add_scaled(FeatureMap& acc, const FeatureMap& term, double weight) {
  if (!acc.same_shape(term)) throw DimensionError("add_scaled: shape mismatch");
  auto a = acc.values();
  auto t = term.values();
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += weight * t[i];
}

FeatureMap scaled(const FeatureMap& map, double weight) {
  FeatureMap out = map;
  for (double& v : out.values()) v *= weight;
  return out;
}

FeatureMap rectified(FeatureMap map) {
  for (double& v : map.values()) v = std::max(0.0, v);
  return map;
}

double max_value(const FeatureMap& map) {
  double m = -std::numeric_limits<double>::infinity();
  for (double v : map.values()) m = std::max(m, v);
  return m;
}

double min_value(const FeatureMap& map) {
  double m = std::numeric_limits<double>::infinity();
  for (double v : map.values()) m = std::min(m, v);
  return m;
}

double sum_values(const FeatureMap& map) {
  double s = 0.0;
  for (double v : map.values()) s += v;
  return s;
}

}  // namespace fgo
