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
#include "fgo/spectral_anisotropy.hpp"

#include <cmath>
#include <numbers>

#include "fgo/filters.hpp"

namespace fgo {

void SAParams::validate() const {
  if (min_filter_size < 3 || min_filter_size % 2 == 0 || max_filter_size % 2 == 0 ||
      max_filter_size < min_filter_size) {
    throw ArgumentError("SA filter sizes must be odd with 3 <= min <= max");
  }
  if (size_step == 0 || size_step % 2 != 0) throw ArgumentError("SA size step must be a positive even number");
  if (!(gamma > 0.0) || !(sigma_factor > 0.0) || lobes_even <= 0 || lobes_odd <= 0) {
    throw ArgumentError("SA gamma, sigma factor and lobe counts must be positive");
  }
}

std::vector<std::size_t> SAParams::filter_sizes() const {
  std::vector<std::size_t> sizes;
  for (std::size_t s = min_filter_size; s <= max_filter_size; s += size_step) sizes.push_back(s);
  return sizes;
}

double sa_carrier_frequency(std::size_t filter_size, int lobes) {
  return std::numbers::pi * static_cast<double>(lobes) / static_cast<double>(filter_size);
}

FeatureMap sa_complex_response(const FeatureMap& intensity, std::size_t orientation, std::size_t filter_size,
                               const SAParams& params) {
  const double r = 0.5 * static_cast<double>(filter_size);
  GaborParams even{orientation_angle(orientation), params.sigma_factor * r, params.gamma,
                   sa_carrier_frequency(filter_size, params.lobes_even), filter_size};
  GaborParams odd = even;
  odd.omega = sa_carrier_frequency(filter_size, params.lobes_odd);
  return complex_response(intensity, make_gabor(even, Parity::even), make_gabor(odd, Parity::odd), KernelFit::any);
}

DirectedMaps compute_sa_maps(const FeatureMap& intensity, const SAParams& params) {
  params.validate();
  if (intensity.empty()) throw ArgumentError("compute_sa_maps: empty intensity map");
  const std::size_t rows = intensity.rows(), cols = intensity.cols();
  DirectedMaps out = DirectedMaps::zeros(rows, cols);
  for (std::size_t i = 0; i < kNumOrientations; ++i) {
    for (std::size_t size : params.filter_sizes()) {
      const FeatureMap response = sa_complex_response(intensity, i, size, params);
      const double r = 0.5 * static_cast<double>(size);
      for (Side side : {Side::plus, Side::minus}) {
        const double dir = bo_direction(i, side);
        // Snap rounding residue (cos(pi/2) ~ 6e-17) so axis-aligned offsets stay on the lattice.
        auto snap = [](double v) { return std::abs(v) < 1e-12 ? 0.0 : v; };
        const double dx = snap(r * std::cos(dir)), dy = snap(r * std::sin(dir));
        FeatureMap& acc = out.at(i, side);
        for (std::size_t y = 0; y < rows; ++y) {
          for (std::size_t x = 0; x < cols; ++x) {
            acc(y, x) += sample_bilinear(response, static_cast<double>(x) + dx, static_cast<double>(y) + dy);
          }
        }
      }
    }
  }
  return out;
}

}  // namespace fgo
