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

#include <cstddef>
#include <vector>

#include "fgo/grid.hpp"
#include "fgo/orientation.hpp"

namespace fgo {

/// Filter bank pooled into the spectral-anisotropy cue. A filter of size 2r
/// is centered r pixels from the point it reports on.
struct SAParams {
  std::size_t min_filter_size = 9;
  std::size_t max_filter_size = 25;
  std::size_t size_step = 2;
  double gamma = 0.8;
  int lobes_even = 4;
  int lobes_odd = 5;
  double sigma_factor = 0.6;  // sigma = factor * r

  void validate() const;
  std::vector<std::size_t> filter_sizes() const;
};

/// pi * lobes / (2r) for a filter of the given size (= 2r).
double sa_carrier_frequency(std::size_t filter_size, int lobes);

/// Complex-cell energy of one filter size, evaluated at every pixel. The even
/// and odd kernels each use their own carrier frequency.
FeatureMap sa_complex_response(const FeatureMap& intensity, std::size_t orientation, std::size_t filter_size,
                               const SAParams& params);

/// Spectral anisotropy for all 16 (orientation, side) pairs: for every pixel,
/// the sum over filter sizes of the complex response sampled r pixels away
/// along the side's normal. Samples falling outside the image contribute 0.
DirectedMaps compute_sa_maps(const FeatureMap& intensity, const SAParams& params = {});

}  // namespace fgo
