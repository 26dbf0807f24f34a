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

#include "fgo/grid.hpp"

namespace fgo {

/// Smallest odd integer >= value.
std::size_t next_odd_at_least(double value);

/// Gabor receptive field. `theta` is the orientation of the kernel's major
/// axis, which is the orientation of the edges it responds to best; the
/// carrier runs along the normal theta + pi/2. A size of 0 selects the
/// default support (next odd >= 6 sigma + 1).
struct GaborParams {
  double theta = 0.0;
  double sigma = 2.24;
  double gamma = 0.5;
  double omega = 1.57;
  std::size_t size = 0;

  void validate() const;
  std::size_t support() const;
};

enum class Parity { even, odd };

enum class DcHandling {
  remove,  // subtract the kernel mean so constant input gives exactly zero
  keep,
};

/// Even: exp(-(X^2 + gamma^2 Y^2) / 2 sigma^2) cos(omega X); odd uses sin.
/// X is the coordinate along the carrier (normal to theta), Y along theta.
FeatureMap make_gabor(const GaborParams& params, Parity parity, DcHandling dc = DcHandling::remove);

/// Quadrature energy sqrt(S_e^2 + S_o^2) of two correlation responses.
FeatureMap complex_response(const FeatureMap& image, const FeatureMap& even_kernel, const FeatureMap& odd_kernel,
                            KernelFit fit = KernelFit::strict);
FeatureMap complex_response(const FeatureMap& image, const GaborParams& params, KernelFit fit = KernelFit::strict);

struct DoGParams {
  double sigma_in = 0.90;
  double sigma_out = 2.70;
  std::size_t size = 0;  // 0: next odd >= 6 sigma_out + 1

  void validate() const;
  std::size_t support() const;
};

enum class Polarity { on, off };

/// Difference of normalized Gaussians, ON = inner - outer, OFF = -ON.
FeatureMap make_center_surround(const DoGParams& params, Polarity polarity);

/// kernel - mean(kernel).
FeatureMap remove_dc(FeatureMap kernel);

/// Selects the angular term of the annular von Mises kernel.
enum class VonMisesForm {
  // exp[(rho - R0) cos(phi - mu)]: mass concentrated toward mu outside the
  // ring. Matches the edge-orientation convention used by the Gabor bank.
  cosine,
  // exp[(rho - R0) sin(phi - mu)], the angular term taken literally.
  as_printed,
  // exp[R0 cos(phi - mu)] / I0(rho - R0): concentration R0 in angle, radial
  // falloff away from the ring rho = R0.
  annular,
};

struct VonMisesParams {
  double bo_direction = 0.0;  // mu, radians
  double r0 = 2.0;
  std::size_t size = 0;  // 0: next odd >= 4 R0 + 5
  VonMisesForm form = VonMisesForm::cosine;

  void validate() const;
  std::size_t support() const;
};

/// Modified Bessel function of the first kind, order zero (power series).
double bessel_i0(double x);

/// Unnormalized kernel value at lattice offset (x, y).
double von_mises_value(const VonMisesParams& params, double x, double y);

/// Von Mises kernel divided by its maximum.
FeatureMap make_von_mises(const VonMisesParams& params);

}  // namespace fgo
