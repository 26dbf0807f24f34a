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
#include "fgo/filters.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace fgo {

std::size_t next_odd_at_least(double value) {
  auto n = static_cast<std::size_t>(std::ceil(value - 1e-12));
  if (n < 1) n = 1;
  return n % 2 == 1 ? n : n + 1;
}

void GaborParams::validate() const {
  if (!(sigma > 0.0) || !(gamma > 0.0) || !(omega > 0.0)) {
    throw ArgumentError("Gabor sigma, gamma and omega must be positive");
  }
  if (size != 0 && (size < 3 || size % 2 == 0)) throw ArgumentError("Gabor size must be odd and >= 3");
}

std::size_t GaborParams::support() const { return size != 0 ? size : next_odd_at_least(6.0 * sigma + 1.0); }

FeatureMap make_gabor(const GaborParams& params, Parity parity, DcHandling dc) {
  params.validate();
  const std::size_t n = params.support();
  const long half = static_cast<long>(n / 2);
  const double ct = std::cos(params.theta), st = std::sin(params.theta);
  const double two_s2 = 2.0 * params.sigma * params.sigma;
  const double g2 = params.gamma * params.gamma;
  FeatureMap k(n, n, 0.0);
  for (long r = -half; r <= half; ++r) {
    for (long c = -half; c <= half; ++c) {
      const double x = static_cast<double>(c), y = static_cast<double>(r);
      const double along = x * ct + y * st;    // Y: along the edge
      const double across = -x * st + y * ct;  // X: carrier axis
      const double env = std::exp(-(across * across + g2 * along * along) / two_s2);
      const double carrier = parity == Parity::even ? std::cos(params.omega * across) : std::sin(params.omega * across);
      k(static_cast<std::size_t>(r + half), static_cast<std::size_t>(c + half)) = env * carrier;
    }
  }
  if (parity == Parity::even && dc == DcHandling::remove) return remove_dc(std::move(k));
  return k;
}

FeatureMap complex_response(const FeatureMap& image, const FeatureMap& even_kernel, const FeatureMap& odd_kernel,
                            KernelFit fit) {
  if (image.empty()) throw ArgumentError("complex_response: empty image");
  FeatureMap se = correlate2d(image, even_kernel, fit);
  const FeatureMap so = correlate2d(image, odd_kernel, fit);
  auto e = se.values();
  auto o = so.values();
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = std::hypot(e[i], o[i]);
  return se;
}

FeatureMap complex_response(const FeatureMap& image, const GaborParams& params, KernelFit fit) {
  return complex_response(image, make_gabor(params, Parity::even), make_gabor(params, Parity::odd), fit);
}

void DoGParams::validate() const {
  if (!(sigma_in > 0.0) || !(sigma_out > sigma_in)) throw ArgumentError("DoG requires 0 < sigma_in < sigma_out");
  if (size != 0 && size % 2 == 0) throw ArgumentError("DoG size must be odd");
}

std::size_t DoGParams::support() const { return size != 0 ? size : next_odd_at_least(6.0 * sigma_out + 1.0); }

FeatureMap make_center_surround(const DoGParams& params, Polarity polarity) {
  params.validate();
  const std::size_t n = params.support();
  const long half = static_cast<long>(n / 2);
  const double pi = std::numbers::pi;
  const double si2 = params.sigma_in * params.sigma_in, so2 = params.sigma_out * params.sigma_out;
  const double sign = polarity == Polarity::on ? 1.0 : -1.0;
  FeatureMap k(n, n, 0.0);
  for (long r = -half; r <= half; ++r) {
    for (long c = -half; c <= half; ++c) {
      const double rho2 = static_cast<double>(r * r + c * c);
      const double inner = std::exp(-rho2 / (2.0 * si2)) / (2.0 * pi * si2);
      const double outer = std::exp(-rho2 / (2.0 * so2)) / (2.0 * pi * so2);
      k(static_cast<std::size_t>(r + half), static_cast<std::size_t>(c + half)) = sign * (inner - outer);
    }
  }
  return k;
}

FeatureMap remove_dc(FeatureMap kernel) {
  const double mean = sum_values(kernel) / static_cast<double>(kernel.size());
  for (double& v : kernel.values()) v -= mean;
  return kernel;
}

void VonMisesParams::validate() const {
  if (!(r0 > 0.0)) throw ArgumentError("von Mises R0 must be positive");
  if (size != 0 && size % 2 == 0) throw ArgumentError("von Mises size must be odd");
}

std::size_t VonMisesParams::support() const { return size != 0 ? size : next_odd_at_least(4.0 * r0 + 5.0); }

double bessel_i0(double x) {
  // sum_k ((x/2)^k / k!)^2
  const double q = 0.25 * x * x;
  double term = 1.0, sum = 1.0;
  for (int k = 1; k < 500; ++k) {
    term *= q / (static_cast<double>(k) * static_cast<double>(k));
    sum += term;
    if (term < sum * 1e-17) break;
  }
  return sum;
}

double von_mises_value(const VonMisesParams& params, double x, double y) {
  const double rho = std::hypot(x, y);
  const double phi = std::atan2(y, x);
  const double kappa = rho - params.r0;
  if (params.form == VonMisesForm::annular) {
    return std::exp(params.r0 * std::cos(phi - params.bo_direction)) / bessel_i0(std::abs(kappa));
  }
  const double angular =
      params.form == VonMisesForm::cosine ? std::cos(phi - params.bo_direction) : std::sin(phi - params.bo_direction);
  return std::exp(kappa * angular) / bessel_i0(std::abs(kappa));
}

FeatureMap make_von_mises(const VonMisesParams& params) {
  params.validate();
  const std::size_t n = params.support();
  const long half = static_cast<long>(n / 2);
  FeatureMap k(n, n, 0.0);
  for (long r = -half; r <= half; ++r) {
    for (long c = -half; c <= half; ++c) {
      k(static_cast<std::size_t>(r + half), static_cast<std::size_t>(c + half)) =
          von_mises_value(params, static_cast<double>(c), static_cast<double>(r));
    }
  }
  const double peak = max_value(k);
  for (double& v : k.values()) v /= peak;
  return k;
}

}  // namespace fgo
