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
#include "fgo/stats.hpp"

#include <boost/math/special_functions/beta.hpp>
#include <cmath>

#include "fgo/error.hpp"

namespace fgo {

double student_t_upper_tail(double t, double df) {
  if (!(df > 0.0)) throw ArgumentError("degrees of freedom must be positive");
  if (t == 0.0) return 0.5;
  const double x = df / (df + t * t);
  const double half = 0.5 * boost::math::ibeta(0.5 * df, 0.5, x);
  return t > 0.0 ? half : 1.0 - half;
}

namespace {

struct Moments {
  double mean = 0.0;
  double ss = 0.0;  // sum of squared deviations
};

Moments moments(std::span<const double> v) {
  Moments m;
  for (double x : v) m.mean += x;
  m.mean /= static_cast<double>(v.size());
  for (double x : v) m.ss += (x - m.mean) * (x - m.mean);
  return m;
}

}  // namespace

TTestResult right_tailed_t_test(std::span<const double> a, std::span<const double> b) {
  if (a.size() < 2 || b.size() < 2) throw ArgumentError("each sample needs at least two values");
  const auto ma = moments(a);
  const auto mb = moments(b);
  const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  TTestResult r;
  r.df = na + nb - 2.0;
  const double pooled = (ma.ss + mb.ss) / r.df;
  const double diff = ma.mean - mb.mean;
  if (pooled <= 0.0) {
    if (diff == 0.0) throw DegenerateInputError("both samples are constant and equal");
    r.t = diff > 0.0 ? INFINITY : -INFINITY;
    r.p = diff > 0.0 ? 0.0 : 1.0;
    return r;
  }
  r.t = diff / std::sqrt(pooled * (1.0 / na + 1.0 / nb));
  r.p = student_t_upper_tail(r.t, r.df);
  return r;
}

}  // namespace fgo
