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

#include <span>

namespace fgo {

struct TTestResult {
  double t = 0.0;
  double df = 0.0;
  double p = 0.5;  // P(T >= t) under the null
};

/// Unpaired two-sample t-test with pooled variance, testing mean(a) > mean(b).
/// Zero pooled variance with distinct means gives p = 0 or 1; with equal
/// means it throws DegenerateInputError.
TTestResult right_tailed_t_test(std::span<const double> a, std::span<const double> b);

/// Upper tail of Student's t distribution.
double student_t_upper_tail(double t, double df);

}  // namespace fgo
