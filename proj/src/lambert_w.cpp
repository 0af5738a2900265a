// Copyright 2026 The memvel Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "memvel/lambert_w.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace memvel {

namespace {

constexpr double kBranchPoint = -1.0 / std::numbers::e;
constexpr double kNearBranchCutoff = -0.25;
constexpr int kMaxIterations = 64;

double initial_guess(double x) {
  if (x < kNearBranchCutoff) {
    // Series in p = sqrt(2(e x + 1)) about the branch point.
    const double p = std::sqrt(std::max(0.0, 2.0 * (std::numbers::e * x + 1.0)));
    return -1.0 + p * (1.0 + p * (-1.0 / 3.0 + p * (11.0 / 72.0 + p * (-43.0 / 540.0))));
  }
  if (x < std::numbers::e) {
    const double l = std::log1p(x);
    return l * (1.0 - std::log1p(l) / (2.0 + l));
  }
  const double l1 = std::log(x);
  const double l2 = std::log(l1);
  return l1 - l2 + l2 / l1;
}

}  // namespace

double lambert_w0(double x) {
  if (std::isnan(x) || x < kBranchPoint)
    throw std::domain_error("lambert_w0: argument below -1/e");
  if (x == kBranchPoint) return -1.0;
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return x;

  constexpr double eps = std::numeric_limits<double>::epsilon();
  const double tol = 1e-13 * std::max(1.0, std::abs(x));
  double w = initial_guess(x);
  for (int it = 0; it < kMaxIterations; ++it) {
    const double ew = std::exp(w);
    const double f = w * ew - x;
    const double wp1 = w + 1.0;
    if (f == 0.0 || wp1 == 0.0) break;
    const double step = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1));
    const double next = w - step;
    // Stay on the principal branch.
    w = next < -1.0 ? 0.5 * (w - 1.0) : next;
    if (std::abs(step) <= 4.0 * eps * (1.0 + std::abs(w)) && std::abs(w * std::exp(w) - x) <= tol)
      break;
  }
  return w;
}

}  // namespace memvel
