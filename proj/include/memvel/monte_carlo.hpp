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

#pragma once

#include <cstdint>

#include "memvel/interferometer.hpp"
#include "memvel/sensor_params.hpp"

namespace memvel {

struct MonteCarloVariance {
  double estimate = 0.0;   // E[var | jitter] + Var[mean | jitter] + v_el
  double std_error = 0.0;
  std::uint64_t n_samples = 0;
  std::uint64_t seed = 0;
};

/// Jitter-averaged readout variance. Each trial draws
/// theta ~ cfg.theta + Normal(0, sigma_theta) and
/// delta_phi ~ cfg.delta_phi + Normal(0, sigma_phi), evaluates the exact
/// conditional Gaussian statistics, and combines them by the law of total
/// variance. Samples are generated in fixed blocks, one RNG substream per
/// block, so the result is independent of `jobs`.
MonteCarloVariance monte_carlo_variance(const InterferometerConfig& cfg, std::uint64_t n_samples,
                                        std::uint64_t seed, int jobs = 1);

struct MonteCarloEstimation {
  double empirical_std = 0.0;   // std of the velocity estimates over repeats [m/s]
  double crb = 0.0;             // Cramer-Rao bound for m_trials [m/s]
  double mean_estimate = 0.0;   // mean of the estimates [m/s]
  double mean_std_error = 0.0;  // empirical_std / sqrt(repeats)
  std::uint64_t m_trials = 0;
  std::uint64_t n_repeats = 0;
  std::uint64_t seed = 0;

  double std_ratio() const { return empirical_std / crb; }
};

/// Sample-mean estimator v_hat = mean(x) / (sqrt(eta N) k_p tau) over
/// m_trials Gaussian homodyne outcomes, repeated n_repeats times. Repeat j
/// uses RNG substream j.
MonteCarloEstimation monte_carlo_estimation(const SensorParams& params, ReadoutScheme scheme,
                                            double v_true, double tau, std::uint64_t m_trials,
                                            std::uint64_t n_repeats, std::uint64_t seed,
                                            int jobs = 1);

}  // namespace memvel
