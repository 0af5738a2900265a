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

#include "memvel/monte_carlo.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "memvel/estimation.hpp"
#include "memvel/model.hpp"
#include "memvel/parallel.hpp"
#include "memvel/rng.hpp"

namespace memvel {

namespace {

constexpr std::uint64_t kBlockSize = 1 << 14;

}  // namespace

MonteCarloVariance monte_carlo_variance(const InterferometerConfig& cfg, std::uint64_t n_samples,
                                        std::uint64_t seed, int jobs) {
  if (n_samples < 10000) throw std::domain_error("monte_carlo_variance needs >= 1e4 samples");
  const SensorParams& p = cfg.params;
  std::vector<double> means(n_samples), vars(n_samples);

  const std::uint64_t blocks = (n_samples + kBlockSize - 1) / kBlockSize;
  parallel_for(blocks, jobs, [&](std::size_t b) {
    auto engine = substream(seed, b);
    std::normal_distribution<double> normal;
    InterferometerConfig trial = cfg;
    const std::uint64_t end = std::min<std::uint64_t>(n_samples, (b + 1) * kBlockSize);
    for (std::uint64_t i = b * kBlockSize; i < end; ++i) {
      trial.theta = cfg.theta + p.sigma_theta * normal(engine);
      trial.delta_phi = cfg.delta_phi + p.sigma_phi * normal(engine);
      const DarkPortStatistics s = simulate_interferometer(trial);
      means[i] = s.mean;
      vars[i] = s.variance;
    }
  });

  const double n = static_cast<double>(n_samples);
  double mbar = 0.0;
  for (double m : means) mbar += m;
  mbar /= n;

  // y_i = var_i + n/(n-1) (m_i - mbar)^2 has mean equal to the estimate.
  const double corr = n / (n - 1.0);
  std::vector<double> y(n_samples);
  double ybar = 0.0;
  for (std::uint64_t i = 0; i < n_samples; ++i) {
    const double d = means[i] - mbar;
    y[i] = vars[i] + corr * d * d;
    ybar += y[i];
  }
  ybar /= n;
  double ss = 0.0;
  for (double yi : y) ss += (yi - ybar) * (yi - ybar);
  const double yvar = ss / (n - 1.0);
  MonteCarloVariance r;
  r.estimate = ybar + p.v_el;
  r.std_error = std::sqrt(yvar / n);
  r.n_samples = n_samples;
  r.seed = seed;
  return r;
}

MonteCarloEstimation monte_carlo_estimation(const SensorParams& params, ReadoutScheme scheme,
                                            double v_true, double tau, std::uint64_t m_trials,
                                            std::uint64_t n_repeats, std::uint64_t seed,
                                            int jobs) {
  if (m_trials < 1) throw std::domain_error("m_trials must be >= 1");
  if (n_repeats < 100) throw std::domain_error("n_repeats must be >= 100");

  const double mu = signal_mean(v_true, tau, params);
  const double sd = std::sqrt(variance(tau, params, scheme).total);
  const double slope = std::sqrt(total_transmission(tau, params) * params.n_photons) *
                       params.wavenumber() * tau;

  std::vector<double> estimates(n_repeats);
  parallel_for(n_repeats, jobs, [&](std::size_t j) {
    auto engine = substream(seed, j);
    std::normal_distribution<double> outcome(mu, sd);
    double sum = 0.0;
    for (std::uint64_t k = 0; k < m_trials; ++k) sum += outcome(engine);
    estimates[j] = sum / static_cast<double>(m_trials) / slope;
  });

  const double n = static_cast<double>(n_repeats);
  double mean = 0.0;
  for (double e : estimates) mean += e;
  mean /= n;
  double ss = 0.0;
  for (double e : estimates) ss += (e - mean) * (e - mean);

  MonteCarloEstimation r;
  r.empirical_std = std::sqrt(ss / (n - 1.0));
  r.crb = crb(tau, static_cast<double>(m_trials), params, scheme);
  r.mean_estimate = mean;
  r.mean_std_error = r.empirical_std / std::sqrt(n);
  r.m_trials = m_trials;
  r.n_repeats = n_repeats;
  r.seed = seed;
  return r;
}

}  // namespace memvel
