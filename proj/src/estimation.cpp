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

#include "memvel/estimation.hpp"

#include <cmath>
#include <sstream>

namespace memvel {

namespace {

void check_positive_tau(double tau) {
  if (!(tau > 0.0) || !std::isfinite(tau))
    throw std::domain_error("Fisher information needs a storage time > 0");
}

void check_gain(double a) {
  if (!(a > 0.0 && a < 1.0)) throw std::domain_error("target gain must lie in (0,1)");
}

// Detected squeezing contrast C = 1 - V_theta.
double contrast(const SensorParams& p) {
  return 1.0 - effective_squeezed_variance(p.squeeze_r, p.sigma_theta);
}

double phase_noise_per_eta(const SensorParams& p) {
  return p.n_photons * p.sigma_phi * p.sigma_phi;
}

}  // namespace

GainReport make_gain_report(double ratio) {
  GainReport g;
  g.ratio = ratio;
  g.gain = 1.0 - ratio;
  g.power_ratio = ratio * ratio;
  g.power_ratio_db = 10.0 * std::log10(g.power_ratio);
  g.closed_form_power_ratio = g.power_ratio;
  return g;
}

double fisher_single(double tau, const SensorParams& params, ReadoutScheme scheme) {
  check_positive_tau(tau);
  const double eta = total_transmission(tau, params);
  const double kt = params.wavenumber() * tau;
  return eta * params.n_photons * kt * kt / variance(tau, params, scheme).total;
}

double crb(double tau, double m_trials, const SensorParams& params, ReadoutScheme scheme) {
  if (!(m_trials >= 1.0)) throw std::domain_error("number of trials must be >= 1");
  return shot_normalized_sensitivity(tau, params, scheme) / std::sqrt(m_trials);
}

double shot_normalized_sensitivity(double tau, const SensorParams& params, ReadoutScheme scheme) {
  check_positive_tau(tau);
  const double eta = total_transmission(tau, params);
  return std::sqrt(variance(tau, params, scheme).total) /
         (params.wavenumber() * tau * std::sqrt(eta * params.n_photons));
}

SensitivityResult sensitivity(double tau, double m_trials, const SensorParams& params,
                              ReadoutScheme scheme) {
  SensitivityResult s;
  s.tau = tau;
  s.eta = total_transmission(tau, params);
  s.variance = variance(tau, params, scheme).total;
  s.fisher_single = fisher_single(tau, params, scheme);
  s.delta_v_sqrtM = shot_normalized_sensitivity(tau, params, scheme);
  s.delta_v = crb(tau, m_trials, params, scheme);
  s.m_trials = m_trials;
  s.scheme = scheme;
  return s;
}

GainReport sensitivity_ratio(double tau, const SensorParams& params) {
  const double v_sq = variance(tau, params, ReadoutScheme::SqueezedHomodyne).total;
  const double v_coh = variance(tau, params, ReadoutScheme::CoherentHomodyne).total;
  GainReport g = make_gain_report(std::sqrt(v_sq / v_coh));

  const double eta = total_transmission(tau, params);
  const double a0 = 1.0 + 2.0 * params.noise_floor(tau) + params.v_el;
  g.closed_form_power_ratio = 1.0 - eta * contrast(params) / (a0 + eta * phase_noise_per_eta(params));
  return g;
}

double gain_at_transmission(double eta, const SensorParams& params) {
  const double a0 = 1.0 + 2.0 * params.p_n + params.v_el;
  const double c = contrast(params);
  if (c <= 0.0) return 0.0;
  return 1.0 - std::sqrt(1.0 - eta * c / (a0 + eta * phase_noise_per_eta(params)));
}

double min_transmission(double target_gain, const SensorParams& params) {
  check_gain(target_gain);
  const double g2 = 2.0 * target_gain - target_gain * target_gain;
  const double a0 = 1.0 + 2.0 * params.p_n + params.v_el;
  const double denom = contrast(params) - g2 * phase_noise_per_eta(params);
  const double eta_min = denom > 0.0 ? g2 * a0 / denom : 0.0;
  if (denom <= 0.0 || eta_min > 1.0) {
    const double best = gain_at_transmission(1.0, params);
    std::ostringstream os;
    os << "unreachable gain " << target_gain << ": maximum at unit transmission is " << best;
    throw UnreachableGain(os.str(), best);
  }
  return eta_min;
}

double max_memory_noise(double target_gain, double eta, const SensorParams& params) {
  check_gain(target_gain);
  if (!(eta > 0.0 && eta <= 1.0)) throw std::domain_error("transmission must lie in (0,1]");
  const double g2 = 2.0 * target_gain - target_gain * target_gain;
  const double budget =
      (eta * contrast(params) / g2 - 1.0 - params.v_el - eta * phase_noise_per_eta(params)) / 2.0;
  if (budget < 0.0) {
    SensorParams quiet = params;
    quiet.p_n = 0.0;
    const double best = gain_at_transmission(eta, quiet);
    std::ostringstream os;
    os << "gain " << target_gain << " unreachable at transmission " << eta
       << " even without memory noise (maximum " << best << ")";
    throw UnreachableGain(os.str(), best);
  }
  return budget;
}

}  // namespace memvel
