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

#include "memvel/model.hpp"

#include <cmath>
#include <iostream>
#include <mutex>
#include <stdexcept>

namespace memvel {

namespace {

constexpr double kLinearPhaseLimit = 0.1;

std::mutex& handler_mutex() {
  static std::mutex m;
  return m;
}

WarningHandler& handler_slot() {
  static WarningHandler h = [](const std::string& msg) { std::cerr << "warning: " << msg << '\n'; };
  return h;
}

void warn(const std::string& msg) {
  std::lock_guard lock(handler_mutex());
  if (handler_slot()) handler_slot()(msg);
}

void check_tau(double tau) {
  if (!(tau >= 0.0) || !std::isfinite(tau))
    throw std::domain_error("storage time must be finite and >= 0");
}

}  // namespace

WarningHandler set_warning_handler(WarningHandler handler) {
  std::lock_guard lock(handler_mutex());
  return std::exchange(handler_slot(), std::move(handler));
}

double memory_efficiency(double tau, const SensorParams& params) {
  check_tau(tau);
  const double x = tau / params.tau_mem;
  return params.eta_0 * std::exp(-x * x);
}

double total_transmission(double tau, const SensorParams& params) {
  return params.external_transmission() * memory_efficiency(tau, params);
}

double effective_squeezed_variance(double r, double sigma_theta) {
  if (!(r >= 0.0) || !(sigma_theta >= 0.0))
    throw std::domain_error("squeezing parameter and angle jitter must be >= 0");
  if (sigma_theta == 0.0) return std::exp(-2.0 * r);
  return std::cosh(2.0 * r) - std::exp(-2.0 * sigma_theta * sigma_theta) * std::sinh(2.0 * r);
}

double signal_mean(double v, double tau, const SensorParams& params) {
  const double eta = total_transmission(tau, params);
  const double phase = params.wavenumber() * tau * v;
  if (std::abs(phase) > kLinearPhaseLimit)
    warn("velocity phase " + std::to_string(phase) + " rad exceeds the linear regime");
  return std::sqrt(eta * params.n_photons) * phase;
}

VarianceBreakdown variance(double tau, const SensorParams& params, ReadoutScheme scheme) {
  const double eta = total_transmission(tau, params);
  VarianceBreakdown b;
  if (scheme == ReadoutScheme::SqueezedHomodyne)
    b.squeezing_term = eta * (effective_squeezed_variance(params.squeeze_r, params.sigma_theta) - 1.0);
  b.memory_term = 2.0 * params.noise_floor(tau);
  b.electronic_term = params.v_el;
  b.phase_term = eta * params.n_photons * params.sigma_phi * params.sigma_phi;
  b.heterodyne_extra = scheme == ReadoutScheme::CoherentHeterodyne ? 1.0 : 0.0;
  b.total = b.vacuum_unit + b.squeezing_term + b.memory_term + b.electronic_term + b.phase_term +
            b.heterodyne_extra;
  return b;
}

double variance_slope(double tau, const SensorParams& params, ReadoutScheme scheme) {
  const double eta = total_transmission(tau, params);
  const double deta = -2.0 * tau / (params.tau_mem * params.tau_mem) * eta;
  double coeff = params.n_photons * params.sigma_phi * params.sigma_phi;
  if (scheme == ReadoutScheme::SqueezedHomodyne)
    coeff += effective_squeezed_variance(params.squeeze_r, params.sigma_theta) - 1.0;
  const double dpn = params.p_n_table ? params.p_n_table->slope(tau) : 0.0;
  return deta * coeff + 2.0 * dpn;
}

}  // namespace memvel
