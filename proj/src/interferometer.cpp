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

#include "memvel/interferometer.hpp"

#include <cmath>

#include "memvel/model.hpp"

namespace memvel {

namespace {

constexpr int kUpper = 0;
constexpr int kLower = 1;

double total_phase(const InterferometerConfig& cfg) {
  const double phi_v = -cfg.params.wavenumber() * cfg.v * cfg.tau;
  return cfg.phi_b + phi_v + cfg.delta_phi;
}

}  // namespace

GaussianState dark_port_state(const InterferometerConfig& cfg) {
  const SensorParams& p = cfg.params;
  p.validate();
  const double eta_mem = memory_efficiency(cfg.tau, p);
  const double eta_ext = p.external_transmission();
  const double arm_noise = p.noise_floor(cfg.tau) / eta_ext;

  GaussianState s = GaussianState::vacuum(2);
  s = displace(std::move(s), 0, std::sqrt(p.n_photons), 0.0);
  s = squeeze(s, 1, p.squeeze_r, cfg.theta);

  s = apply_beamsplitter(s, 0, 1);
  if (cfg.exact) {
    const double phi = total_phase(cfg);
    s = apply_phase(s, kUpper, 0.5 * phi);
    s = apply_phase(s, kLower, -0.5 * phi);
  }
  for (int arm : {kUpper, kLower}) {
    s = apply_loss(s, arm, eta_mem);
    s = apply_added_noise(s, arm, arm_noise);
  }
  s = apply_beamsplitter(s, 0, 1);
  return apply_loss(s, 1, eta_ext);
}

DarkPortStatistics simulate_interferometer(const InterferometerConfig& cfg) {
  const GaussianState s = dark_port_state(cfg);
  DarkPortStatistics out;
  out.variance = s.cov()(3, 3);
  out.mean = -s.mean()(3);
  if (!cfg.exact) {
    const double eta = total_transmission(cfg.tau, cfg.params);
    out.mean = -std::sqrt(eta * cfg.params.n_photons) * total_phase(cfg);
  }
  return out;
}

}  // namespace memvel
