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

#include <functional>
#include <string>

#include "memvel/sensor_params.hpp"

namespace memvel {

/// Additive contributions to the detected homodyne variance, in shot-noise
/// units (vacuum = 1).
struct VarianceBreakdown {
  double vacuum_unit = 1.0;
  double squeezing_term = 0.0;   // eta(tau) * (V_theta - 1)
  double memory_term = 0.0;      // 2 p_n
  double electronic_term = 0.0;  // v_el
  double phase_term = 0.0;       // eta(tau) * N * sigma_phi^2
  double heterodyne_extra = 0.0; // 1 for heterodyne, else 0
  double total = 1.0;
};

/// Gaussian write-store-read efficiency eta_0 exp[-(tau/tau_mem)^2].
double memory_efficiency(double tau, const SensorParams& params);

/// Total signal transmission eta(tau) = eta_ch eta_det eta_mem(tau).
double total_transmission(double tau, const SensorParams& params);

/// Jitter-averaged squeezed-quadrature variance cosh 2r - exp(-2 sigma^2) sinh 2r.
double effective_squeezed_variance(double r, double sigma_theta);

/// Homodyne mean sqrt(eta N) k_p tau v in shot-noise units.
///
/// The physical phase is -k_p v tau; the readout quadrature sign is chosen so
/// that positive velocity gives a positive mean. The sign cancels in every
/// Fisher quantity. Phases above 0.1 rad are outside the linear regime and
/// trigger a warning through the installed handler.
double signal_mean(double v, double tau, const SensorParams& params);

VarianceBreakdown variance(double tau, const SensorParams& params, ReadoutScheme scheme);

/// d/dtau of variance(...).total, used for stationarity refinement.
double variance_slope(double tau, const SensorParams& params, ReadoutScheme scheme);

using WarningHandler = std::function<void(const std::string&)>;
/// Installs a handler for model warnings and returns the previous one.
/// The default handler writes to stderr.
WarningHandler set_warning_handler(WarningHandler handler);

}  // namespace memvel
