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

#include <stdexcept>
#include <string_view>
#include <vector>

#include "memvel/estimation.hpp"
#include "memvel/sensor_params.hpp"

namespace memvel {

/// Dimensionless quantities of the constant-noise, phase-noise-free model.
struct CeffParams {
  double a0 = 1.0;        // added-noise floor 1 + 2 p_n + v_el (+1 for heterodyne)
  double contrast = 0.0;  // detected squeezing contrast 1 - V_theta (0 for coherent schemes)
  double eta_opt = 1.0;   // zero-storage total transmission eta(0)
  double c_eff = 0.0;     // eta_opt * contrast / a0
};

enum class OptimumMethod { Analytic, Numeric };

std::string_view to_string(OptimumMethod method);

struct OptimumReport {
  double tau_opt = 0.0;               // [s]
  double tau_opt_over_tau_mem = 0.0;
  double delta_v_opt_sqrtM = 0.0;     // [m/s * sqrt(trials)]
  OptimumMethod method = OptimumMethod::Numeric;
  ReadoutScheme scheme = ReadoutScheme::SqueezedHomodyne;
};

/// Bracket scan found more than one local minimum of the sensitivity curve.
class NonUnimodalLandscape : public std::runtime_error {
 public:
  NonUnimodalLandscape(const std::string& what, std::vector<double> minima_over_tau_mem)
      : std::runtime_error(what), minima_(std::move(minima_over_tau_mem)) {}
  const std::vector<double>& minima_over_tau_mem() const { return minima_; }

 private:
  std::vector<double> minima_;
};

struct NumericOptimizerOptions {
  double x_min = 1e-3;       // bracket, in units of tau_mem
  double x_max = 3.0;
  int scan_points = 200;     // log-spaced pre-scan
  double rel_tol = 1e-10;    // golden-section tolerance in tau
};

CeffParams c_eff_params(const SensorParams& params,
                        ReadoutScheme scheme = ReadoutScheme::SqueezedHomodyne);

/// c_eff with the phase-noise contribution N sigma_phi^2 subtracted from the contrast.
double c_eff_tilde(double eta_0, double r, double sigma_theta, double p_n, double v_el,
                   double n_sigma_phi_sq);

/// sqrt(e^{x^2} - c_eff) / x, the sensitivity shape in units of its prefactor.
double normalized_objective(double x, double c_eff);

/// Stationary point x = sqrt(1 + W0(-c_eff/e)) of the shape curve.
/// Throws std::domain_error for c_eff >= 1.
double optimal_storage_ratio(double c_eff);

/// Lambert-W optimum for constant p_n; sigma_phi is treated as zero.
OptimumReport tau_opt_analytic(const SensorParams& params,
                               ReadoutScheme scheme = ReadoutScheme::SqueezedHomodyne);

/// Minimizes the full shot-normalized sensitivity over the storage time.
OptimumReport tau_opt_numeric(const SensorParams& params, ReadoutScheme scheme,
                              const NumericOptimizerOptions& opts = {});

enum class GainBaseline {
  Independent,  // each scheme at its own optimum
  SharedTau,    // coherent evaluated at the squeezed optimum
};

/// Equal-resource gain 1 - min dv_sq / min dv_coh at fixed N and M.
GainReport optimized_gain(const SensorParams& params,
                          GainBaseline baseline = GainBaseline::Independent,
                          const NumericOptimizerOptions& opts = {});

}  // namespace memvel
