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
#include <string>

#include "memvel/model.hpp"
#include "memvel/sensor_params.hpp"

namespace memvel {

struct SensitivityResult {
  double tau = 0.0;             // [s]
  double eta = 0.0;             // total transmission at tau
  double variance = 0.0;        // detected variance, shot-noise units
  double fisher_single = 0.0;   // [(s/m)^2]
  double delta_v = 0.0;         // [m/s] for m_trials runs
  double delta_v_sqrtM = 0.0;   // [m/s * sqrt(trials)]
  double m_trials = 1.0;
  ReadoutScheme scheme = ReadoutScheme::SqueezedHomodyne;
};

/// Squeezed versus coherent homodyne comparison. ratio = dv_sq / dv_coh.
struct GainReport {
  double ratio = 1.0;
  double gain = 0.0;         // 1 - ratio
  double power_ratio = 1.0;  // ratio^2
  double power_ratio_db = 0.0;
  // Closed-form ratio^2 = 1 - eta C / (A0 + eta N sigma_phi^2); equals
  // power_ratio up to rounding when both schemes share tau.
  double closed_form_power_ratio = 1.0;
};

GainReport make_gain_report(double ratio);

/// A requested gain that no transmission in (0,1] can deliver.
class UnreachableGain : public std::domain_error {
 public:
  UnreachableGain(const std::string& what, double max_gain)
      : std::domain_error(what), max_gain_(max_gain) {}
  /// Largest gain reachable at unit transmission (zero if squeezing does not help).
  double max_gain() const { return max_gain_; }

 private:
  double max_gain_;
};

/// Single-run Fisher information eta N (k_p tau)^2 / V. Rejects tau <= 0.
double fisher_single(double tau, const SensorParams& params, ReadoutScheme scheme);

/// Cramer-Rao bound sqrt(V) / (k_p tau sqrt(M eta N)) [m/s].
double crb(double tau, double m_trials, const SensorParams& params, ReadoutScheme scheme);

/// Shot-normalized sensitivity delta_v * sqrt(M) [m/s].
double shot_normalized_sensitivity(double tau, const SensorParams& params, ReadoutScheme scheme);

SensitivityResult sensitivity(double tau, double m_trials, const SensorParams& params,
                              ReadoutScheme scheme);

/// Squeezed/coherent homodyne ratio at a common storage time.
GainReport sensitivity_ratio(double tau, const SensorParams& params);

/// Largest achievable gain 1 - R at transmission eta.
double gain_at_transmission(double eta, const SensorParams& params);

/// Minimum total transmission for a target gain A = 1 - R.
/// Throws UnreachableGain when the denominator is not positive.
double min_transmission(double target_gain, const SensorParams& params);

/// Largest p_n that still allows target_gain at total transmission eta.
/// Throws UnreachableGain when no p_n >= 0 suffices.
double max_memory_noise(double target_gain, double eta, const SensorParams& params);

}  // namespace memvel
