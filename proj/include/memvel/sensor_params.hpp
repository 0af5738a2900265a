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

#include <optional>
#include <string_view>
#include <vector>

namespace memvel {

/// Storage-time dependent memory-noise floor given as (tau [s], p_n) knots.
/// Evaluated by linear interpolation and held constant outside the knot range.
class NoiseTable {
 public:
  struct Knot {
    double tau;
    double p_n;
    bool operator==(const Knot&) const = default;
  };

  NoiseTable() = default;
  // Knots must be sorted by strictly increasing tau with p_n >= 0.
  explicit NoiseTable(std::vector<Knot> knots);

  double at(double tau) const;
  // Piecewise slope dp_n/dtau; zero outside the knot range.
  double slope(double tau) const;

  const std::vector<Knot>& knots() const { return knots_; }
  bool operator==(const NoiseTable&) const = default;

 private:
  std::vector<Knot> knots_;
};

/// Experimental working point. All quantities in SI units (m, s, rad).
struct SensorParams {
  double eta_ch = 1.0;        // propagation and coupling efficiency outside the memories
  double eta_det = 1.0;       // homodyne detector efficiency
  double eta_0 = 1.0;         // zero-storage memory efficiency
  double tau_mem = 1e-4;      // Gaussian memory decay constant [s]
  double p_n = 0.0;           // detector-referred unconditional memory noise per trial
  double v_el = 0.0;          // electronic variance in shot-noise units
  double sigma_theta = 0.0;   // rms squeezing-angle jitter [rad]
  double sigma_phi = 0.0;     // rms residual phase noise per trial [rad]
  double n_photons = 1e7;     // coherent probe photons per trial
  double lambda_p = 795e-9;   // probe wavelength [m]
  double squeeze_r = 0.0;     // squeezing parameter r

  // Overrides the scalar p_n in every storage-time dependent evaluation.
  std::optional<NoiseTable> p_n_table;

  /// Throws std::invalid_argument naming the first offending field.
  void validate() const;

  double wavenumber() const;
  double external_transmission() const { return eta_ch * eta_det; }
  double zero_storage_transmission() const { return eta_ch * eta_det * eta_0; }
  double noise_floor(double tau) const { return p_n_table ? p_n_table->at(tau) : p_n; }

  bool operator==(const SensorParams&) const = default;
};

/// Reference near-term working point: 10 dB squeezing, tau_mem = 100 us.
SensorParams reference_working_point();

enum class ReadoutScheme { SqueezedHomodyne, CoherentHomodyne, CoherentHeterodyne };

inline constexpr ReadoutScheme kAllSchemes[] = {ReadoutScheme::CoherentHomodyne,
                                                ReadoutScheme::SqueezedHomodyne,
                                                ReadoutScheme::CoherentHeterodyne};

std::string_view to_string(ReadoutScheme scheme);
std::string_view short_name(ReadoutScheme scheme);
std::optional<ReadoutScheme> parse_scheme(std::string_view text);

double squeezing_db_to_r(double db);
double squeezing_r_to_db(double r);

/// Returns a copy whose eta_ch * eta_det * eta_0 equals eta_zero. Only the
/// product enters the model, so eta_0 is rescaled first and the external
/// efficiencies are raised only when eta_0 would exceed one.
SensorParams with_zero_storage_transmission(SensorParams params, double eta_zero);

}  // namespace memvel
