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

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "memvel/sensor_params.hpp"

namespace memvel {

/// Parse failure with the 1-based line number (0 when not line-bound) and key.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(int line, std::string field, const std::string& message);
  int line() const { return line_; }
  const std::string& field() const { return field_; }

 private:
  int line_;
  std::string field_;
};

enum class Quantity { Dimensionless, Time, Length, Angle, Squeezing };

/// Parses "100us", "795 nm", "30mrad", "10dB" etc. into SI (squeezing in dB).
/// Throws std::invalid_argument on malformed input or a unit of the wrong kind.
double parse_quantity(std::string_view text, Quantity kind);

/// Flat `key = value` parameter file. '#' starts a comment. Starts from
/// SensorParams{} (unit efficiencies, no noise) unless the first key is
/// `preset = reference`. Recognized keys: eta_ch, eta_det, eta_0, eta_zero,
/// tau_mem, p_n, v_el, sigma_theta, sigma_phi, n_photons, lambda_p,
/// squeezing (dB), squeeze_r, p_n_table ("tau:p_n, tau:p_n, ...").
SensorParams parse_params(std::string_view text);
SensorParams load_params(const std::filesystem::path& path);

/// Inverse of parse_params: SI-suffixed lines that parse back to exactly `p`.
std::string format_params(const SensorParams& p);

/// Shortest round-trip representation of a double.
std::string format_exact(double x);

}  // namespace memvel
