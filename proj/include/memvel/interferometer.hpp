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

#include "memvel/gaussian_state.hpp"
#include "memvel/sensor_params.hpp"

namespace memvel {

/// One deterministic interrogation of the two-memory Mach-Zehnder.
struct InterferometerConfig {
  SensorParams params;
  double v = 0.0;          // velocity of the signal memory [m/s]
  double tau = 0.0;        // storage time [s]
  double phi_b = 0.0;      // bias phase [rad]
  double delta_phi = 0.0;  // residual arm-phase offset for this trial [rad]
  double theta = 0.0;      // squeezing-ellipse rotation for this trial [rad]
  bool exact = true;       // exact trigonometric transfer, else linearized at the dark fringe
};

/// Statistics of the homodyne readout of the dark port, in shot-noise units.
struct DarkPortStatistics {
  double mean = 0.0;
  double variance = 1.0;
};

/// Propagates coherent probe (x) P-squeezed vacuum through
/// BS1 -> arm phases -> memory loss -> memory noise -> BS2 -> external loss.
///
/// Mode 1 of the returned state is the dark port. Arm phases are split
/// symmetrically, phi_u = -phi_l = (phi_b - k_p v tau + delta_phi)/2. Memory
/// noise is injected per arm with occupancy p_n / eta_ext so that the
/// detector-referred dark-port excess equals 2 p_n. In linearized mode the
/// arm phases are left out of the state.
GaussianState dark_port_state(const InterferometerConfig& cfg);

/// Readout statistics of the quadrature -P_d. The sign makes a positive
/// velocity give a positive mean. Electronic noise is not included.
DarkPortStatistics simulate_interferometer(const InterferometerConfig& cfg);

}  // namespace memvel
