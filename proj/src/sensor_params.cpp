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

#include "memvel/sensor_params.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace memvel {

namespace {

void require(bool ok, const char* field, const char* what) {
  if (!ok) throw std::invalid_argument(std::string(field) + ": " + what);
}

bool finite(double x) { return std::isfinite(x); }

}  // namespace

NoiseTable::NoiseTable(std::vector<Knot> knots) : knots_(std::move(knots)) {
  if (knots_.empty()) throw std::invalid_argument("p_n_table: needs at least one knot");
  for (std::size_t i = 0; i < knots_.size(); ++i) {
    const auto& k = knots_[i];
    if (!finite(k.tau) || !finite(k.p_n) || k.tau < 0.0 || k.p_n < 0.0)
      throw std::invalid_argument("p_n_table: knots need finite tau >= 0 and p_n >= 0");
    if (i > 0 && !(k.tau > knots_[i - 1].tau))
      throw std::invalid_argument("p_n_table: tau must be strictly increasing");
  }
}

double NoiseTable::at(double tau) const {
  if (tau <= knots_.front().tau) return knots_.front().p_n;
  if (tau >= knots_.back().tau) return knots_.back().p_n;
  auto hi = std::upper_bound(knots_.begin(), knots_.end(), tau,
                             [](double t, const Knot& k) { return t < k.tau; });
  auto lo = hi - 1;
  const double w = (tau - lo->tau) / (hi->tau - lo->tau);
  return lo->p_n + w * (hi->p_n - lo->p_n);
}

double NoiseTable::slope(double tau) const {
  if (knots_.size() < 2 || tau < knots_.front().tau || tau >= knots_.back().tau) return 0.0;
  auto hi = std::upper_bound(knots_.begin(), knots_.end(), tau,
                             [](double t, const Knot& k) { return t < k.tau; });
  auto lo = hi - 1;
  return (hi->p_n - lo->p_n) / (hi->tau - lo->tau);
}

void SensorParams::validate() const {
  require(finite(eta_ch) && eta_ch > 0.0 && eta_ch <= 1.0, "eta_ch", "must lie in (0,1]");
  require(finite(eta_det) && eta_det > 0.0 && eta_det <= 1.0, "eta_det", "must lie in (0,1]");
  require(finite(eta_0) && eta_0 > 0.0 && eta_0 <= 1.0, "eta_0", "must lie in (0,1]");
  require(finite(tau_mem) && tau_mem > 0.0, "tau_mem", "must be positive");
  require(finite(p_n) && p_n >= 0.0, "p_n", "must be >= 0");
  require(finite(v_el) && v_el >= 0.0, "v_el", "must be >= 0");
  require(finite(sigma_theta) && sigma_theta >= 0.0, "sigma_theta", "must be >= 0");
  require(finite(sigma_phi) && sigma_phi >= 0.0, "sigma_phi", "must be >= 0");
  require(finite(n_photons) && n_photons > 0.0, "n_photons", "must be positive");
  require(finite(lambda_p) && lambda_p > 0.0, "lambda_p", "must be positive");
  require(finite(squeeze_r) && squeeze_r >= 0.0, "squeeze_r", "must be >= 0");
}

double SensorParams::wavenumber() const { return 2.0 * std::numbers::pi / lambda_p; }

SensorParams reference_working_point() {
  SensorParams p;
  p.eta_ch = 0.67;
  p.eta_det = 0.95;
  p.eta_0 = 0.50;
  p.tau_mem = 100e-6;
  p.p_n = 9.1e-3;
  p.v_el = 0.02;
  p.sigma_theta = 30e-3;
  p.sigma_phi = 1e-4;
  p.n_photons = 1e7;
  p.lambda_p = 795e-9;
  p.squeeze_r = squeezing_db_to_r(10.0);
  return p;
}

std::string_view to_string(ReadoutScheme scheme) {
  switch (scheme) {
    case ReadoutScheme::SqueezedHomodyne: return "squeezed_homodyne";
    case ReadoutScheme::CoherentHomodyne: return "coherent_homodyne";
    case ReadoutScheme::CoherentHeterodyne: return "coherent_heterodyne";
  }
  return "unknown";
}

std::string_view short_name(ReadoutScheme scheme) {
  switch (scheme) {
    case ReadoutScheme::SqueezedHomodyne: return "sq";
    case ReadoutScheme::CoherentHomodyne: return "coh";
    case ReadoutScheme::CoherentHeterodyne: return "het";
  }
  return "unknown";
}

std::optional<ReadoutScheme> parse_scheme(std::string_view text) {
  for (auto s : kAllSchemes)
    if (text == to_string(s) || text == short_name(s)) return s;
  return std::nullopt;
}

double squeezing_db_to_r(double db) {
  if (!(db >= 0.0) || !finite(db)) throw std::domain_error("squeezing in dB must be finite and >= 0");
  return db / 20.0 * std::numbers::ln10;
}

double squeezing_r_to_db(double r) { return 20.0 * r / std::numbers::ln10; }

SensorParams with_zero_storage_transmission(SensorParams params, double eta_zero) {
  if (!(eta_zero > 0.0 && eta_zero <= 1.0))
    throw std::invalid_argument("eta(0) must lie in (0,1]");
  const double ext = params.external_transmission();
  if (eta_zero <= ext) {
    params.eta_0 = std::min(1.0, eta_zero / ext);
    return params;
  }
  params.eta_0 = 1.0;
  params.eta_ch = eta_zero / params.eta_det;
  if (params.eta_ch > 1.0) {
    params.eta_ch = 1.0;
    params.eta_det = eta_zero;
  }
  return params;
}

}  // namespace memvel
