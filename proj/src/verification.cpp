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

#include <cmath>
#include <sstream>

#include <fmt/format.h>

#include "memvel/config.hpp"
#include "memvel/estimation.hpp"
#include "memvel/interferometer.hpp"
#include "memvel/model.hpp"
#include "memvel/monte_carlo.hpp"
#include "memvel/rng.hpp"
#include "memvel/sweep.hpp"

namespace memvel {

namespace {

constexpr double kNmPerM = 1e9;

std::uint64_t row_seed(std::uint64_t master, std::uint64_t row) { return splitmix64(master + row); }

struct CheckRow {
  std::string name;
  double value;
  double expected;
  double deviation;
  double tolerance;
  bool passed;
  std::string detail;
};

std::vector<Cell> to_cells(const CheckRow& c) {
  return {c.name, c.value, c.expected, c.deviation, c.tolerance, c.passed ? 1.0 : 0.0, c.detail};
}

std::vector<Column> check_columns() {
  return {{"check", "-"},     {"value", "1"},     {"expected", "1"}, {"deviation", "1"},
          {"tolerance", "1"}, {"passed", "1"},    {"detail", "-"}};
}

CheckRow jitter_check(const SensorParams& params, std::uint64_t samples, double band,
                      std::uint64_t seed, int jobs) {
  SensorParams p = params;
  p.eta_ch = p.eta_det = p.eta_0 = 1.0;
  p.p_n = 0.0;
  p.p_n_table.reset();
  p.v_el = 0.0;
  p.sigma_phi = 0.0;
  InterferometerConfig cfg{p, 0.0, 0.0};
  const MonteCarloVariance mc = monte_carlo_variance(cfg, samples, seed, jobs);
  const double expected = effective_squeezed_variance(p.squeeze_r, p.sigma_theta);
  const double dev = std::abs(mc.estimate - expected);
  return {"mc_squeezing_jitter", mc.estimate, expected, dev, band * mc.std_error, dev <= band * mc.std_error,
          fmt::format("samples={} std_error={:.6g} seed={}", samples, mc.std_error, seed)};
}

CheckRow phase_noise_check(const SensorParams& params, std::uint64_t samples, double band,
                           std::uint64_t seed, int jobs) {
  SensorParams p = params;
  p.squeeze_r = 0.0;
  const double tau = p.tau_mem;
  InterferometerConfig cfg{p, 0.0, tau};
  const MonteCarloVariance mc = monte_carlo_variance(cfg, samples, seed, jobs);
  const double floor = 1.0 + 2.0 * p.noise_floor(tau) + p.v_el;
  const double expected = total_transmission(tau, p) * p.n_photons * p.sigma_phi * p.sigma_phi;
  const double excess = mc.estimate - floor;
  const double dev = std::abs(excess - expected);
  return {"mc_phase_noise_excess", excess, expected, dev, band * mc.std_error, dev <= band * mc.std_error,
          fmt::format("samples={} std_error={:.6g} seed={}", samples, mc.std_error, seed)};
}

}  // namespace

SweepResult run_montecarlo(const SensorParams& params, const MonteCarloOptions& mc, std::uint64_t seed) {
  params.validate();
  const double tau = mc.tau_rel * params.tau_mem;
  SweepResult r;
  add_run_header(r, "montecarlo", params, seed);
  r.add_meta("tau_over_tau_mem", format_exact(mc.tau_rel));
  r.add_meta("m_trials", std::to_string(mc.m_trials));
  r.add_meta("repeats", std::to_string(mc.repeats));
  r.add_meta("samples", std::to_string(mc.samples));
  r.columns = {{"check", "-"},     {"estimate", "varies"}, {"expected", "varies"},
               {"std_error", "varies"}, {"z_score", "1"}, {"seed", "1"}};

  std::uint64_t row = 0;
  for (auto s : kAllSchemes) {
    const std::uint64_t sd = row_seed(seed, row++);
    const MonteCarloEstimation e =
        monte_carlo_estimation(params, s, mc.v_true, tau, mc.m_trials, mc.repeats, sd, mc.jobs);
    const double n = static_cast<double>(e.n_repeats);
    // Standard error of a sample standard deviation of Gaussian data.
    const double std_se = e.empirical_std / std::sqrt(2.0 * (n - 1.0));
    r.rows.push_back({fmt::format("std_over_crb_{}", short_name(s)), e.empirical_std * kNmPerM,
                      e.crb * kNmPerM, std_se * kNmPerM, (e.empirical_std - e.crb) / std_se,
                      static_cast<double>(sd)});
    r.rows.push_back({fmt::format("bias_{}", short_name(s)), e.mean_estimate * kNmPerM,
                      mc.v_true * kNmPerM, e.mean_std_error * kNmPerM,
                      (e.mean_estimate - mc.v_true) / e.mean_std_error, static_cast<double>(sd)});
  }
  const std::uint64_t sd = row_seed(seed, row++);
  const InterferometerConfig cfg{params, 0.0, tau};
  const MonteCarloVariance v = monte_carlo_variance(cfg, mc.samples, sd, mc.jobs);
  const double expected = variance(tau, params, ReadoutScheme::SqueezedHomodyne).total;
  r.rows.push_back({std::string("variance_squeezed"), v.estimate, expected, v.std_error,
                    (v.estimate - expected) / v.std_error, static_cast<double>(sd)});
  return r;
}

OracleCheckReport run_oracle_check(const SensorParams& params, const OracleCheckOptions& o,
                                   std::uint64_t seed) {
  params.validate();
  OracleCheckReport rep;
  SweepResult& r = rep.table;
  add_run_header(r, "oracle-check", params, seed);
  r.columns = check_columns();
  std::vector<CheckRow> checks;

  // Deterministic grid: sigma_theta = sigma_phi = v_el = 0.
  SensorParams base = params;
  base.sigma_theta = base.sigma_phi = base.v_el = 0.0;
  double worst_var = 0.0, worst_lin = 0.0, worst_slope = 0.0;
  std::string at_var = "-", at_lin = "-", at_slope = "-";
  for (int i = 0; i < o.tau_points; ++i) {
    const double tau_rel = o.tau_rel_max * i / std::max(1, o.tau_points - 1);
    const double tau = tau_rel * base.tau_mem;
    for (int j = 0; j < o.r_points; ++j) {
      const double db = o.db_max * j / std::max(1, o.r_points - 1);
      SensorParams p = base;
      p.squeeze_r = squeezing_db_to_r(db);
      const double closed = variance(tau, p, ReadoutScheme::SqueezedHomodyne).total;
      const DarkPortStatistics exact = simulate_interferometer({p, 0.0, tau});
      const double dv = std::abs(exact.variance - closed);
      if (dv > worst_var) {
        worst_var = dv;
        at_var = fmt::format("tau_rel={:.6g} db={:.6g}", tau_rel, db);
      }

      const double v = 1e-7;
      InterferometerConfig lin{p, v, tau};
      lin.exact = false;
      const DarkPortStatistics ls = simulate_interferometer(lin);
      const double dl = std::max(std::abs(ls.variance - closed), std::abs(ls.mean - signal_mean(v, tau, p)));
      if (dl > worst_lin) {
        worst_lin = dl;
        at_lin = fmt::format("tau_rel={:.6g} db={:.6g}", tau_rel, db);
      }

      if (tau > 0.0) {
        const double h = 1e-4 / (p.wavenumber() * tau);
        const double up = simulate_interferometer({p, h, tau}).mean;
        const double dn = simulate_interferometer({p, -h, tau}).mean;
        const double slope = (up - dn) / (2.0 * h);
        const double expected = std::sqrt(total_transmission(tau, p) * p.n_photons) * p.wavenumber() * tau;
        const double rel = std::abs(slope / expected - 1.0);
        if (rel > worst_slope) {
          worst_slope = rel;
          at_slope = fmt::format("tau_rel={:.6g} db={:.6g}", tau_rel, db);
        }
      }
    }
  }
  checks.push_back({"covariance_vs_closed_form_variance", worst_var, 0.0, worst_var, o.det_tol,
                    worst_var <= o.det_tol, "worst " + at_var});
  checks.push_back({"linearized_vs_closed_form", worst_lin, 0.0, worst_lin, o.det_tol,
                    worst_lin <= o.det_tol, "worst " + at_lin});
  checks.push_back({"exact_slope_relative_error", worst_slope, 0.0, worst_slope, o.slope_tol,
                    worst_slope <= o.slope_tol, "worst " + at_slope});

  if (o.include_monte_carlo) {
    checks.push_back(jitter_check(params, o.mc_samples, o.sigma_band, row_seed(seed, 0), o.jobs));
    checks.push_back(phase_noise_check(params, o.mc_samples, o.sigma_band, row_seed(seed, 1), o.jobs));

    SensorParams p = params;
    const double tau = p.tau_mem;
    const std::uint64_t sd = row_seed(seed, 2);
    const MonteCarloEstimation e = monte_carlo_estimation(p, ReadoutScheme::SqueezedHomodyne, 1e-6, tau,
                                                          o.mc_trials, o.mc_repeats, sd, o.jobs);
    const double ratio = e.std_ratio();
    checks.push_back({"mc_std_over_crb_squeezed", ratio, 1.0, std::abs(ratio - 1.0), o.crb_band,
                      std::abs(ratio - 1.0) <= o.crb_band,
                      fmt::format("M={} repeats={} seed={}", o.mc_trials, o.mc_repeats, sd)});
    const double bias = std::abs(e.mean_estimate - 1e-6);
    checks.push_back({"mc_estimator_bias", e.mean_estimate, 1e-6, bias, o.sigma_band * e.mean_std_error,
                      bias <= o.sigma_band * e.mean_std_error, fmt::format("seed={}", sd)});
  }

  for (const auto& c : checks) {
    r.rows.push_back(to_cells(c));
    rep.passed = rep.passed && c.passed;
  }
  r.add_meta("result", rep.passed ? "pass" : "fail");
  return rep;
}

}  // namespace memvel
