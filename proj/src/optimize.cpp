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

#include "memvel/optimize.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "memvel/lambert_w.hpp"
#include "memvel/model.hpp"

namespace memvel {

namespace {

// Stationarity of log(dv^2) = log V - 2 log tau + (tau/tau_mem)^2 + const.
double log_slope(double tau, const SensorParams& p, ReadoutScheme scheme) {
  const double v = variance(tau, p, scheme).total;
  return variance_slope(tau, p, scheme) / v - 2.0 / tau + 2.0 * tau / (p.tau_mem * p.tau_mem);
}

template <typename F>
double golden_section(F&& f, double a, double b, double rel_tol) {
  constexpr double inv_phi = 0.6180339887498949;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > rel_tol * 0.5 * (a + b)) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

std::string_view to_string(OptimumMethod method) {
  return method == OptimumMethod::Analytic ? "analytic" : "numeric";
}

CeffParams c_eff_params(const SensorParams& params, ReadoutScheme scheme) {
  CeffParams c;
  c.a0 = 1.0 + 2.0 * params.p_n + params.v_el;
  if (scheme == ReadoutScheme::CoherentHeterodyne) c.a0 += 1.0;
  c.contrast = scheme == ReadoutScheme::SqueezedHomodyne
                   ? 1.0 - effective_squeezed_variance(params.squeeze_r, params.sigma_theta)
                   : 0.0;
  c.eta_opt = params.zero_storage_transmission();
  c.c_eff = c.eta_opt * c.contrast / c.a0;
  return c;
}

double c_eff_tilde(double eta_0, double r, double sigma_theta, double p_n, double v_el,
                   double n_sigma_phi_sq) {
  if (!(eta_0 >= 0.0 && eta_0 <= 1.0) || !(p_n >= 0.0) || !(v_el >= 0.0) ||
      !(n_sigma_phi_sq >= 0.0))
    throw std::domain_error("c_eff_tilde: inputs out of range");
  const double v_theta = effective_squeezed_variance(r, sigma_theta);
  return eta_0 * (1.0 - v_theta - n_sigma_phi_sq) / (1.0 + 2.0 * p_n + v_el);
}

double normalized_objective(double x, double c_eff) {
  if (!(x > 0.0)) throw std::domain_error("normalized_objective: x must be > 0");
  return std::sqrt(std::exp(x * x) - c_eff) / x;
}

double optimal_storage_ratio(double c_eff) {
  if (!(c_eff < 1.0)) throw std::domain_error("c_eff must be < 1");
  const double arg = std::max(-c_eff / std::numbers::e, -1.0 / std::numbers::e);
  return std::sqrt(std::max(0.0, 1.0 + lambert_w0(arg)));
}

OptimumReport tau_opt_analytic(const SensorParams& params, ReadoutScheme scheme) {
  const CeffParams c = c_eff_params(params, scheme);
  const double x = optimal_storage_ratio(c.c_eff);
  OptimumReport r;
  r.method = OptimumMethod::Analytic;
  r.scheme = scheme;
  r.tau_opt_over_tau_mem = x;
  r.tau_opt = x * params.tau_mem;
  r.delta_v_opt_sqrtM = std::sqrt(c.a0) /
                        (params.wavenumber() * params.tau_mem *
                         std::sqrt(params.n_photons * c.eta_opt)) *
                        normalized_objective(x, c.c_eff);
  return r;
}

OptimumReport tau_opt_numeric(const SensorParams& params, ReadoutScheme scheme,
                              const NumericOptimizerOptions& opts) {
  const double tm = params.tau_mem;
  auto objective = [&](double tau) { return shot_normalized_sensitivity(tau, params, scheme); };

  const int n = std::max(opts.scan_points, 3);
  std::vector<double> tau(n), f(n);
  const double lmin = std::log(opts.x_min), lmax = std::log(opts.x_max);
  for (int i = 0; i < n; ++i) {
    tau[i] = tm * std::exp(lmin + (lmax - lmin) * i / (n - 1));
    f[i] = objective(tau[i]);
  }

  std::vector<int> minima;
  for (int i = 1; i + 1 < n; ++i)
    if (f[i] <= f[i - 1] && f[i] < f[i + 1]) minima.push_back(i);
  if (minima.size() > 1) {
    std::vector<double> xs;
    std::ostringstream os;
    os << "sensitivity landscape has " << minima.size() << " local minima at tau/tau_mem =";
    for (int i : minima) {
      xs.push_back(tau[i] / tm);
      os << ' ' << tau[i] / tm;
    }
    throw NonUnimodalLandscape(os.str(), std::move(xs));
  }

  int lo, hi;
  if (minima.empty()) {
    // Monotone over the bracket: the optimum sits on an edge.
    const bool left = f.front() <= f.back();
    lo = left ? 0 : n - 2;
    hi = left ? 1 : n - 1;
  } else {
    lo = minima.front() - 1;
    hi = minima.front() + 1;
  }

  double best = golden_section(objective, tau[lo], tau[hi], opts.rel_tol);

  // Golden section resolves the minimizer only to ~sqrt(eps) on a flat valley;
  // refine by bisection on the analytic slope when it changes sign.
  double a = tau[lo], b = tau[hi];
  double ga = log_slope(a, params, scheme), gb = log_slope(b, params, scheme);
  if (ga < 0.0 && gb > 0.0) {
    for (int it = 0; it < 200 && b - a > 1e-15 * b; ++it) {
      const double m = 0.5 * (a + b);
      const double gm = log_slope(m, params, scheme);
      if (gm == 0.0) {
        a = b = m;
        break;
      }
      (gm < 0.0 ? a : b) = m;
    }
    best = 0.5 * (a + b);
  }

  OptimumReport r;
  r.method = OptimumMethod::Numeric;
  r.scheme = scheme;
  r.tau_opt = best;
  r.tau_opt_over_tau_mem = best / tm;
  r.delta_v_opt_sqrtM = objective(best);
  return r;
}

GainReport optimized_gain(const SensorParams& params, GainBaseline baseline,
                          const NumericOptimizerOptions& opts) {
  const OptimumReport sq = tau_opt_numeric(params, ReadoutScheme::SqueezedHomodyne, opts);
  double coh = 0.0;
  if (baseline == GainBaseline::Independent)
    coh = tau_opt_numeric(params, ReadoutScheme::CoherentHomodyne, opts).delta_v_opt_sqrtM;
  else
    coh = shot_normalized_sensitivity(sq.tau_opt, params, ReadoutScheme::CoherentHomodyne);
  GainReport g = make_gain_report(sq.delta_v_opt_sqrtM / coh);
  if (baseline == GainBaseline::SharedTau)
    g.closed_form_power_ratio = sensitivity_ratio(sq.tau_opt, params).closed_form_power_ratio;
  return g;
}

}  // namespace memvel
