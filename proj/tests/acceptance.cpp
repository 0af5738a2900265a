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

// Acceptance suite: one PASS/FAIL line per criterion. Tolerances are fixed here.

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "memvel/config.hpp"
#include "memvel/estimation.hpp"
#include "memvel/gaussian_state.hpp"
#include "memvel/lambert_w.hpp"
#include "memvel/monte_carlo.hpp"
#include "memvel/optimize.hpp"
#include "memvel/sweep.hpp"

namespace {

using namespace memvel;
using Clock = std::chrono::steady_clock;

constexpr std::uint64_t kSeed = 2026;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) pass = false;
    if (!detail.empty()) detail += "; ";
    detail += (ok ? "" : "FAILED ") + what;
  }
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string csv_text(const SweepResult& r) {
  std::ostringstream os;
  write_csv(os, r);
  return os.str();
}

// 1. Loss thresholds at 10 and 20 percent gain.
Outcome thresholds() {
  Outcome o;
  const auto t0 = Clock::now();
  const SweepResult t = run_threshold(reference_working_point(), {0.1, 0.2});
  const double e10 = t.number(0, "eta_min").value_or(NAN);
  const double e20 = t.number(1, "eta_min").value_or(NAN);
  const double dt = seconds_since(t0);
  o.require(std::abs(e10 - 0.226) <= 0.002, fmt::format("eta_min(10%)={:.6f} (0.226+-0.002)", e10));
  o.require(std::abs(e20 - 0.437) <= 0.002, fmt::format("eta_min(20%)={:.6f} (0.437+-0.002)", e20));
  o.require(dt < 0.1, fmt::format("{:.3g} s", dt));
  return o;
}

// 2. Optimum sensitivities and storage times.
Outcome optima() {
  Outcome o;
  const auto t0 = Clock::now();
  const SweepResult r = run_optimize(reference_working_point());
  const double dt = seconds_since(t0);
  const struct {
    const char* scheme;
    double dv;
    double x;
  } expected[] = {{"coherent_homodyne", 1200.0, 1.01}, {"squeezed_homodyne", 1140.0, 0.95},
                  {"coherent_heterodyne", 1680.0, NAN}};
  for (const auto& e : expected) {
    for (std::size_t i = 0; i < r.rows.size(); ++i) {
      if (std::get<std::string>(r.rows[i][0]) != e.scheme || std::get<std::string>(r.rows[i][1]) != "numeric")
        continue;
      const double dv = *r.number(i, "dv_sqrtM");
      o.require(std::abs(dv / e.dv - 1.0) <= 0.01, fmt::format("{} dv={:.2f} nm/s", e.scheme, dv));
      if (!std::isnan(e.x)) {
        const double x = *r.number(i, "tau_opt_over_tau_mem");
        o.require(std::abs(x - e.x) <= 0.01, fmt::format("tau_opt/tau_mem={:.4f}", x));
      }
    }
  }
  o.require(dt < 1.0, fmt::format("{:.3g} s", dt));
  return o;
}

// 3. Optimized gain at the reference point and its tolerance to memory noise.
Outcome optimized_gain_vs_noise() {
  Outcome o;
  const SensorParams ref = reference_working_point();
  const SweepResult r = run_fig2(ref, Axis::log("p_n", ref.p_n, 0.1, 21), {0.316});
  const double g_ref = r.number(0, "gain").value_or(NAN);
  o.require(std::abs(g_ref - 0.05) <= 0.005, fmt::format("gain={:.5f} (0.05+-0.005)", g_ref));
  double g_min = INFINITY;
  for (std::size_t i = 0; i < r.rows.size(); ++i) g_min = std::min(g_min, r.number(i, "gain").value_or(-1.0));
  o.require(g_min > 0.0, fmt::format("min gain up to p_n=0.1 is {:.5f}", g_min));

  const auto t0 = Clock::now();
  const SweepResult full = run_fig2(ref, default_fig2_axis(), default_fig2_eta_zero());
  const double dt = seconds_since(t0);
  o.require(dt < 5.0, fmt::format("default grid ({} cells) {:.3g} s", full.rows.size(), dt));
  return o;
}

// 4. Lambert-W optimum against the numeric optimizer.
Outcome analytic_vs_numeric() {
  Outcome o;
  const auto t0 = Clock::now();
  double worst = 0.0;
  for (double c : {0.01, 0.1, 0.27315, 0.5, 0.9}) {
    SensorParams p = reference_working_point();
    p.sigma_phi = 0.0;
    p.sigma_theta = 0.0;
    // Squeezing chosen so that eta(0) (1 - e^{-2r}) / A0 equals c.
    const double a0 = 1.0 + 2.0 * p.p_n + p.v_el;
    p = with_zero_storage_transmission(p, 1.0);
    p.squeeze_r = -0.5 * std::log1p(-c * a0);
    const OptimumReport a = tau_opt_analytic(p);
    const OptimumReport n = tau_opt_numeric(p, ReadoutScheme::SqueezedHomodyne);
    const double ce = c_eff_params(p).c_eff;
    if (std::abs(ce - c) > 1e-12) o.require(false, fmt::format("c_eff setup {} != {}", ce, c));
    worst = std::max(worst, std::abs(n.tau_opt / a.tau_opt - 1.0));
  }
  o.require(worst <= 1e-8, fmt::format("worst relative tau difference {:.3g}", worst));

  SensorParams coh = reference_working_point();
  coh.squeeze_r = 0.0;
  const OptimumReport z = tau_opt_analytic(coh);
  o.require(z.tau_opt == coh.tau_mem, fmt::format("c_eff=0: tau_opt/tau_mem={}", z.tau_opt_over_tau_mem));
  const double dt = seconds_since(t0);
  o.require(dt < 0.1, fmt::format("{:.3g} s", dt));
  return o;
}

// 5. Deterministic oracle grid.
Outcome deterministic_oracle() {
  Outcome o;
  OracleCheckOptions opt;
  opt.include_monte_carlo = false;
  opt.det_tol = 1e-10;
  opt.slope_tol = 1e-6;
  const auto t0 = Clock::now();
  const OracleCheckReport rep = run_oracle_check(reference_working_point(), opt, kSeed);
  const double dt = seconds_since(t0);
  for (std::size_t i = 0; i < rep.table.rows.size(); ++i)
    o.require(*rep.table.number(i, "passed") == 1.0,
              fmt::format("{}={:.3g} (tol {:.0e})", std::get<std::string>(rep.table.rows[i][0]),
                          *rep.table.number(i, "value"), *rep.table.number(i, "tolerance")));
  o.require(rep.table.rows.size() == 3, "3 checks on a 20x20 grid");
  o.require(dt < 5.0, fmt::format("{:.3g} s", dt));
  return o;
}

// 6. Stochastic oracles at full sample sizes.
Outcome stochastic_oracle() {
  Outcome o;
  OracleCheckOptions opt;
  opt.tau_points = opt.r_points = 2;  // deterministic part covered by criterion 5
  opt.mc_samples = 1000000;
  opt.mc_trials = 10000;
  opt.mc_repeats = 10000;
  opt.sigma_band = 3.0;
  opt.crb_band = 0.014;
  const auto t0 = Clock::now();
  const OracleCheckReport rep = run_oracle_check(reference_working_point(), opt, kSeed);
  const double dt = seconds_since(t0);
  for (std::size_t i = 0; i < rep.table.rows.size(); ++i) {
    const std::string name = std::get<std::string>(rep.table.rows[i][0]);
    if (name.rfind("mc_", 0) != 0) continue;
    o.require(*rep.table.number(i, "passed") == 1.0,
              fmt::format("{}={:.6g} expected {:.6g} dev {:.3g} <= {:.3g}", name, *rep.table.number(i, "value"),
                          *rep.table.number(i, "expected"), *rep.table.number(i, "deviation"),
                          *rep.table.number(i, "tolerance")));
  }
  o.require(dt < 60.0, fmt::format("{:.3g} s, seed {}", dt, kSeed));
  return o;
}

// 7. Lambert-W on the branch interval.
Outcome lambert() {
  Outcome o;
  const auto t0 = Clock::now();
  const double lo = -1.0 / std::numbers::e;
  double worst = 0.0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const double x = lo + (0.0 - lo) * i / (n - 1);
    const double w = lambert_w0(x);
    worst = std::max(worst, std::abs(w * std::exp(w) - x));
  }
  o.require(worst <= 1e-13, fmt::format("max residual {:.3g}", worst));
  o.require(lambert_w0(lo) == -1.0 && lambert_w0(0.0) == 0.0, "W(-1/e)=-1, W(0)=0");

  double a = -1.0, b = 0.0;
  for (int i = 0; i < 200; ++i) {
    const double m = 0.5 * (a + b);
    (m * std::exp(m) < -0.2 ? a : b) = m;
  }
  const double diff = std::abs(lambert_w0(-0.2) - 0.5 * (a + b));
  o.require(diff <= 1e-12, fmt::format("|W(-0.2)-bisection|={:.3g}", diff));
  const double dt = seconds_since(t0);
  o.require(dt < 1.0, fmt::format("{:.3g} s", dt));
  return o;
}

// 8. Representative invariants end to end; the unit suites hold the full set.
Outcome properties() {
  Outcome o;
  const SensorParams ref = reference_working_point();
  int checked = 0;
  auto prop = [&](bool ok, const char* name) {
    ++checked;
    if (!ok) o.require(false, name);
  };

  // Monotonicities.
  const SweepResult g = run_fig2(ref, Axis::log("p_n", 1e-4, 1.0, 31), {0.1, 0.316, 1.0});
  bool mono = true;
  for (std::size_t i = 1; i < g.rows.size(); ++i)
    if (i % 31 != 0 && *g.number(i, "gain") > *g.number(i - 1, "gain") + 1e-12) mono = false;
  prop(mono, "gain nonincreasing in p_n");
  bool decay = true;
  for (int i = 1; i < 300; ++i)
    decay = decay && memory_efficiency(i * 1e-6, ref) < memory_efficiency((i - 1) * 1e-6, ref);
  prop(decay, "memory efficiency decreasing");
  SensorParams q = ref;
  q.sigma_phi = 0.0;
  double prev = 0.0;
  bool toward_coherent = true;
  for (double pn = 0.0; pn <= 1.0; pn += 0.05) {
    q.p_n = pn;
    const double x = tau_opt_analytic(q).tau_opt_over_tau_mem;
    toward_coherent = toward_coherent && x >= prev && x <= 1.0;
    prev = x;
  }
  prop(toward_coherent, "tau_opt nondecreasing in p_n, bounded by tau_mem");
  prop(tau_opt_numeric(q, ReadoutScheme::SqueezedHomodyne).tau_opt <=
           tau_opt_numeric(q, ReadoutScheme::CoherentHomodyne).tau_opt,
       "squeezing shifts the optimum earlier");

  // Composition laws.
  GaussianState s = squeeze(displace(GaussianState::vacuum(2), 0, 2.0, 0.5), 1, 0.7, 0.3);
  const auto seq = apply_loss(apply_loss(s, 1, 0.6), 1, 0.5).cov();
  const auto once = apply_loss(s, 1, 0.3).cov();
  prop((seq - once).cwiseAbs().maxCoeff() < 1e-12, "loss composition");
  const auto bs = apply_beamsplitter(apply_phase(apply_beamsplitter(s, 0, 1), 0, 0.4), 0, 1);
  prop(std::abs(bs.mean_photon_number() - s.mean_photon_number()) < 1e-12, "passive photon number");
  const auto noisy = apply_beamsplitter(apply_added_noise(apply_added_noise(GaussianState::vacuum(2), 0, 0.01), 1, 0.01), 0, 1);
  prop(std::abs(noisy.cov()(3, 3) - 1.02) < 1e-14, "dark-port excess 2 p_n");
  prop(variance(50e-6, ref, ReadoutScheme::CoherentHeterodyne).total ==
           variance(50e-6, ref, ReadoutScheme::CoherentHomodyne).total + 1.0,
       "heterodyne penalty one vacuum unit");

  // Round-trip inversions.
  const double eta_min = min_transmission(0.1, ref);
  prop(std::abs(max_memory_noise(0.1, eta_min, ref) - ref.p_n) < 1e-10, "eta_min / p_n_max round trip");
  const double tau = ref.tau_mem * std::sqrt(std::log(ref.zero_storage_transmission() / eta_min));
  prop(std::abs(sensitivity_ratio(tau, ref).gain - 0.1) < 1e-9, "threshold through memory decay");
  prop(parse_params(format_params(ref)) == ref, "config round trip");
  prop(params_from_csv_header(csv_text(run_optimize(ref))) == ref, "output header round trip");
  prop(std::abs(crb(tau, 1e4, ref, ReadoutScheme::SqueezedHomodyne) -
                1.0 / std::sqrt(1e4 * fisher_single(tau, ref, ReadoutScheme::SqueezedHomodyne))) <
           1e-12 * crb(tau, 1e4, ref, ReadoutScheme::SqueezedHomodyne),
       "CRB-Fisher duality");

  // Determinism of seeded output.
  const InterferometerConfig cfg{ref, 0.0, ref.tau_mem};
  const auto m1 = monte_carlo_variance(cfg, 40000, kSeed, 1);
  const auto m2 = monte_carlo_variance(cfg, 40000, kSeed, 3);
  prop(m1.estimate == m2.estimate && m1.std_error == m2.std_error, "MC independent of worker count");
  MonteCarloOptions mco;
  mco.m_trials = 100;
  mco.repeats = 200;
  mco.samples = 20000;
  prop(csv_text(run_montecarlo(ref, mco, kSeed)) == csv_text(run_montecarlo(ref, mco, kSeed)),
       "seeded Monte Carlo output byte-identical");
  prop(csv_text(run_fig3(ref, default_fig3_axis())) == csv_text(run_fig3(ref, default_fig3_axis(), {0, 2})),
       "sweep output independent of worker count");

  o.require(o.pass, fmt::format("{} end-to-end properties; module suites run as separate ctest targets", checked));
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"threshold regression", thresholds},
      {"optimum regression", optima},
      {"optimized gain", optimized_gain_vs_noise},
      {"analytic vs numeric optimum", analytic_vs_numeric},
      {"oracle equivalence (deterministic)", deterministic_oracle},
      {"oracle equivalence (stochastic)", stochastic_oracle},
      {"Lambert-W correctness", lambert},
      {"property suites", properties},
  };
  int failures = 0;
  int id = 0;
  for (const auto& [name, run] : criteria) {
    ++id;
    Outcome out;
    try {
      out = run();
    } catch (const std::exception& e) {
      out.pass = false;
      out.detail = std::string("exception: ") + e.what();
    }
    if (!out.pass) ++failures;
    std::cout << (out.pass ? "PASS" : "FAIL") << ' ' << id << ' ' << name << ": " << out.detail << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
