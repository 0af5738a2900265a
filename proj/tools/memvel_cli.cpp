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

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "memvel/config.hpp"
#include "memvel/sweep.hpp"

namespace {

using namespace memvel;

constexpr int kExitUsage = 1;
constexpr int kExitVerification = 2;

struct Common {
  std::string params_file;
  std::string out;
  std::string format = "csv";
  std::uint64_t seed = 0;
  int jobs = 1;
  std::string baseline = "independent";

  SensorParams params() const {
    return params_file.empty() ? reference_working_point() : load_params(params_file);
  }
  CommonOptions options() const { return {seed, jobs, *parse_gain_baseline(baseline)}; }
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--params", c.params_file, "Parameter file (default: reference working point)")
      ->check(CLI::ExistingFile);
  cmd->add_option("--out", c.out, "Output file (default: stdout)");
  cmd->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--seed", c.seed, "Master RNG seed");
  cmd->add_option("--jobs", c.jobs, "Worker threads")->check(CLI::PositiveNumber);
}

void add_baseline(CLI::App* cmd, Common& c) {
  cmd->add_option("--baseline", c.baseline, "Coherent reference: own optimum or the squeezed optimum's tau")
      ->check(CLI::IsMember({"independent", "shared_tau"}));
}

void emit(const SweepResult& r, const Common& c, const std::string& path) {
  auto write = [&](std::ostream& os) {
    if (c.format == "json")
      write_json(os, r);
    else
      write_csv(os, r);
  };
  if (path.empty()) {
    write(std::cout);
    return;
  }
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path);
  write(f);
}

std::string panel_path(const std::string& out, const char* suffix) {
  if (out.empty()) return {};
  std::filesystem::path p(out);
  const std::string ext = p.extension().string();
  p.replace_extension();
  return p.string() + suffix + ext;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Memory-assisted squeezed-light velocimetry: noise budget, bounds and optimization"};
  app.require_subcommand(1);
  Common common;

  auto* budget = app.add_subcommand("budget", "Five-term variance budget per readout scheme");
  double budget_tau_rel = 0.0;
  budget->add_option("--tau-rel", budget_tau_rel, "Storage time in units of tau_mem");
  add_common(budget, common);

  auto* sens = app.add_subcommand("sensitivity", "Shot-normalized sensitivity versus storage time");
  Axis tau_axis = default_fig3_axis();
  sens->add_option("--tau-min", tau_axis.min, "Smallest tau/tau_mem");
  sens->add_option("--tau-max", tau_axis.max, "Largest tau/tau_mem");
  sens->add_option("--tau-points", tau_axis.points, "Log-spaced grid points");
  add_common(sens, common);

  auto* fig2 = app.add_subcommand("gain-vs-pn", "Optimized gain versus memory noise floor");
  Axis pn_axis = default_fig2_axis();
  std::vector<double> eta0_list = default_fig2_eta_zero();
  std::vector<double> ref_lines;
  fig2->add_option("--pn-min", pn_axis.min);
  fig2->add_option("--pn-max", pn_axis.max);
  fig2->add_option("--pn-points", pn_axis.points);
  fig2->add_option("--eta0", eta0_list, "Zero-storage transmissions eta(0)")->delimiter(',');
  fig2->add_option("--ref-line", ref_lines, "Reference p_n values recorded as metadata")->delimiter(',');
  add_common(fig2, common);
  add_baseline(fig2, common);

  auto* fig4 = app.add_subcommand("gain-map", "Optimized gain over eta(0) and squeezing");
  Axis eta_axis = default_fig4_eta_axis();
  Axis db_axis = default_fig4_db_axis();
  fig4->add_option("--eta0-min", eta_axis.min);
  fig4->add_option("--eta0-max", eta_axis.max);
  fig4->add_option("--eta0-points", eta_axis.points);
  fig4->add_option("--db-min", db_axis.min);
  fig4->add_option("--db-max", db_axis.max);
  fig4->add_option("--db-points", db_axis.points);
  add_common(fig4, common);
  add_baseline(fig4, common);

  auto* ceff = app.add_subcommand("ceff", "Shape curves and c_eff_tilde map (two tables)");
  std::vector<double> ceff_list{0.0, 0.25, 0.5, 0.75, 0.9};
  ceff->add_option("--ceff", ceff_list, "c_eff values for the shape curves")->delimiter(',');
  add_common(ceff, common);

  auto* thr = app.add_subcommand("threshold", "Minimum transmission and memory-noise budget");
  std::vector<double> gains{0.05, 0.10, 0.15, 0.20, 0.25, 0.30};
  std::optional<double> budget_eta;
  thr->add_option("--gain", gains, "Target gains A")->delimiter(',');
  thr->add_option("--eta", budget_eta, "Transmission for the p_n budget (default eta(0))");
  add_common(thr, common);

  auto* opt = app.add_subcommand("optimize", "Optimum storage times and sensitivities");
  add_common(opt, common);

  auto* mc = app.add_subcommand("montecarlo", "Monte Carlo CRB attainment and variance check");
  MonteCarloOptions mco;
  mc->add_option("--tau-rel", mco.tau_rel);
  mc->add_option("--trials", mco.m_trials, "Trials M per estimate");
  mc->add_option("--repeats", mco.repeats);
  mc->add_option("--samples", mco.samples, "Jitter samples for the variance estimate");
  mc->add_option("--v", mco.v_true, "True velocity [m/s]");
  add_common(mc, common);

  auto* oracle = app.add_subcommand("oracle-check", "Closed forms versus covariance simulator");
  OracleCheckOptions oco;
  bool no_mc = false;
  oracle->add_option("--tau-points", oco.tau_points);
  oracle->add_option("--r-points", oco.r_points);
  oracle->add_option("--samples", oco.mc_samples);
  oracle->add_option("--trials", oco.mc_trials);
  oracle->add_option("--repeats", oco.mc_repeats);
  oracle->add_flag("--no-mc", no_mc, "Skip the Monte Carlo suites");
  add_common(oracle, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    const SensorParams params = common.params();
    const CommonOptions co = common.options();
    if (*budget) {
      emit(run_budget(params, budget_tau_rel), common, common.out);
    } else if (*sens) {
      emit(run_fig3(params, tau_axis, co), common, common.out);
    } else if (*fig2) {
      emit(run_fig2(params, pn_axis, eta0_list, ref_lines, co), common, common.out);
    } else if (*fig4) {
      emit(run_fig4(params, eta_axis, db_axis, 0.316, 10.0, co), common, common.out);
    } else if (*ceff) {
      const FigA1Result r = run_figA1(params, ceff_list, Axis::log("x", 0.05, 3.0, 241),
                                      Axis::linear("eta_0", 0.05, 1.0, 41),
                                      Axis::linear("squeezing_db", 1.0, 15.0, 41), co);
      emit(r.shape, common, panel_path(common.out, "_a"));
      emit(r.map, common, panel_path(common.out, "_b"));
    } else if (*thr) {
      emit(run_threshold(params, gains, budget_eta), common, common.out);
    } else if (*opt) {
      emit(run_optimize(params), common, common.out);
    } else if (*mc) {
      mco.jobs = common.jobs;
      emit(run_montecarlo(params, mco, common.seed), common, common.out);
    } else if (*oracle) {
      oco.include_monte_carlo = !no_mc;
      oco.jobs = common.jobs;
      const OracleCheckReport rep = run_oracle_check(params, oco, common.seed);
      emit(rep.table, common, common.out);
      if (!rep.passed) {
        std::cerr << "oracle-check: tolerance breach\n";
        return kExitVerification;
      }
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return 0;
}
