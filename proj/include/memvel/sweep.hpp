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

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "memvel/optimize.hpp"
#include "memvel/sensor_params.hpp"

namespace memvel {

inline constexpr std::string_view kToolVersion = "memvel 1.0.0";

// ---------------------------------------------------------------------------
// Tabulated results

using Cell = std::variant<std::monostate, double, std::string>;

struct Column {
  std::string name;
  std::string unit;  // "1" for dimensionless, "-" for labels
};

struct SweepResult {
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<Column> columns;
  std::vector<std::vector<Cell>> rows;

  void add_meta(std::string key, std::string value) {
    metadata.emplace_back(std::move(key), std::move(value));
  }
  /// Index of a column by name; throws std::out_of_range if absent.
  std::size_t column(std::string_view name) const;
  /// Numeric cell value or nullopt for empty/label cells.
  std::optional<double> number(std::size_t row, std::string_view col) const;
};

/// CSV with '#'-prefixed metadata lines, a header row of `name [unit]`
/// entries and one line per row. Numbers use 12 significant digits; empty
/// cells mark failed points.
void write_csv(std::ostream& os, const SweepResult& r);
void write_json(std::ostream& os, const SweepResult& r);

/// Parses the echoed `# param ...` header lines of a CSV back into params.
SensorParams params_from_csv_header(std::string_view csv);

// ---------------------------------------------------------------------------
// Generic sweeps

enum class AxisScale { Linear, Log, List };

struct Axis {
  std::string parameter;  // SensorParams field or derived axis name
  AxisScale scale = AxisScale::Linear;
  double min = 0.0;
  double max = 1.0;
  int points = 2;
  std::vector<double> values;  // used by AxisScale::List

  static Axis linear(std::string name, double min, double max, int points);
  static Axis log(std::string name, double min, double max, int points);
  static Axis list(std::string name, std::vector<double> values);

  void validate() const;
  std::vector<double> grid() const;
};

enum class SweepQuantity { Sensitivity, Ratio, OptimizedGain, EtaMin, CeffTilde, VarianceBudget };

/// Axis and override names besides the scalar SensorParams fields:
///   squeezing_db    sets squeeze_r from dB
///   eta_zero        sets eta(0) = eta_ch eta_det eta_0
///   n_sigma_phi_sq  sets sigma_phi = sqrt(value / n_photons)
///   tau_rel         storage time in units of tau_mem (evaluation point)
///   target_gain     gain A for eta_min
struct SweepSpec {
  SensorParams base;
  Axis axis1;
  std::optional<Axis> axis2;
  SweepQuantity quantity = SweepQuantity::Sensitivity;
  std::vector<ReadoutScheme> schemes{std::begin(kAllSchemes), std::end(kAllSchemes)};
  std::vector<std::pair<std::string, double>> overrides;
  GainBaseline gain_baseline = GainBaseline::Independent;  // OptimizedGain only
};

/// Evaluates every grid point (in parallel over `jobs` threads) and gathers
/// rows in axis order: axis1 outer, axis2 inner. Failed points get empty
/// value cells and an error code.
SweepResult run_sweep(const SweepSpec& spec, int jobs = 1);

// ---------------------------------------------------------------------------
// Figure and report drivers behind the CLI subcommands

/// Standard metadata: tool version, command, seed and the echoed parameters.
void add_run_header(SweepResult& r, std::string_view command, const SensorParams& p,
                    std::uint64_t seed);

struct CommonOptions {
  std::uint64_t seed = 0;
  int jobs = 1;
  GainBaseline gain_baseline = GainBaseline::Independent;
};

std::string_view to_string(GainBaseline baseline);
std::optional<GainBaseline> parse_gain_baseline(std::string_view text);

/// Five-term variance budget per scheme at storage time tau_rel * tau_mem.
SweepResult run_budget(const SensorParams& params, double tau_rel);

/// Sensitivity versus storage time for all schemes plus the numeric optima
/// (reported as metadata).
SweepResult run_fig3(const SensorParams& params, const Axis& tau_axis, const CommonOptions& opt = {});
Axis default_fig3_axis();

/// Optimized gain versus p_n for each eta(0) in the list.
SweepResult run_fig2(const SensorParams& params, const Axis& pn_axis,
                     const std::vector<double>& eta_zero_list,
                     const std::vector<double>& reference_lines = {},
                     const CommonOptions& opt = {});
Axis default_fig2_axis();
std::vector<double> default_fig2_eta_zero();

/// Optimized gain over (eta(0), squeezing dB), marking the cell nearest the
/// reference point.
SweepResult run_fig4(const SensorParams& params, const Axis& eta_zero_axis, const Axis& db_axis,
                     double reference_eta_zero = 0.316, double reference_db = 10.0,
                     const CommonOptions& opt = {});
Axis default_fig4_eta_axis();
Axis default_fig4_db_axis();

struct FigA1Result {
  SweepResult shape;  // normalized objective versus x for several c_eff
  SweepResult map;    // c_eff_tilde over (eta_0, squeezing dB)
};
FigA1Result run_figA1(const SensorParams& params, const std::vector<double>& c_eff_list = {0.0, 0.25, 0.5, 0.75, 0.9},
                      const Axis& x_axis = Axis::log("x", 0.05, 3.0, 241),
                      const Axis& eta0_axis = Axis::linear("eta_0", 0.05, 1.0, 41),
                      const Axis& db_axis = Axis::linear("squeezing_db", 1.0, 15.0, 41),
                      const CommonOptions& opt = {});

/// eta_min(A) and the memory-noise budget at eta(0) for each target gain.
SweepResult run_threshold(const SensorParams& params, const std::vector<double>& gains,
                          std::optional<double> eta_for_noise_budget = std::nullopt);

/// Numeric and analytic optima for all schemes plus the optimized gain.
SweepResult run_optimize(const SensorParams& params);

struct MonteCarloOptions {
  double tau_rel = 1.0;
  std::uint64_t m_trials = 10000;
  std::uint64_t repeats = 10000;
  std::uint64_t samples = 1000000;
  double v_true = 1e-6;
  int jobs = 1;
};

/// CRB attainment per scheme and jitter-averaged variance versus closed form.
SweepResult run_montecarlo(const SensorParams& params, const MonteCarloOptions& mc, std::uint64_t seed);

struct OracleCheckOptions {
  int tau_points = 20;
  int r_points = 20;
  double tau_rel_max = 3.0;
  double db_max = 15.0;
  double det_tol = 1e-10;
  double slope_tol = 1e-6;
  std::uint64_t mc_samples = 1000000;
  std::uint64_t mc_trials = 10000;
  std::uint64_t mc_repeats = 10000;
  double sigma_band = 3.0;
  double crb_band = 0.014;
  bool include_monte_carlo = true;
  int jobs = 1;
};

struct OracleCheckReport {
  SweepResult table;  // one row per check
  bool passed = true;
};

/// Closed-form versus covariance-simulator equivalence and Monte Carlo suites.
OracleCheckReport run_oracle_check(const SensorParams& params, const OracleCheckOptions& o,
                                   std::uint64_t seed);

}  // namespace memvel
