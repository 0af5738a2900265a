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

#include "memvel/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <fmt/format.h>

#include "memvel/config.hpp"
#include "memvel/estimation.hpp"
#include "memvel/model.hpp"
#include "memvel/optimize.hpp"
#include "memvel/parallel.hpp"

namespace memvel {

namespace {

constexpr double kNmPerM = 1e9;
constexpr const char* kSensitivityUnit = "nm/s*sqrt(trial)";

// Evaluation context carried alongside the parameters of one grid point.
struct PointContext {
  SensorParams params;
  std::optional<double> tau_rel;
  std::optional<double> target_gain;
};

void apply_setting(PointContext& ctx, const std::string& name, double value) {
  SensorParams& p = ctx.params;
  if (name == "tau_rel") {
    ctx.tau_rel = value;
  } else if (name == "target_gain") {
    ctx.target_gain = value;
  } else if (name == "squeezing_db") {
    p.squeeze_r = squeezing_db_to_r(value);
  } else if (name == "eta_zero") {
    p = with_zero_storage_transmission(p, value);
  } else if (name == "n_sigma_phi_sq") {
    if (!(value >= 0.0)) throw std::invalid_argument("n_sigma_phi_sq must be >= 0");
    p.sigma_phi = std::sqrt(value / p.n_photons);
  } else if (name == "eta_ch") { p.eta_ch = value;
  } else if (name == "eta_det") { p.eta_det = value;
  } else if (name == "eta_0") { p.eta_0 = value;
  } else if (name == "tau_mem") { p.tau_mem = value;
  } else if (name == "p_n") { p.p_n = value;
  } else if (name == "v_el") { p.v_el = value;
  } else if (name == "sigma_theta") { p.sigma_theta = value;
  } else if (name == "sigma_phi") { p.sigma_phi = value;
  } else if (name == "n_photons") { p.n_photons = value;
  } else if (name == "lambda_p") { p.lambda_p = value;
  } else if (name == "squeeze_r") { p.squeeze_r = value;
  } else {
    throw std::invalid_argument(fmt::format("unknown sweep parameter '{}'", name));
  }
}

bool known_parameter(std::string_view name) {
  static constexpr std::string_view names[] = {
      "tau_rel", "target_gain", "squeezing_db", "eta_zero", "n_sigma_phi_sq", "eta_ch",
      "eta_det", "eta_0",       "tau_mem",      "p_n",      "v_el",           "sigma_theta",
      "sigma_phi", "n_photons", "lambda_p",     "squeeze_r"};
  return std::find(std::begin(names), std::end(names), name) != std::end(names);
}

std::string axis_unit(const std::string& name) {
  if (name == "tau_rel") return "tau_mem";
  if (name == "tau_mem") return "s";
  if (name == "sigma_theta" || name == "sigma_phi") return "rad";
  if (name == "lambda_p") return "m";
  if (name == "squeezing_db") return "dB";
  return "1";
}

std::string axis_column(const std::string& name) {
  return name == "tau_rel" ? "tau_over_tau_mem" : name;
}

std::string error_code(const std::exception_ptr& e) {
  try {
    std::rethrow_exception(e);
  } catch (const UnreachableGain&) {
    return "unreachable_gain";
  } catch (const NonUnimodalLandscape&) {
    return "non_unimodal";
  } catch (const std::invalid_argument&) {
    return "invalid_params";
  } catch (const std::domain_error&) {
    return "domain_error";
  } catch (...) {
    return "error";
  }
}

bool has_setting(const SweepSpec& spec, std::string_view name) {
  if (spec.axis1.parameter == name) return true;
  if (spec.axis2 && spec.axis2->parameter == name) return true;
  return std::any_of(spec.overrides.begin(), spec.overrides.end(),
                     [&](const auto& o) { return o.first == name; });
}

std::vector<Column> quantity_columns(const SweepSpec& spec) {
  std::vector<Column> cols;
  const bool at_tau = has_setting(spec, "tau_rel");
  switch (spec.quantity) {
    case SweepQuantity::Sensitivity:
      for (auto s : spec.schemes) {
        cols.push_back({fmt::format("dv_sqrtM_{}", short_name(s)), kSensitivityUnit});
        if (!at_tau) cols.push_back({fmt::format("tau_opt_{}", short_name(s)), "tau_mem"});
      }
      break;
    case SweepQuantity::Ratio:
      cols = {{"ratio", "1"}, {"gain", "1"}, {"power_ratio_db", "dB"}};
      break;
    case SweepQuantity::OptimizedGain:
      cols = {{"gain", "1"}, {"ratio", "1"}, {"power_ratio_db", "dB"}};
      break;
    case SweepQuantity::EtaMin:
      cols = {{"eta_min", "1"}};
      break;
    case SweepQuantity::CeffTilde:
      cols = {{"c_eff_tilde", "1"}};
      break;
    case SweepQuantity::VarianceBudget:
      for (auto s : spec.schemes) cols.push_back({fmt::format("variance_{}", short_name(s)), "shot_noise"});
      break;
  }
  return cols;
}

std::vector<double> evaluate(const SweepSpec& spec, const PointContext& ctx) {
  const SensorParams& p = ctx.params;
  p.validate();
  std::vector<double> out;
  const double tau = ctx.tau_rel.value_or(1.0) * p.tau_mem;
  switch (spec.quantity) {
    case SweepQuantity::Sensitivity:
      for (auto s : spec.schemes) {
        if (ctx.tau_rel) {
          out.push_back(shot_normalized_sensitivity(tau, p, s) * kNmPerM);
        } else {
          const OptimumReport o = tau_opt_numeric(p, s);
          out.push_back(o.delta_v_opt_sqrtM * kNmPerM);
          out.push_back(o.tau_opt_over_tau_mem);
        }
      }
      break;
    case SweepQuantity::Ratio: {
      const GainReport g = sensitivity_ratio(tau, p);
      out = {g.ratio, g.gain, g.power_ratio_db};
      break;
    }
    case SweepQuantity::OptimizedGain: {
      const GainReport g = optimized_gain(p, spec.gain_baseline);
      out = {g.gain, g.ratio, g.power_ratio_db};
      break;
    }
    case SweepQuantity::EtaMin:
      out = {min_transmission(ctx.target_gain.value_or(0.1), p)};
      break;
    case SweepQuantity::CeffTilde:
      out = {c_eff_tilde(p.eta_0, p.squeeze_r, p.sigma_theta, p.p_n, p.v_el,
                         p.n_photons * p.sigma_phi * p.sigma_phi)};
      break;
    case SweepQuantity::VarianceBudget:
      for (auto s : spec.schemes) out.push_back(variance(ctx.tau_rel.value_or(0.0) * p.tau_mem, p, s).total);
      break;
  }
  return out;
}

std::string quantity_name(SweepQuantity q) {
  switch (q) {
    case SweepQuantity::Sensitivity: return "sensitivity";
    case SweepQuantity::Ratio: return "ratio";
    case SweepQuantity::OptimizedGain: return "optimized_gain";
    case SweepQuantity::EtaMin: return "eta_min";
    case SweepQuantity::CeffTilde: return "c_eff_tilde";
    case SweepQuantity::VarianceBudget: return "variance_budget";
  }
  return "unknown";
}

Cell num(double x) { return Cell{x}; }

}  // namespace

// ---------------------------------------------------------------------------

void add_run_header(SweepResult& r, std::string_view command, const SensorParams& p,
                    std::uint64_t seed) {
  r.add_meta("tool", std::string(kToolVersion));
  r.add_meta("command", std::string(command));
  r.add_meta("seed", std::to_string(seed));
  std::istringstream lines(format_params(p));
  for (std::string line; std::getline(lines, line);) r.add_meta("param", line);
}

Axis Axis::linear(std::string name, double min, double max, int points) {
  return {std::move(name), AxisScale::Linear, min, max, points, {}};
}

Axis Axis::log(std::string name, double min, double max, int points) {
  return {std::move(name), AxisScale::Log, min, max, points, {}};
}

Axis Axis::list(std::string name, std::vector<double> values) {
  Axis a{std::move(name), AxisScale::List, 0.0, 0.0, static_cast<int>(values.size()), std::move(values)};
  if (!a.values.empty()) {
    a.min = *std::min_element(a.values.begin(), a.values.end());
    a.max = *std::max_element(a.values.begin(), a.values.end());
  }
  return a;
}

void Axis::validate() const {
  if (scale == AxisScale::List) {
    if (values.empty()) throw std::invalid_argument(fmt::format("axis {}: empty value list", parameter));
    return;
  }
  if (points < 2) throw std::invalid_argument(fmt::format("axis {}: needs at least 2 points", parameter));
  if (!(min < max)) throw std::invalid_argument(fmt::format("axis {}: min must be < max", parameter));
  if (scale == AxisScale::Log && !(min > 0.0))
    throw std::invalid_argument(fmt::format("axis {}: log scale needs min > 0", parameter));
}

std::vector<double> Axis::grid() const {
  validate();
  if (scale == AxisScale::List) return values;
  std::vector<double> g(points);
  for (int i = 0; i < points; ++i) {
    const double t = static_cast<double>(i) / (points - 1);
    g[i] = scale == AxisScale::Linear ? min + t * (max - min)
                                      : std::exp(std::log(min) + t * (std::log(max) - std::log(min)));
  }
  g.front() = min;
  g.back() = max;
  return g;
}

SweepResult run_sweep(const SweepSpec& spec, int jobs) {
  for (const Axis* a : {&spec.axis1, spec.axis2 ? &*spec.axis2 : nullptr}) {
    if (!a) continue;
    a->validate();
    if (!known_parameter(a->parameter))
      throw std::invalid_argument(fmt::format("unknown sweep parameter '{}'", a->parameter));
  }
  for (const auto& [name, _] : spec.overrides)
    if (!known_parameter(name)) throw std::invalid_argument(fmt::format("unknown override '{}'", name));

  const std::vector<double> g1 = spec.axis1.grid();
  const std::vector<double> g2 = spec.axis2 ? spec.axis2->grid() : std::vector<double>{};
  const std::size_t n2 = spec.axis2 ? g2.size() : 1;

  SweepResult r;
  r.add_meta("quantity", quantity_name(spec.quantity));
  if (spec.quantity == SweepQuantity::OptimizedGain) r.add_meta("gain_baseline", std::string(to_string(spec.gain_baseline)));
  for (const auto& [name, value] : spec.overrides) r.add_meta("override", fmt::format("{} = {}", name, format_exact(value)));

  auto add_axis_columns = [&](const Axis& a) {
    r.columns.push_back({axis_column(a.parameter), axis_unit(a.parameter)});
    if (a.parameter == "tau_rel") r.columns.push_back({"tau", "s"});
  };
  add_axis_columns(spec.axis1);
  if (spec.axis2) add_axis_columns(*spec.axis2);
  const std::vector<Column> qcols = quantity_columns(spec);
  r.columns.insert(r.columns.end(), qcols.begin(), qcols.end());
  r.columns.push_back({"error", "-"});

  r.rows.resize(g1.size() * n2);
  parallel_for(r.rows.size(), jobs, [&](std::size_t idx) {
    const std::size_t i = idx / n2, j = idx % n2;
    std::vector<Cell> row;
    PointContext ctx{spec.base, std::nullopt, std::nullopt};
    std::string err;
    std::vector<double> values;
    try {
      for (const auto& [name, value] : spec.overrides) apply_setting(ctx, name, value);
      apply_setting(ctx, spec.axis1.parameter, g1[i]);
      if (spec.axis2) apply_setting(ctx, spec.axis2->parameter, g2[j]);
      values = evaluate(spec, ctx);
    } catch (...) {
      err = error_code(std::current_exception());
      values.clear();
    }
    auto push_axis = [&](const Axis& a, double v) {
      row.push_back(num(v));
      if (a.parameter == "tau_rel") row.push_back(num(v * ctx.params.tau_mem));
    };
    push_axis(spec.axis1, g1[i]);
    if (spec.axis2) push_axis(*spec.axis2, g2[j]);
    for (std::size_t k = 0; k < qcols.size(); ++k)
      row.push_back(k < values.size() && std::isfinite(values[k]) ? num(values[k]) : Cell{});
    if (err.empty() && values.size() == qcols.size() &&
        std::any_of(values.begin(), values.end(), [](double v) { return !std::isfinite(v); }))
      err = "non_finite";
    row.push_back(err);
    r.rows[idx] = std::move(row);
  });
  return r;
}

// ---------------------------------------------------------------------------

SweepResult run_budget(const SensorParams& params, double tau_rel) {
  params.validate();
  const double tau = tau_rel * params.tau_mem;
  SweepResult r;
  add_run_header(r, "budget", params, 0);
  r.add_meta("tau_over_tau_mem", format_exact(tau_rel));
  r.columns = {{"scheme", "-"},           {"tau", "s"},
               {"vacuum_unit", "shot_noise"}, {"squeezing_term", "shot_noise"},
               {"memory_term", "shot_noise"}, {"electronic_term", "shot_noise"},
               {"phase_term", "shot_noise"},  {"heterodyne_extra", "shot_noise"},
               {"total", "shot_noise"}};
  for (auto s : kAllSchemes) {
    const VarianceBreakdown b = variance(tau, params, s);
    r.rows.push_back({std::string(to_string(s)), num(tau), num(b.vacuum_unit), num(b.squeezing_term),
                      num(b.memory_term), num(b.electronic_term), num(b.phase_term),
                      num(b.heterodyne_extra), num(b.total)});
  }
  return r;
}

std::string_view to_string(GainBaseline baseline) {
  return baseline == GainBaseline::SharedTau ? "shared_tau" : "independent";
}

std::optional<GainBaseline> parse_gain_baseline(std::string_view text) {
  if (text == "independent") return GainBaseline::Independent;
  if (text == "shared_tau") return GainBaseline::SharedTau;
  return std::nullopt;
}

Axis default_fig3_axis() { return Axis::log("tau_rel", 0.05, 3.0, 241); }

SweepResult run_fig3(const SensorParams& params, const Axis& tau_axis, const CommonOptions& opt) {
  if (tau_axis.parameter != "tau_rel") throw std::invalid_argument("sensitivity axis must be tau_rel");
  SweepSpec spec{params, tau_axis, std::nullopt, SweepQuantity::Sensitivity, {}, {}};
  spec.schemes.assign(std::begin(kAllSchemes), std::end(kAllSchemes));
  SweepResult body = run_sweep(spec, opt.jobs);

  SweepResult r;
  add_run_header(r, "sensitivity", params, opt.seed);
  r.metadata.insert(r.metadata.end(), body.metadata.begin(), body.metadata.end());
  for (auto s : kAllSchemes) {
    const OptimumReport o = tau_opt_numeric(params, s);
    r.add_meta(fmt::format("optimum_{}", short_name(s)),
               fmt::format("tau_over_tau_mem={:.12g} tau_s={:.12g} dv_sqrtM_nm_s={:.12g}",
                           o.tau_opt_over_tau_mem, o.tau_opt, o.delta_v_opt_sqrtM * kNmPerM));
  }
  r.columns = std::move(body.columns);
  r.rows = std::move(body.rows);
  return r;
}

Axis default_fig2_axis() { return Axis::log("p_n", 1e-4, 1.0, 61); }
std::vector<double> default_fig2_eta_zero() { return {0.1, 0.2, 0.316, 0.5, 0.75, 1.0}; }

SweepResult run_fig2(const SensorParams& params, const Axis& pn_axis,
                     const std::vector<double>& eta_zero_list,
                     const std::vector<double>& reference_lines, const CommonOptions& opt) {
  if (pn_axis.parameter != "p_n") throw std::invalid_argument("gain-vs-pn axis must be p_n");
  SweepSpec spec{params, Axis::list("eta_zero", eta_zero_list), pn_axis, SweepQuantity::OptimizedGain, {}, {}};
  spec.gain_baseline = opt.gain_baseline;
  SweepResult body = run_sweep(spec, opt.jobs);
  SweepResult r;
  add_run_header(r, "gain-vs-pn", params, opt.seed);
  r.metadata.insert(r.metadata.end(), body.metadata.begin(), body.metadata.end());
  for (double x : reference_lines) r.add_meta("reference_line_p_n", format_exact(x));
  r.columns = std::move(body.columns);
  r.rows = std::move(body.rows);
  return r;
}

Axis default_fig4_eta_axis() { return Axis::linear("eta_zero", 0.025, 1.0, 41); }
Axis default_fig4_db_axis() { return Axis::linear("squeezing_db", 0.0, 20.0, 41); }

SweepResult run_fig4(const SensorParams& params, const Axis& eta_zero_axis, const Axis& db_axis,
                     double reference_eta_zero, double reference_db, const CommonOptions& opt) {
  if (eta_zero_axis.parameter != "eta_zero" || db_axis.parameter != "squeezing_db")
    throw std::invalid_argument("gain-map axes must be eta_zero and squeezing_db");
  SweepSpec spec{params, eta_zero_axis, db_axis, SweepQuantity::OptimizedGain, {}, {}};
  spec.gain_baseline = opt.gain_baseline;
  SweepResult body = run_sweep(spec, opt.jobs);

  SweepResult r;
  add_run_header(r, "gain-map", params, opt.seed);
  r.metadata.insert(r.metadata.end(), body.metadata.begin(), body.metadata.end());
  SensorParams ref = with_zero_storage_transmission(params, reference_eta_zero);
  ref.squeeze_r = squeezing_db_to_r(reference_db);
  r.add_meta("reference_eta_zero", format_exact(reference_eta_zero));
  r.add_meta("reference_squeezing_db", format_exact(reference_db));
  r.add_meta("reference_gain", fmt::format("{:.12g}", optimized_gain(ref, opt.gain_baseline).gain));

  // Mark the grid cell nearest the reference point.
  const auto g1 = eta_zero_axis.grid(), g2 = db_axis.grid();
  auto nearest = [](const std::vector<double>& g, double x) {
    return static_cast<std::size_t>(std::min_element(g.begin(), g.end(), [x](double a, double b) {
                                      return std::abs(a - x) < std::abs(b - x);
                                    }) - g.begin());
  };
  const std::size_t ref_idx = nearest(g1, reference_eta_zero) * g2.size() + nearest(g2, reference_db);
  r.columns = std::move(body.columns);
  r.columns.insert(r.columns.end() - 1, Column{"reference", "1"});
  r.rows = std::move(body.rows);
  for (std::size_t k = 0; k < r.rows.size(); ++k)
    r.rows[k].insert(r.rows[k].end() - 1, num(k == ref_idx ? 1.0 : 0.0));
  return r;
}

FigA1Result run_figA1(const SensorParams& params, const std::vector<double>& c_eff_list,
                      const Axis& x_axis, const Axis& eta0_axis, const Axis& db_axis,
                      const CommonOptions& opt) {
  FigA1Result out;

  SweepResult& a = out.shape;
  add_run_header(a, "ceff", params, opt.seed);
  a.add_meta("panel", "a");
  a.columns.push_back({"x", "tau_mem"});
  for (double c : c_eff_list) {
    if (!(c < 1.0)) throw std::invalid_argument("c_eff values must be < 1");
    a.columns.push_back({fmt::format("objective_c{}", format_exact(c)), "1"});
    const double xo = optimal_storage_ratio(c);
    a.add_meta(fmt::format("optimum_c{}", format_exact(c)),
               fmt::format("x_opt={:.12g} objective={:.12g}", xo, normalized_objective(xo, c)));
  }
  for (double x : x_axis.grid()) {
    std::vector<Cell> row{num(x)};
    for (double c : c_eff_list) row.push_back(num(normalized_objective(x, c)));
    a.rows.push_back(std::move(row));
  }

  SweepSpec spec{params, eta0_axis, db_axis, SweepQuantity::CeffTilde, {}, {}};
  spec.overrides = {{"p_n", 0.01}, {"v_el", 0.02}, {"n_sigma_phi_sq", 0.02}};
  SweepResult body = run_sweep(spec, opt.jobs);
  SweepResult& b = out.map;
  add_run_header(b, "ceff", params, opt.seed);
  b.add_meta("panel", "b");
  b.metadata.insert(b.metadata.end(), body.metadata.begin(), body.metadata.end());
  b.columns = std::move(body.columns);
  b.rows = std::move(body.rows);
  return out;
}

SweepResult run_threshold(const SensorParams& params, const std::vector<double>& gains,
                          std::optional<double> eta_for_noise_budget) {
  params.validate();
  const double eta = eta_for_noise_budget.value_or(params.zero_storage_transmission());
  SweepResult r;
  add_run_header(r, "threshold", params, 0);
  r.add_meta("noise_budget_eta", format_exact(eta));
  r.add_meta("max_gain_unit_transmission", fmt::format("{:.12g}", gain_at_transmission(1.0, params)));
  r.columns = {{"target_gain", "1"}, {"eta_min", "1"}, {"p_n_max", "1"}, {"error", "-"}};
  for (double a : gains) {
    std::vector<Cell> row{num(a)};
    std::string err;
    try {
      row.push_back(num(min_transmission(a, params)));
    } catch (const std::exception&) {
      err = error_code(std::current_exception());
      row.push_back(Cell{});
    }
    try {
      row.push_back(num(max_memory_noise(a, eta, params)));
    } catch (const std::exception&) {
      if (err.empty()) err = error_code(std::current_exception());
      row.push_back(Cell{});
    }
    row.push_back(err);
    r.rows.push_back(std::move(row));
  }
  return r;
}

SweepResult run_optimize(const SensorParams& params) {
  params.validate();
  SweepResult r;
  add_run_header(r, "optimize", params, 0);
  r.columns = {{"scheme", "-"},
               {"method", "-"},
               {"tau_opt_over_tau_mem", "tau_mem"},
               {"tau_opt", "s"},
               {"dv_sqrtM", kSensitivityUnit},
               {"c_eff", "1"}};
  for (auto s : kAllSchemes) {
    const OptimumReport num_opt = tau_opt_numeric(params, s);
    const OptimumReport ana_opt = tau_opt_analytic(params, s);
    const double c = c_eff_params(params, s).c_eff;
    for (const OptimumReport* o : {&num_opt, &ana_opt})
      r.rows.push_back({std::string(to_string(s)), std::string(to_string(o->method)),
                        num(o->tau_opt_over_tau_mem), num(o->tau_opt),
                        num(o->delta_v_opt_sqrtM * kNmPerM), num(c)});
  }
  const GainReport g = optimized_gain(params);
  r.add_meta("optimized_gain", fmt::format("{:.12g}", g.gain));
  r.add_meta("optimized_power_ratio_db", fmt::format("{:.12g}", g.power_ratio_db));
  r.add_meta("analytic_note", "analytic rows neglect phase noise");
  return r;
}

}  // namespace memvel
