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

#include "memvel/config.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

#include <fmt/format.h>

namespace memvel {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// value [unit] = value * num / den; dividing by exact powers of ten keeps
// "100us" equal to the literal 1e-4.
struct Scale {
  double num = 1.0;
  double den = 1.0;
};
using UnitTable = std::map<std::string_view, Scale>;

const UnitTable& units_for(Quantity kind) {
  static const UnitTable none{{"", {}}};
  static const UnitTable time{{"", {}},         {"s", {}},          {"ms", {1.0, 1e3}},
                              {"us", {1.0, 1e6}}, {"µs", {1.0, 1e6}}, {"ns", {1.0, 1e9}}};
  static const UnitTable length{{"", {}},         {"m", {}},          {"mm", {1.0, 1e3}},
                                {"um", {1.0, 1e6}}, {"µm", {1.0, 1e6}}, {"nm", {1.0, 1e9}}};
  static const UnitTable angle{{"", {}},           {"rad", {}},          {"mrad", {1.0, 1e3}},
                               {"urad", {1.0, 1e6}}, {"µrad", {1.0, 1e6}}, {"deg", {std::numbers::pi, 180.0}}};
  static const UnitTable squeezing{{"", {}}, {"dB", {}}, {"db", {}}};
  switch (kind) {
    case Quantity::Time: return time;
    case Quantity::Length: return length;
    case Quantity::Angle: return angle;
    case Quantity::Squeezing: return squeezing;
    case Quantity::Dimensionless: break;
  }
  return none;
}

struct KeySpec {
  Quantity kind;
  double SensorParams::*field;
};

const std::map<std::string_view, KeySpec>& scalar_keys() {
  static const std::map<std::string_view, KeySpec> keys{
      {"eta_ch", {Quantity::Dimensionless, &SensorParams::eta_ch}},
      {"eta_det", {Quantity::Dimensionless, &SensorParams::eta_det}},
      {"eta_0", {Quantity::Dimensionless, &SensorParams::eta_0}},
      {"tau_mem", {Quantity::Time, &SensorParams::tau_mem}},
      {"p_n", {Quantity::Dimensionless, &SensorParams::p_n}},
      {"v_el", {Quantity::Dimensionless, &SensorParams::v_el}},
      {"sigma_theta", {Quantity::Angle, &SensorParams::sigma_theta}},
      {"sigma_phi", {Quantity::Angle, &SensorParams::sigma_phi}},
      {"n_photons", {Quantity::Dimensionless, &SensorParams::n_photons}},
      {"lambda_p", {Quantity::Length, &SensorParams::lambda_p}},
      {"squeeze_r", {Quantity::Dimensionless, &SensorParams::squeeze_r}},
  };
  return keys;
}

NoiseTable parse_table(std::string_view text) {
  std::vector<NoiseTable::Knot> knots;
  while (!text.empty()) {
    const auto comma = text.find(',');
    const std::string_view item = trim(text.substr(0, comma));
    text = comma == std::string_view::npos ? std::string_view{} : text.substr(comma + 1);
    if (item.empty()) continue;
    const auto colon = item.find(':');
    if (colon == std::string_view::npos)
      throw std::invalid_argument("p_n_table entries must be tau:p_n");
    knots.push_back({parse_quantity(item.substr(0, colon), Quantity::Time),
                     parse_quantity(item.substr(colon + 1), Quantity::Dimensionless)});
  }
  return NoiseTable(std::move(knots));
}

}  // namespace

ConfigError::ConfigError(int line, std::string field, const std::string& message)
    : std::runtime_error(line > 0 ? fmt::format("line {}: {}: {}", line, field, message)
                                  : fmt::format("{}: {}", field, message)),
      line_(line),
      field_(std::move(field)) {}

double parse_quantity(std::string_view text, Quantity kind) {
  text = trim(text);
  double value = 0.0;
  const char* begin = text.data();
  const char* end = text.data() + text.size();
  if (begin != end && *begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr == begin)
    throw std::invalid_argument(fmt::format("'{}' is not a number", text));
  const std::string_view unit = trim(std::string_view(ptr, static_cast<std::size_t>(end - ptr)));
  const auto& table = units_for(kind);
  const auto it = table.find(unit);
  if (it == table.end()) throw std::invalid_argument(fmt::format("unknown unit '{}'", unit));
  return value * it->second.num / it->second.den;
}

SensorParams parse_params(std::string_view text) {
  SensorParams p;
  std::optional<double> eta_zero;
  int line_no = 0;
  bool first_key = true;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError(line_no, std::string(line), "expected key = value");
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    if (value.empty()) throw ConfigError(line_no, key, "missing value");

    try {
      if (key == "preset") {
        if (!first_key) throw std::invalid_argument("preset must be the first key");
        if (value != "reference") throw std::invalid_argument(fmt::format("unknown preset '{}'", value));
        p = reference_working_point();
      } else if (key == "squeezing") {
        p.squeeze_r = squeezing_db_to_r(parse_quantity(value, Quantity::Squeezing));
      } else if (key == "eta_zero") {
        eta_zero = parse_quantity(value, Quantity::Dimensionless);
      } else if (key == "p_n_table") {
        p.p_n_table = parse_table(value);
      } else if (auto it = scalar_keys().find(key); it != scalar_keys().end()) {
        p.*(it->second.field) = parse_quantity(value, it->second.kind);
      } else {
        throw std::invalid_argument("unknown key");
      }
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& e) {
      throw ConfigError(line_no, key, e.what());
    }
    first_key = false;
  }

  try {
    if (eta_zero) p = with_zero_storage_transmission(p, *eta_zero);
    p.validate();
  } catch (const std::exception& e) {
    throw ConfigError(0, "params", e.what());
  }
  return p;
}

SensorParams load_params(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(0, path.string(), "cannot open parameter file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_params(ss.str());
}

std::string format_exact(double x) { return fmt::format("{}", x); }

std::string format_params(const SensorParams& p) {
  std::string out;
  auto line = [&](std::string_view key, double v, std::string_view unit) {
    out += fmt::format("{} = {}{}\n", key, format_exact(v), unit);
  };
  line("eta_ch", p.eta_ch, "");
  line("eta_det", p.eta_det, "");
  line("eta_0", p.eta_0, "");
  line("tau_mem", p.tau_mem, "s");
  line("p_n", p.p_n, "");
  line("v_el", p.v_el, "");
  line("sigma_theta", p.sigma_theta, "rad");
  line("sigma_phi", p.sigma_phi, "rad");
  line("n_photons", p.n_photons, "");
  line("lambda_p", p.lambda_p, "m");
  line("squeeze_r", p.squeeze_r, "");
  if (p.p_n_table) {
    std::string items;
    for (const auto& k : p.p_n_table->knots())
      items += fmt::format("{}{}s:{}", items.empty() ? "" : ", ", format_exact(k.tau), format_exact(k.p_n));
    out += fmt::format("p_n_table = {}\n", items);
  }
  return out;
}

}  // namespace memvel
