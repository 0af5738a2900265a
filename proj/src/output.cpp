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
#include <stdexcept>

#include <fmt/format.h>
#include <json.hpp>

#include "memvel/config.hpp"
#include "memvel/sweep.hpp"

namespace memvel {

namespace {

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

}  // namespace

std::size_t SweepResult::column(std::string_view name) const {
  for (std::size_t i = 0; i < columns.size(); ++i)
    if (columns[i].name == name) return i;
  throw std::out_of_range(fmt::format("no column '{}'", name));
}

std::optional<double> SweepResult::number(std::size_t row, std::string_view col) const {
  const Cell& c = rows.at(row).at(column(col));
  if (const double* d = std::get_if<double>(&c)) return *d;
  return std::nullopt;
}

void write_csv(std::ostream& os, const SweepResult& r) {
  for (const auto& [k, v] : r.metadata) os << "# " << k << ": " << v << '\n';
  for (std::size_t i = 0; i < r.columns.size(); ++i)
    os << (i ? "," : "") << r.columns[i].name << " [" << r.columns[i].unit << ']';
  os << '\n';
  for (const auto& row : r.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) os << ',';
      if (const double* d = std::get_if<double>(&row[i]))
        os << fmt::format("{:.12g}", *d);
      else if (const std::string* s = std::get_if<std::string>(&row[i]))
        os << csv_escape(*s);
    }
    os << '\n';
  }
}

void write_json(std::ostream& os, const SweepResult& r) {
  nlohmann::ordered_json j;
  j["metadata"] = nlohmann::ordered_json::array();
  for (const auto& [k, v] : r.metadata) j["metadata"].push_back({k, v});
  j["columns"] = nlohmann::ordered_json::array();
  for (const auto& c : r.columns) j["columns"].push_back({{"name", c.name}, {"unit", c.unit}});
  j["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : r.rows) {
    auto jr = nlohmann::ordered_json::array();
    for (const auto& cell : row) {
      if (const double* d = std::get_if<double>(&cell))
        jr.push_back(*d);
      else if (const std::string* s = std::get_if<std::string>(&cell))
        jr.push_back(*s);
      else
        jr.push_back(nullptr);
    }
    j["rows"].push_back(std::move(jr));
  }
  os << j.dump(1) << '\n';
}

SensorParams params_from_csv_header(std::string_view csv) {
  constexpr std::string_view prefix = "# param: ";
  std::string text;
  while (!csv.empty()) {
    const auto nl = csv.find('\n');
    const std::string_view line = csv.substr(0, nl);
    csv = nl == std::string_view::npos ? std::string_view{} : csv.substr(nl + 1);
    if (line.substr(0, prefix.size()) == prefix) {
      text += line.substr(prefix.size());
      text += '\n';
    }
  }
  return parse_params(text);
}

}  // namespace memvel
