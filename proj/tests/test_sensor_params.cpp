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

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "memvel/sensor_params.hpp"

using namespace memvel;

TEST_CASE("reference working point reproduces the quoted transmissions") {
  const SensorParams p = reference_working_point();
  CHECK_NOTHROW(p.validate());
  CHECK(p.external_transmission() == doctest::Approx(0.6365).epsilon(1e-12));
  CHECK(p.zero_storage_transmission() == doctest::Approx(0.31825).epsilon(1e-12));
  // The quoted table values round their intermediates; agreement within 1%.
  CHECK(std::abs(p.external_transmission() / 0.632 - 1.0) < 0.01);
  CHECK(std::abs(p.zero_storage_transmission() / 0.316 - 1.0) < 0.01);
  CHECK(p.wavenumber() == doctest::Approx(2.0 * std::numbers::pi / 795e-9).epsilon(1e-15));
}

TEST_CASE("validation rejects out-of-range and non-finite fields") {
  auto bad = [](auto mutate) {
    SensorParams p = reference_working_point();
    mutate(p);
    return p;
  };
  CHECK_THROWS_AS(bad([](SensorParams& p) { p.eta_ch = 0.0; }).validate(), std::invalid_argument);
  CHECK_THROWS_AS(bad([](SensorParams& p) { p.eta_det = 1.2; }).validate(), std::invalid_argument);
  CHECK_THROWS_AS(bad([](SensorParams& p) { p.tau_mem = -1.0; }).validate(), std::invalid_argument);
  CHECK_THROWS_AS(bad([](SensorParams& p) { p.p_n = -1e-3; }).validate(), std::invalid_argument);
  CHECK_THROWS_AS(bad([](SensorParams& p) { p.n_photons = NAN; }).validate(), std::invalid_argument);
  CHECK_THROWS_AS(bad([](SensorParams& p) { p.squeeze_r = INFINITY; }).validate(), std::invalid_argument);
  CHECK_THROWS_WITH(bad([](SensorParams& p) { p.sigma_phi = -1.0; }).validate(),
                    doctest::Contains("sigma_phi"));
}

TEST_CASE("squeezing dB conversion") {
  CHECK(squeezing_db_to_r(0.0) == 0.0);
  // e^{-2r} = 0.1 and e^{-2r} = 10^{-0.3}
  CHECK(squeezing_db_to_r(10.0) == doctest::Approx(std::log(10.0) / 2.0).epsilon(1e-15));
  CHECK(squeezing_db_to_r(10.0) == doctest::Approx(1.151293).epsilon(1e-6));
  CHECK(squeezing_db_to_r(3.0) == doctest::Approx(0.345388).epsilon(1e-6));
  CHECK(std::exp(-2.0 * squeezing_db_to_r(3.0)) == doctest::Approx(std::pow(10.0, -0.3)).epsilon(1e-14));
  CHECK(squeezing_r_to_db(squeezing_db_to_r(7.5)) == doctest::Approx(7.5).epsilon(1e-14));
  CHECK_THROWS_AS(squeezing_db_to_r(-1.0), std::domain_error);
}

TEST_CASE("noise table interpolates linearly and clamps at the ends") {
  const NoiseTable t({{0.0, 0.01}, {1e-4, 0.03}, {2e-4, 0.03}});
  CHECK(t.at(0.0) == 0.01);
  CHECK(t.at(5e-5) == doctest::Approx(0.02));
  CHECK(t.at(1.5e-4) == doctest::Approx(0.03));
  CHECK(t.at(1.0) == 0.03);
  CHECK(t.slope(5e-5) == doctest::Approx(200.0));
  CHECK(t.slope(1.0) == 0.0);
  CHECK_THROWS_AS(NoiseTable({{1e-4, 0.0}, {1e-4, 0.1}}), std::invalid_argument);
  CHECK_THROWS_AS(NoiseTable({{0.0, -0.1}}), std::invalid_argument);
  CHECK_THROWS_AS(NoiseTable(std::vector<NoiseTable::Knot>{}), std::invalid_argument);

  SensorParams p = reference_working_point();
  p.p_n_table = t;
  CHECK(p.noise_floor(5e-5) == doctest::Approx(0.02));
}

TEST_CASE("zero-storage transmission axis keeps the product exact") {
  const SensorParams base = reference_working_point();
  for (double target : {0.05, 0.316, 0.6365, 0.8, 0.97, 1.0}) {
    const SensorParams p = with_zero_storage_transmission(base, target);
    CHECK_NOTHROW(p.validate());
    CHECK(p.zero_storage_transmission() == doctest::Approx(target).epsilon(1e-14));
  }
  CHECK_THROWS_AS(with_zero_storage_transmission(base, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(with_zero_storage_transmission(base, 1.1), std::invalid_argument);
}

TEST_CASE("scheme names parse back") {
  for (auto s : kAllSchemes) {
    CHECK(parse_scheme(to_string(s)) == s);
    CHECK(parse_scheme(short_name(s)) == s);
  }
  CHECK_FALSE(parse_scheme("bogus").has_value());
}
