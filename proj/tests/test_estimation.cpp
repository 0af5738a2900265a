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
#include <random>
#include <stdexcept>

#include "memvel/estimation.hpp"

using namespace memvel;

namespace {

constexpr auto kSq = ReadoutScheme::SqueezedHomodyne;
constexpr auto kCoh = ReadoutScheme::CoherentHomodyne;
constexpr auto kHet = ReadoutScheme::CoherentHeterodyne;

SensorParams random_params(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  SensorParams p;
  p.eta_ch = 0.2 + 0.8 * u(rng);
  p.eta_det = 0.2 + 0.8 * u(rng);
  p.eta_0 = 0.2 + 0.8 * u(rng);
  p.tau_mem = 1e-5 + 1e-3 * u(rng);
  p.p_n = 0.05 * u(rng);
  p.v_el = 0.05 * u(rng);
  p.sigma_theta = 0.1 * u(rng);
  p.sigma_phi = 1e-4 * u(rng);
  p.n_photons = 1e5 + 1e7 * u(rng);
  p.squeeze_r = 1.5 * u(rng);
  return p;
}

}  // namespace

TEST_CASE("Fisher information") {
  const SensorParams ref = reference_working_point();
  CHECK_THROWS_AS(fisher_single(0.0, ref, kSq), std::domain_error);
  CHECK_THROWS_AS(fisher_single(-1e-6, ref, kSq), std::domain_error);
  CHECK(fisher_single(1e-9, ref, kCoh) < 1e-6 * fisher_single(ref.tau_mem, ref, kCoh));

  // Coherent homodyne near its optimum: 1/sqrt(F) ~ 1.20 um/s.
  CHECK(1.0 / std::sqrt(fisher_single(1.01 * ref.tau_mem, ref, kCoh)) ==
        doctest::Approx(1.20e-6).epsilon(0.01));

  SensorParams quiet;
  quiet.tau_mem = 1e-4;
  SensorParams doubled = quiet;
  doubled.n_photons *= 2.0;
  CHECK(fisher_single(5e-5, doubled, kCoh) == doctest::Approx(2.0 * fisher_single(5e-5, quiet, kCoh)).epsilon(1e-14));
}

TEST_CASE("Cramer-Rao bound") {
  const SensorParams ref = reference_working_point();
  CHECK(crb(ref.tau_mem, 1.0, ref, kSq) == doctest::Approx(10.0 * crb(ref.tau_mem, 100.0, ref, kSq)).epsilon(1e-14));
  CHECK(crb(1.01 * ref.tau_mem, 1.0, ref, kCoh) * 1e9 == doctest::Approx(1200.0).epsilon(0.01));
  CHECK(crb(0.95 * ref.tau_mem, 1.0, ref, kSq) * 1e9 == doctest::Approx(1140.0).epsilon(0.01));
  CHECK_THROWS_AS(crb(ref.tau_mem, 0.5, ref, kSq), std::domain_error);

  const SensitivityResult s = sensitivity(ref.tau_mem, 1e4, ref, kSq);
  CHECK(s.delta_v == doctest::Approx(s.delta_v_sqrtM / 100.0).epsilon(1e-14));
  CHECK(s.eta == total_transmission(ref.tau_mem, ref));
}

TEST_CASE("CRB and Fisher duality and scheme ordering") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 300; ++i) {
    const SensorParams p = random_params(rng);
    const double tau = p.tau_mem * (0.01 + 2.0 * u(rng));
    const double m = 1.0 + std::floor(1e4 * u(rng));
    for (auto s : kAllSchemes)
      CHECK(crb(tau, m, p, s) == doctest::Approx(1.0 / std::sqrt(m * fisher_single(tau, p, s))).epsilon(1e-12));
    CHECK(crb(tau, m, p, kHet) > crb(tau, m, p, kCoh));
    if (effective_squeezed_variance(p.squeeze_r, p.sigma_theta) < 1.0)
      CHECK(crb(tau, m, p, kSq) <= crb(tau, m, p, kCoh));
  }
}

TEST_CASE("sensitivity ratio") {
  const SensorParams ref = reference_working_point();
  const GainReport g0 = sensitivity_ratio(0.0, ref);
  CHECK(g0.power_ratio == doctest::Approx(0.73497).epsilon(1e-4));
  CHECK(g0.ratio == doctest::Approx(std::sqrt(g0.power_ratio)).epsilon(1e-15));
  CHECK(g0.closed_form_power_ratio == doctest::Approx(g0.power_ratio).epsilon(1e-12));
  CHECK(g0.gain == doctest::Approx(1.0 - g0.ratio).epsilon(1e-15));

  SensorParams p = ref;
  p.squeeze_r = 0.0;
  CHECK(sensitivity_ratio(ref.tau_mem, p).ratio == 1.0);

  // Pure loss: R = sqrt(1 - eta (1 - V_theta)).
  SensorParams lossy;
  lossy.tau_mem = 1e-4;
  lossy.eta_0 = 0.7;
  lossy.squeeze_r = 1.0;
  for (double tau : {0.0, 3e-5, 1e-4}) {
    const double eta = total_transmission(tau, lossy);
    CHECK(sensitivity_ratio(tau, lossy).ratio ==
          doctest::Approx(std::sqrt(1.0 - eta * (1.0 - std::exp(-2.0)))).epsilon(1e-13));
  }

  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) {
    const SensorParams q = random_params(rng);
    const double tau = q.tau_mem * 0.7;
    const GainReport g = sensitivity_ratio(tau, q);
    CHECK(g.closed_form_power_ratio == doctest::Approx(g.power_ratio).epsilon(1e-12));
    CHECK(g.ratio == doctest::Approx(crb(tau, 1.0, q, kSq) / crb(tau, 1.0, q, kCoh)).epsilon(1e-12));
  }
}

TEST_CASE("minimum transmission thresholds") {
  const SensorParams ref = reference_working_point();
  CHECK(min_transmission(0.1, ref) == doctest::Approx(0.226).epsilon(0.002 / 0.226));
  CHECK(min_transmission(0.2, ref) == doctest::Approx(0.437).epsilon(0.002 / 0.437));
  // Frozen closed-form values.
  CHECK(min_transmission(0.1, ref) == doctest::Approx(0.2261879).epsilon(1e-6));
  CHECK(min_transmission(0.2, ref) == doctest::Approx(0.4370866).epsilon(1e-6));
  CHECK(min_transmission(1e-9, ref) < 1e-6);
  CHECK_THROWS_AS(min_transmission(0.0, ref), std::domain_error);
  CHECK_THROWS_AS(min_transmission(1.0, ref), std::domain_error);

  // Gains beyond the unit-transmission maximum are unreachable.
  try {
    min_transmission(0.6, ref);
    FAIL("expected UnreachableGain");
  } catch (const UnreachableGain& e) {
    CHECK(e.max_gain() == doctest::Approx(gain_at_transmission(1.0, ref)));
    CHECK(e.max_gain() < 0.6);
  }
  // Phase noise large enough to make the denominator nonpositive.
  SensorParams noisy = ref;
  noisy.sigma_phi = 1e-3;
  CHECK_THROWS_AS(min_transmission(0.3, noisy), UnreachableGain);

  double prev = 0.0;
  for (double a = 0.01; a < 0.3; a += 0.01) {
    const double e = min_transmission(a, ref);
    CHECK(e > prev);
    prev = e;
  }
}

TEST_CASE("threshold round trip through the memory decay") {
  const SensorParams ref = reference_working_point();
  for (double a : {0.02, 0.05, 0.1, 0.14}) {
    REQUIRE(min_transmission(a, ref) < ref.zero_storage_transmission());
    const double eta_min = min_transmission(a, ref);
    const double tau = ref.tau_mem * std::sqrt(std::log(ref.zero_storage_transmission() / eta_min));
    CHECK(total_transmission(tau, ref) == doctest::Approx(eta_min).epsilon(1e-12));
    CHECK(sensitivity_ratio(tau, ref).gain == doctest::Approx(a).epsilon(1e-9));
    CHECK(gain_at_transmission(eta_min, ref) == doctest::Approx(a).epsilon(1e-12));
  }
}

TEST_CASE("memory-noise budget") {
  const SensorParams ref = reference_working_point();
  const double eta = ref.zero_storage_transmission();
  const double budget = max_memory_noise(0.1, eta, ref);
  CHECK(budget == doctest::Approx(0.2204).epsilon(1e-3));
  CHECK(budget > 0.01);
  CHECK(budget < 1.0);

  for (double a : {0.05, 0.1, 0.2}) {
    const double eta_min = min_transmission(a, ref);
    CHECK(max_memory_noise(a, eta_min, ref) == doctest::Approx(ref.p_n).epsilon(1e-10));
    SensorParams at_budget = ref;
    at_budget.p_n = max_memory_noise(a, 0.8, ref);
    CHECK(gain_at_transmission(0.8, at_budget) == doctest::Approx(a).epsilon(1e-12));
  }
  CHECK_THROWS_AS(max_memory_noise(0.5, 0.1, ref), UnreachableGain);
  CHECK_THROWS_AS(max_memory_noise(0.1, 0.0, ref), std::domain_error);
}
