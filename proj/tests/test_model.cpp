// Copyright 2026 The sprint-swap Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <cmath>
#include <tuple>
#include <random>

#include "oracles.hpp"
#include "sprint/model.hpp"
#include "sprint/units.hpp"
#include "sprint/zeeman.hpp"
#include "support.hpp"

using namespace sprint;
using namespace sprint::literals;

namespace {

LambdaSystem symmetric_real(double g, double gamma) {
  LambdaSystem s;
  s.g_down = g;
  s.g_up = g;
  s.gamma = gamma;
  return s;
}

}  // namespace

TEST_CASE("closed form matches the published final-line expressions on complex inputs") {
  std::mt19937_64 rng(11);
  double worst = 0.0;
  for (int i = 0; i < 2000; ++i) {
    const auto setup = support::random_setup(rng);
    const auto state = support::random_state(rng);
    const auto got = gate_outcome(state, setup.system, setup.cavity, setup.dets);
    const auto ref = reference::published_closed_form(state, setup.system, setup.cavity, setup.dets);
    worst = std::max({worst, std::abs(got.p_dark - ref.dark), std::abs(got.p_bright - ref.bright)});
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("steady-state prefactors solve the adiabatic linear system") {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 300; ++i) {
    const auto setup = support::random_setup(rng);
    const auto state = support::random_state(rng);
    const double ks = setup.cavity.kappa_t() * support::uniform(rng, 1e-4, 1e-1);
    const auto c = steady_state_amplitudes(state, setup.system, setup.cavity, setup.dets, ks);
    const auto x = reference::envelope_prefactors(state, setup.system, setup.cavity, setup.dets, ks, true);
    double scale = 0.0;
    for (const auto& v : x) scale = std::max(scale, std::abs(v));
    for (std::size_t k = 0; k < 5; ++k) CHECK(std::abs(c[k] - x[k]) <= 1e-10 * scale);
  }
}

TEST_CASE("port probabilities from the integrated envelope agree with gate_outcome") {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 300; ++i) {
    const auto setup = support::random_setup(rng);
    const auto state = support::random_state(rng);
    const double ks = setup.cavity.kappa_t() / 500.0;
    const auto x = reference::envelope_prefactors(state, setup.system, setup.cavity, setup.dets, ks, true);
    const auto ref = reference::ports_from_prefactors(state, x, setup.cavity.kappa_ex, ks);
    const auto got = gate_outcome(state, setup.system, setup.cavity, setup.dets);
    CHECK(got.p_dark == doctest::Approx(ref.dark).epsilon(1e-9));
    CHECK(got.p_bright == doctest::Approx(ref.bright).epsilon(1e-9));
  }
}

TEST_CASE("unit-cooperativity example: P_B = 4/9, P_D = 1/9") {
  const double kt = 1.0_MHz, gamma = 2.0_MHz;
  const LambdaSystem s = symmetric_real(std::sqrt(kt * gamma), gamma);
  const CavityParams cav{kt, 0.0};
  const auto out = gate_outcome(JointQubitState::poles(true, true), s, cav, {});
  CHECK(out.p_bright == doctest::Approx(4.0 / 9.0).epsilon(1e-13));
  CHECK(out.p_dark == doctest::Approx(1.0 / 9.0).epsilon(1e-13));
  REQUIRE(out.fidelity.has_value());
  CHECK(*out.fidelity == doctest::Approx(0.8).epsilon(1e-13));
  CHECK(out.efficiency == doctest::Approx(5.0 / 9.0).epsilon(1e-13));
}

TEST_CASE("non-interacting input is reflected into the bright port") {
  const LambdaSystem s = symmetric_real(3.0_MHz, 10.0_MHz);
  const CavityParams cav{0.4_MHz, 0.0};
  const auto state = JointQubitState::poles(true, false);  // photon in a, atom up
  const auto out = gate_outcome(state, s, cav, {});
  CHECK(out.p_bright == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(out.p_dark < 1e-28);
  CHECK(*out.fidelity == doctest::Approx(1.0));

  const EffectiveDetunings d{0.3_MHz, -0.2_MHz, 1.0_MHz};
  const double ks = 2.0_kHz;
  const auto c = steady_state_amplitudes(state, s, cav, d, ks);
  CHECK(std::abs(c[0]) == 0.0);
  CHECK(std::abs(c[2]) == 0.0);
  CHECK(std::abs(c[3]) == 0.0);
  CHECK(std::abs(c[4]) == 0.0);
  const cplx expect = -2.0 * std::sqrt(ks * cav.kappa_ex) / cplx(cav.kappa_t(), d.delta_down);
  CHECK(std::abs(c[1] - expect) < 1e-15 * std::abs(expect));
}

TEST_CASE("bare lossless cavity reflects everything with a sign flip") {
  LambdaSystem s;
  s.gamma = 5.0_MHz;
  const CavityParams cav{1.0_MHz, 0.0};
  std::mt19937_64 rng(14);
  for (int i = 0; i < 50; ++i) {
    const auto st = support::random_state(rng);
    const auto out = gate_outcome(st, s, cav, {});
    CHECK(out.efficiency == doctest::Approx(1.0).epsilon(1e-12));
    const auto a = output_amplitudes(st, s, cav, {});
    CHECK(std::abs(a[0] + st.alpha * st.alpha_p) < 1e-14);
    CHECK(std::abs(a[3] + st.beta * st.beta_p) < 1e-14);

    const double ks = 1.0_kHz;
    const EffectiveDetunings d{0.2_MHz, 0.2_MHz, 0.0};
    const auto c = steady_state_amplitudes(st, s, cav, d, ks);
    CHECK(std::abs(c[4]) == 0.0);
    const cplx c1 = -2.0 * st.alpha * st.alpha_p * std::sqrt(ks * cav.kappa_ex) / cplx(cav.kappa_t(), d.delta_down);
    CHECK(std::abs(c[0] - c1) <= 1e-14 * std::abs(c1) + 1e-300);
  }
}

TEST_CASE("excited-state prefactor for a symmetric lossless system") {
  const double kt = 0.7_MHz, gamma = 3.0_MHz, g = 1.1_MHz, ks = 1.0_kHz;
  const LambdaSystem s = symmetric_real(g, gamma);
  const CavityParams cav{kt, 0.0};
  const double ct = g * g / (kt * gamma);
  const auto c = steady_state_amplitudes(JointQubitState::poles(true, true), s, cav, {}, ks);
  // With both detunings zero the ratio in the c5 expression is 1/(2g).
  const cplx expect = 2.0 * reference::I * std::sqrt(ks * kt) * (2.0 * ct / (1.0 + 2.0 * ct)) / (2.0 * g);
  CHECK(std::abs(c[4] - expect) < 1e-14 * std::abs(expect));
}

TEST_CASE("outcome invariants over random inputs") {
  std::mt19937_64 rng(15);
  for (int i = 0; i < 20000; ++i) {
    const auto setup = support::random_setup(rng);
    const auto out = gate_outcome(support::random_state(rng), setup.system, setup.cavity, setup.dets);
    REQUIRE(out.p_dark >= 0.0);
    REQUIRE(out.p_bright >= 0.0);
    REQUIRE(out.efficiency <= 1.0 + 1e-9);
    if (out.fidelity) REQUIRE((*out.fidelity >= 0.0 && *out.fidelity <= 1.0));
  }
}

TEST_CASE("global phases of either qubit leave the outcome unchanged") {
  std::mt19937_64 rng(16);
  for (int i = 0; i < 2000; ++i) {
    const auto setup = support::random_setup(rng);
    const auto st = support::random_state(rng);
    const cplx u = std::polar(1.0, support::uniform(rng, 0.0, 6.3));
    const cplx v = std::polar(1.0, support::uniform(rng, 0.0, 6.3));
    JointQubitState rot = st;
    rot.alpha *= u, rot.beta *= u, rot.alpha_p *= v, rot.beta_p *= v;
    const auto a = gate_outcome(st, setup.system, setup.cavity, setup.dets);
    const auto b = gate_outcome(rot, setup.system, setup.cavity, setup.dets);
    REQUIRE(std::abs(a.p_dark - b.p_dark) < 1e-12);
    REQUIRE(std::abs(a.p_bright - b.p_bright) < 1e-12);
  }
}

TEST_CASE("seed decay rate only scales the prefactors") {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 500; ++i) {
    const auto setup = support::random_setup(rng);
    const auto st = support::random_state(rng);
    const double ks = setup.cavity.kappa_t() / 300.0;
    const auto c1 = steady_state_amplitudes(st, setup.system, setup.cavity, setup.dets, ks);
    const auto c10 = steady_state_amplitudes(st, setup.system, setup.cavity, setup.dets, 10.0 * ks);
    const auto p1 = reference::ports_from_prefactors(st, c1.c, setup.cavity.kappa_ex, ks);
    const auto p10 = reference::ports_from_prefactors(st, c10.c, setup.cavity.kappa_ex, 10.0 * ks);
    REQUIRE(std::abs(p1.dark - p10.dark) < 1e-12);
    REQUIRE(std::abs(p1.bright - p10.bright) < 1e-12);
  }
  CHECK_THROWS_AS(steady_state_amplitudes({}, symmetric_real(1.0, 1.0), {1.0, 0.0}, {}, 0.0),
                  std::invalid_argument);
}

TEST_CASE("effective detunings") {
  LambdaSystem s;
  s.m_down = -1.0, s.m_up = 1.0, s.m_e = 0.0, s.lande_lower = 1.0;
  DriveSettings d{1.0_MHz, 4.0_MHz, 0.0, 0.0};
  auto e = effective_detunings(d, s);
  CHECK(e.delta_down == d.delta_c);
  CHECK(e.delta_up == d.delta_c);
  CHECK(e.delta_e == d.delta_a);

  d.b_field = 1.0;
  e = effective_detunings(d, s);
  CHECK(e.delta_down == doctest::Approx(from_mhz(1.0 + 1.3996)).epsilon(1e-14));
  CHECK(e.delta_up == doctest::Approx(from_mhz(1.0 - 1.3996)).epsilon(1e-14));

  s.m_e = s.m_down, s.lande_upper = s.lande_lower;
  d.delta_a = d.delta_c;
  for (double b : {0.0, 0.3, 7.0, -2.0}) {
    d.b_field = b;
    e = effective_detunings(d, s);
    CHECK(e.delta_down == doctest::Approx(e.delta_e).epsilon(1e-15));
  }

  std::mt19937_64 rng(18);
  for (int i = 0; i < 100; ++i) {
    LambdaSystem r;
    r.m_down = -1.5, r.m_up = 0.5, r.m_e = -0.5, r.lande_lower = 0.8, r.lande_upper = 2.0 / 3.0;
    const DriveSettings rd{support::uniform(rng, -1e6, 1e6), support::uniform(rng, -1e8, 1e8),
                           support::uniform(rng, -20, 20), 0.0};
    const auto got = effective_detunings(rd, r);
    const auto ref = reference::zeeman_detunings(rd, r);
    CHECK(got.delta_down == doctest::Approx(ref.delta_down).epsilon(1e-13));
    CHECK(got.delta_up == doctest::Approx(ref.delta_up).epsilon(1e-13));
    CHECK(got.delta_e == doctest::Approx(ref.delta_e).epsilon(1e-13));
  }
}

TEST_CASE("complex cooperativity") {
  const double g = 2.887_MHz, kt = 0.269_MHz, gamma = 10.0_MHz;
  const LambdaSystem s = symmetric_real(g, gamma);
  const cplx c = complex_cooperativity(s, {0.179_MHz, 0.090_MHz}, {});
  CHECK(c.imag() == 0.0);
  CHECK(c.real() == doctest::Approx(g * g / (kt * gamma)).epsilon(1e-12));
  CHECK(c.real() == doctest::Approx(3.1).epsilon(0.05));

  LambdaSystem empty;
  empty.gamma = gamma;
  CHECK(complex_cooperativity(empty, {1.0, 0.0}, {0.3, 0.1, 0.2}) == cplx{});

  LambdaSystem frozen = s;
  frozen.gamma = 0.0;
  CHECK_THROWS_AS(complex_cooperativity(frozen, {1.0, 0.0}, {}), NumericalError);
}

TEST_CASE("birefringence folds into effective magnetic numbers") {
  auto [a, b] = birefringence_effective_m(-1.0, 1.0, 0.5, 0.5, 0.0);
  CHECK(a == -1.0);
  CHECK(b == 1.0);
  std::tie(a, b) = birefringence_effective_m(-1.0, 1.0, 0.0, 2.0, 1.0);
  CHECK(a == 0.0);
  CHECK(b == 0.0);
  std::tie(a, b) = birefringence_effective_m(-1.5, 0.5, 0.0, 1.0, 1.0);
  CHECK(a == -1.0);
  CHECK(b == 0.0);
  CHECK_THROWS_AS(birefringence_effective_m(-1.0, 1.0, 0.0, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("validation of model inputs") {
  LambdaSystem s;
  s.gamma = 1.0;
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);  // both couplings zero
  s.g_up = 1.0;
  CHECK_NOTHROW(s.validate());
  s.m_up = s.m_down;
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
  s.m_up = 1.0, s.gamma = 0.0;
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);

  CHECK_THROWS_AS((CavityParams{0.0, 1.0}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((CavityParams{1.0, -1.0}.validate()), std::invalid_argument);
  CHECK_NOTHROW((CavityParams{1.0, 0.0}.validate()));

  JointQubitState st;
  st.beta = 0.1;
  CHECK_THROWS_AS(st.validate(), std::invalid_argument);
  CHECK(JointQubitState::from_bloch(1.0, 2.0, 0.3, -1.0).is_normalized());
}

TEST_CASE("no photon out leaves the fidelity undefined") {
  // Critically coupled empty cavity on resonance absorbs the photon in kappa_i.
  LambdaSystem s;
  s.gamma = 1.0_MHz;
  const auto out = gate_outcome(JointQubitState::poles(true, true), s, {1.0_MHz, 1.0_MHz}, {});
  CHECK(out.efficiency < min_efficiency_for_fidelity);
  CHECK_FALSE(out.fidelity.has_value());
}
