// Copyright 2026 The twolevel Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "twolevel/error.hpp"
#include "twolevel/evolution.hpp"
#include "twolevel/parametrization.hpp"
#include "twolevel/scenarios.hpp"

using namespace twolevel;
using twolevel::testing::expm_sigma_x;
using twolevel::testing::kPi;
using twolevel::testing::RandomSlowInputs;

namespace {

// Eigenvectors written out from the mixing angle, independent of the library's eigenframe code.
struct Kets {
  Spinor plus, minus;
};

Kets kets(double Omega, double w, double phase) {
  const double th = std::atan2(w, Omega);
  const Complex e = std::polar(1.0, 0.5 * phase);
  return {{e * std::cos(th / 2), std::conj(e) * std::sin(th / 2)},
          {e * std::sin(th / 2), -std::conj(e) * std::cos(th / 2)}};
}

ParametrizedSystem pure_drive(double w0, std::size_t n = 200, double t_end = 6.0) {
  return direct_parametrization(TimeFunction::constant(w0), TimeFunction::constant(0.0), TimeFunction::constant(0.0),
                                quad::uniform_grid(0.0, t_end, n));
}

double theta_at(const HamiltonianTrajectory& h, double t) { return std::atan2(h.omega_abs(t), h.Omega(t)); }

}  // namespace

TEST_CASE("propagator at t = 0 is the identity") {
  const SineScenario s = sine_scenario(ScenarioSpec::from_nu0T(10.0, 128));
  CHECK(frob_distance(build_propagator(s.system.state, 0).u, Matrix2::identity()) <= 1e-12);
  CHECK(frob_distance(build_propagator_axis_angle(s.system.state, 0).u, Matrix2::identity()) <= 1e-12);
}

TEST_CASE("pure transverse drive gives exp(-i w0 t sigma_x)") {
  const ParametrizedSystem sys = pure_drive(0.7);
  for (std::size_t i = 0; i < sys.state.size(); ++i) {
    const Propagator p = build_propagator(sys.state, i);
    CHECK(frob_distance(p.u, expm_sigma_x(0.7 * p.t)) <= 1e-12);
    CHECK(p.provenance == Provenance::parametrized);
  }
}

TEST_CASE("axis-angle form equals the (a, b) form") {
  std::mt19937_64 rng(3);
  for (int k = 0; k < 5; ++k) {
    const RandomSlowInputs r = RandomSlowInputs::draw(rng);
    const ParametrizedSystem sys = from_slow_params(r.slow(), quad::uniform_grid(0.0, 10.0, 200));
    for (std::size_t i = 0; i < sys.state.size(); ++i) {
      CHECK(frob_distance(build_propagator(sys.state, i).u, build_propagator_axis_angle(sys.state, i).u) <= 1e-12);
    }
  }
}

TEST_CASE("amplitude formula examples") {
  const SineScenario s = sine_scenario(ScenarioSpec::from_nu0T(10.0, 4096));
  const HamiltonianTrajectory& h = s.system.hamiltonian;
  const double th0 = theta_at(h, 0.0);
  CHECK(std::abs(transition_amplitude_formula(s.system.state, th0, th0, 0)) <= 1e-15);

  SUBCASE("formula equals the direct matrix element at every sample") {
    const Kets k0 = kets(h.Omega(0.0), h.omega_abs(0.0), h.phi_omega(0.0));
    double worst = 0.0;
    for (std::size_t i = 0; i < s.grid().size(); ++i) {
      const double t = s.grid()[i];
      const Kets kt = kets(h.Omega(t), h.omega_abs(t), h.phi_omega(t));
      const Complex direct = matrix_element(kt.minus, s.propagators[i].u, k0.plus);
      const Complex formula = transition_amplitude_formula(s.system.state, theta_at(h, t), th0, i);
      worst = std::max(worst, std::abs(direct - formula));
      worst = std::max(worst, std::abs(direct - s.amplitude[i]));
    }
    CHECK(worst <= 1e-10);
  }
  CHECK_THROWS_AS(transition_amplitude_formula(s.system.state, 0.0, 0.0, s.grid().size()), PreconditionError);
}

TEST_CASE("commuting control has no inter-eigenstate amplitude") {
  const ParametrizedSystem sys = pure_drive(1.3);
  const PropagatorTrajectory us = build_trajectory(sys.state);
  for (std::size_t i = 0; i < sys.state.size(); ++i) {
    CHECK(std::abs(transition_amplitude_formula(sys.state, kPi / 2, kPi / 2, i)) <= 1e-12);
  }
  for (const Complex& a : transition_amplitudes(us, sys.hamiltonian)) CHECK(std::abs(a) <= 1e-12);
}

TEST_CASE("transition_amplitude_general") {
  const SineScenario s = sine_scenario(ScenarioSpec::from_nu0T(20.0, 1024));
  const HamiltonianTrajectory& h = s.system.hamiltonian;
  const Eigenframe f0 = eigenframe_at(h, 0.0);
  CHECK(std::abs(transition_amplitude_general(s.propagators[0], f0, f0, Level::plus, Level::plus) - 1.0) <= 1e-12);
  for (std::size_t i = 0; i < s.grid().size(); ++i) {
    const Eigenframe ft = eigenframe_at(h, s.grid()[i]);
    for (Level from : {Level::plus, Level::minus}) {
      double total = 0.0;
      for (Level to : {Level::plus, Level::minus}) total += std::norm(transition_amplitude_general(s.propagators[i], ft, f0, from, to));
      CHECK(std::abs(total - 1.0) <= 1e-12);
    }
    CHECK(unitarity_defect(s.propagators[i].u) <= 1e-10);
  }
}

TEST_CASE("larger nu0 T suppresses the transition probability") {
  const SineScenario s10 = sine_scenario(ScenarioSpec::from_nu0T(10.0, 2048));
  const SineScenario s100 = sine_scenario(ScenarioSpec::from_nu0T(100.0, 4096));
  CHECK(s100.max_probability() < s10.max_probability());
}

TEST_CASE("formula identity on random slow inputs") {
  std::mt19937_64 rng(77);
  for (int k = 0; k < 10; ++k) {
    const RandomSlowInputs r = RandomSlowInputs::draw(rng);
    const ParametrizedSystem sys = from_slow_params(r.slow(), quad::uniform_grid(0.0, 10.0, 300));
    const PropagatorTrajectory us = build_trajectory(sys.state);
    const std::vector<Complex> direct = transition_amplitudes(us, sys.hamiltonian);
    const double th0 = theta_at(sys.hamiltonian, 0.0);
    for (std::size_t i = 0; i < us.size(); ++i) {
      const Complex f = transition_amplitude_formula(sys.state, theta_at(sys.hamiltonian, us[i].t), th0, i);
      CHECK(std::abs(f - direct[i]) <= 1e-10);
    }
  }
}
