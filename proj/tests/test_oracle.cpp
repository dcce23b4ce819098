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

#include "oracles.hpp"
#include "twolevel/error.hpp"
#include "twolevel/oracle.hpp"
#include "twolevel/scenarios.hpp"

using namespace twolevel;
using twolevel::testing::expm_sigma_x;
using twolevel::testing::kPi;

namespace {

HamiltonianTrajectory constant_h(double Omega, double w) {
  HamiltonianTrajectory h;
  h.Omega = TimeFunction::constant(Omega);
  h.omega_abs = TimeFunction::constant(w);
  h.phi_omega = TimeFunction::constant(0.0);
  return h;
}

double max_error_vs(const PropagatorTrajectory& a, const PropagatorTrajectory& ref) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, frob_distance(a[i].u, ref[i].u));
  return worst;
}

}  // namespace

TEST_CASE("constant Hamiltonians") {
  const OracleResult z = integrate(constant_h(1.0, 0.0), kPi);
  CHECK(frob_distance(z.trajectory.back().u, -Matrix2::identity()) <= 1e-9);
  CHECK(frob_distance(z.trajectory.front().u, Matrix2::identity()) == 0.0);
  CHECK(z.trajectory.back().provenance == Provenance::oracle);

  const OracleResult x = integrate(constant_h(0.0, 1.0), kPi / 2);
  CHECK(frob_distance(x.trajectory.back().u, Complex{0.0, -1.0} * Matrix2::sigma_x()) <= 1e-9);
  CHECK(frob_distance(x.trajectory.back().u, expm_sigma_x(kPi / 2)) <= 1e-9);
}

TEST_CASE("hbar scales time") {
  HamiltonianTrajectory h = constant_h(0.0, 2.0);
  h.hbar = 2.0;
  CHECK(frob_distance(integrate(h, 1.0).trajectory.back().u, expm_sigma_x(1.0)) <= 1e-9);
}

TEST_CASE("oracle matches the parametrized propagator on the sine scenario") {
  for (double nu0T : {10.0, 20.0}) {
    const ScenarioSpec spec = ScenarioSpec::from_nu0T(nu0T, 1024);
    const SineScenario s = sine_scenario(spec);
    const OracleResult o = integrate(s.system.hamiltonian, s.grid(), sine_oracle_config(spec));
    const ComparisonReport rep = compare_trajectories(s.propagators, o.trajectory, s.system.hamiltonian);
    CHECK(rep.max_frob <= 1e-6);
    CHECK(rep.max_amp_discrepancy <= 1e-6);
    CHECK(o.unitarity_drift <= 1e-8);
  }
}

TEST_CASE("compare_trajectories") {
  const SineScenario s = sine_scenario(ScenarioSpec::from_nu0T(10.0, 64));
  const ComparisonReport same = compare_trajectories(s.propagators, s.propagators, s.system.hamiltonian);
  CHECK(same.max_frob == 0.0);
  CHECK(same.max_amp_discrepancy == 0.0);
  for (double d : same.distance) CHECK(d == 0.0);

  PropagatorTrajectory neg = s.propagators;
  for (Propagator& p : neg) p.u = -p.u;
  const ComparisonReport flipped = compare_trajectories(s.propagators, neg, s.system.hamiltonian);
  for (double d : flipped.distance) CHECK(d == doctest::Approx(std::sqrt(8.0)).epsilon(1e-12));

  PropagatorTrajectory shorter(s.propagators.begin(), s.propagators.end() - 1);
  CHECK_THROWS_AS(compare_trajectories(s.propagators, shorter, s.system.hamiltonian), PreconditionError);
  PropagatorTrajectory shifted = s.propagators;
  shifted[3].t += 1e-3;
  CHECK_THROWS_AS(compare_trajectories(s.propagators, shifted, s.system.hamiltonian), PreconditionError);
}

TEST_CASE("fourth-order convergence") {
  const ScenarioSpec spec = ScenarioSpec::from_nu0T(10.0, 200);
  const SineScenario s = sine_scenario(spec);
  IntegratorConfig fixed;
  fixed.tol = 1e300;
  const double h = spec.T / 200.0;
  auto run = [&](double step) {
    fixed.step = step;
    return integrate(s.system.hamiltonian, s.grid(), fixed).trajectory;
  };
  const PropagatorTrajectory ref = run(h / 10.0);
  const double e1 = max_error_vs(run(h), ref);
  const double e2 = max_error_vs(run(h / 2.0), ref);
  const double factor = e1 / e2;
  CHECK(factor >= 8.0);
  CHECK(factor <= 32.0);
}

TEST_CASE("step doubling failure reports the interval") {
  IntegratorConfig cfg;
  cfg.step = 1.0;
  cfg.tol = 1e-30;
  cfg.max_halvings = 2;
  try {
    integrate(constant_h(0.0, 5.0), 1.0, cfg);
    FAIL("expected NumericalError");
  } catch (const NumericalError& e) {
    CHECK(e.interval_begin() >= 0.0);
    CHECK(e.interval_end() <= 1.0);
    CHECK(e.interval_end() - e.interval_begin() == doctest::Approx(0.25));
  }
}

TEST_CASE("configuration and domain checks") {
  IntegratorConfig bad;
  bad.step = 0.0;
  CHECK_THROWS_AS(integrate(constant_h(1.0, 0.0), 1.0, bad), PreconditionError);
  bad = {};
  bad.tol = -1.0;
  CHECK_THROWS_AS(integrate(constant_h(1.0, 0.0), 1.0, bad), PreconditionError);
  HamiltonianTrajectory h = constant_h(1.0, 0.0);
  h.t_end = 1.0;
  CHECK_THROWS_AS(integrate(h, 2.0), PreconditionError);
  CHECK_THROWS_AS(transient_step_bound(0.0, 1.0), PreconditionError);
  CHECK(transient_step_bound(1.0, 0.1) == doctest::Approx(0.02));
}

TEST_CASE("renormalization projects onto the unitary group") {
  Matrix2 m = Complex{1.001, 0.0} * expm_sigma_x(0.4);
  m.m01 += Complex{1e-4, 0.0};
  const Matrix2 p = project_unitary(m);
  CHECK(unitarity_defect(p) <= 1e-12);
  CHECK(frob_distance(p, expm_sigma_x(0.4)) <= 1e-3);

  IntegratorConfig cfg;
  cfg.renormalize = true;
  const OracleResult r = integrate(constant_h(0.3, 0.8), quad::uniform_grid(0.0, 20.0, 50), cfg);
  for (const Propagator& u : r.trajectory) CHECK(unitarity_defect(u.u) <= 1e-12);
}
