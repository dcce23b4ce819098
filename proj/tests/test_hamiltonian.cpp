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
#include <sstream>

#include "oracles.hpp"
#include "twolevel/error.hpp"
#include "twolevel/hamiltonian.hpp"
#include "twolevel/scenarios.hpp"
#include "twolevel/tabulated.hpp"

using namespace twolevel;
using twolevel::testing::kPi;

namespace {

HamiltonianTrajectory constant_h(double Omega, double w, double phase) {
  HamiltonianTrajectory h;
  h.Omega = TimeFunction::constant(Omega);
  h.omega_abs = TimeFunction::constant(w);
  h.phi_omega = TimeFunction::constant(phase);
  return h;
}

double spinor_distance(const Spinor& a, const Spinor& b) { return std::sqrt(std::norm(a.up - b.up) + std::norm(a.down - b.down)); }

}  // namespace

TEST_CASE("eigenframe examples") {
  SUBCASE("longitudinal") {
    const Eigenframe f = eigenframe_from_fields(1.0, 0.0, 0.0);
    CHECK(f.theta == 0.0);
    CHECK(f.e_plus == 1.0);
    CHECK(f.e_minus == -1.0);
    CHECK(spinor_distance(f.ket_plus, kUp) < 1e-15);
  }
  SUBCASE("transverse") {
    const Eigenframe f = eigenframe_from_fields(0.0, 1.0, 0.0);
    CHECK(f.theta == doctest::Approx(kPi / 2));
    CHECK(f.e_plus == doctest::Approx(1.0));
    const double r = 1.0 / std::sqrt(2.0);
    CHECK(spinor_distance(f.ket_plus, Spinor{r, r}) < 1e-15);
  }
  SUBCASE("diagonal") {
    const Eigenframe f = eigenframe_from_fields(1.0, 1.0, 0.0);
    CHECK(f.e_plus == doctest::Approx(std::sqrt(2.0)));
    CHECK(f.e_minus == doctest::Approx(-std::sqrt(2.0)));
    CHECK(f.theta == doctest::Approx(kPi / 4));
  }
  SUBCASE("negative Omega lands in (pi/2, pi]") {
    CHECK(eigenframe_from_fields(-1.0, 0.0, 0.0).theta == doctest::Approx(kPi));
    CHECK(eigenframe_from_fields(-1.0, 1.0, 0.0).theta == doctest::Approx(3 * kPi / 4));
  }
}

TEST_CASE("eigenframe at a degenerate point throws") {
  try {
    eigenframe_from_fields(0.0, 0.0, 0.3, 2.5);
    FAIL("expected DegeneracyError");
  } catch (const DegeneracyError& e) {
    CHECK(e.time() == 2.5);
  }
}

TEST_CASE("eigenframe properties on random fields") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int k = 0; k < 300; ++k) {
    const double Om = u(rng);
    const double w = std::abs(u(rng));
    const double ph = u(rng);
    const HamiltonianTrajectory h = constant_h(Om, w, ph);
    const Matrix2 H = hamiltonian_matrix(h, 0.0);
    const Eigenframe f = eigenframe_at(h, 0.0);
    CHECK(f.e_plus == doctest::Approx(-f.e_minus));
    CHECK(std::abs(f.ket_plus.norm2() - 1.0) <= 1e-12);
    CHECK(std::abs(f.ket_minus.norm2() - 1.0) <= 1e-12);
    CHECK(std::abs(inner(f.ket_plus, f.ket_minus)) <= 1e-12);
    for (Level l : {Level::plus, Level::minus}) {
      const double e = l == Level::plus ? f.e_plus : f.e_minus;
      const Spinor hv = H * f.ket(l);
      CHECK(std::abs(hv.up - e * f.ket(l).up) <= 1e-10);
      CHECK(std::abs(hv.down - e * f.ket(l).down) <= 1e-10);
    }
    // spectral reconstruction
    Matrix2 rec = Matrix2::zero();
    for (Level l : {Level::plus, Level::minus}) {
      const Spinor& v = f.ket(l);
      const double e = l == Level::plus ? f.e_plus : f.e_minus;
      const Matrix2 p{v.up * std::conj(v.up), v.up * std::conj(v.down), v.down * std::conj(v.up),
                      v.down * std::conj(v.down), false};
      rec = rec + Complex{e, 0.0} * p;
    }
    CHECK(frob_distance(rec, H) <= 1e-10);
    CHECK(f.theta >= 0.0);
    CHECK(f.theta <= kPi);
  }
}

TEST_CASE("phase convention: phi_omega = 0, Omega > 0 gives a real non-negative ket_plus") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.01, 4.0);
  for (int k = 0; k < 100; ++k) {
    const Eigenframe f = eigenframe_from_fields(u(rng), u(rng), 0.0);
    CHECK(f.ket_plus.up.imag() == 0.0);
    CHECK(f.ket_plus.down.imag() == 0.0);
    CHECK(f.ket_plus.up.real() >= 0.0);
    CHECK(f.ket_plus.down.real() >= 0.0);
  }
}

TEST_CASE("hamiltonian_matrix examples") {
  CHECK(frob_distance(hamiltonian_matrix(constant_h(1.0, 0.0, 0.0), 0.0), Matrix2::sigma_z()) == 0.0);
  const Matrix2 expected{0.0, Complex{0.0, 1.0}, Complex{0.0, -1.0}, 0.0, false};
  const Matrix2 H = hamiltonian_matrix(constant_h(0.0, 1.0, kPi / 2), 0.0);
  CHECK(frob_distance(H, expected) < 1e-15);
  CHECK_FALSE(H.unitary);
}

TEST_CASE("sine scenario fields at t = 0") {
  for (double nu0T : {10.0, 100.0}) {
    const ScenarioSpec spec = ScenarioSpec::from_nu0T(nu0T, 256);
    const SineScenario s = sine_scenario(spec);
    const Matrix2 H = hamiltonian_matrix(s.system.hamiltonian, 0.0);
    CHECK(H.m00.real() == doctest::Approx(spec.nu0).epsilon(1e-6));
    CHECK(std::abs(H.m01) == doctest::Approx(spec.alpha()).epsilon(1e-12));
  }
}

TEST_CASE("h_dot_matrix_element") {
  CHECK(h_dot_matrix_element(constant_h(0.7, 0.3, 0.1), 1.0) == 0.0);

  const SineScenario s100 = sine_scenario(ScenarioSpec::from_nu0T(100.0, 256));
  const SineScenario s10 = sine_scenario(ScenarioSpec::from_nu0T(10.0, 256));
  const double c100 = h_dot_matrix_element(s100.system.hamiltonian, 0.5 * s100.spec.T);
  const double c10 = h_dot_matrix_element(s10.system.hamiltonian, 0.5 * s10.spec.T);
  CHECK(c100 < 0.05);
  CHECK(c10 / c100 == doctest::Approx(10.0).epsilon(0.2));

  // Finite-difference reference for ⟨−|Ḣ|+⟩.
  const HamiltonianTrajectory& h = s10.system.hamiltonian;
  const double t = 0.37 * s10.spec.T;
  const double d = 1e-5;
  const Matrix2 hd = Complex{1.0 / (2 * d), 0.0} * (hamiltonian_matrix(h, t + d) - hamiltonian_matrix(h, t - d));
  const Eigenframe f = eigenframe_at(h, t);
  const double ref = std::abs(matrix_element(f.ket_minus, hd, f.ket_plus)) / std::pow(f.e_minus - f.e_plus, 2);
  CHECK(h_dot_matrix_element(h, t) == doctest::Approx(ref).epsilon(1e-6));
}

TEST_CASE("theta is continuous along the sine scenario") {
  const SineScenario s = sine_scenario(ScenarioSpec::from_nu0T(20.0, 1024));
  for (std::size_t i = 1; i < s.theta.size(); ++i) CHECK(std::abs(s.theta[i] - s.theta[i - 1]) < 0.05);
}

TEST_CASE("tabulated CSV round trip") {
  std::stringstream csv;
  csv << "t,Omega,omega_abs,phi_omega\n";
  for (int i = 0; i <= 40; ++i) {
    const double t = 0.05 * i;
    csv << t << "," << std::cos(t) << "," << 1.0 + 0.5 * std::sin(t) << "," << 0.3 * t << "\n";
  }
  const TabulatedFields f = read_tabulated_csv(csv);
  CHECK(f.t.size() == 41);
  const HamiltonianTrajectory h = make_tabulated_trajectory(f);
  CHECK(h.t_begin == 0.0);
  CHECK(h.t_end == doctest::Approx(2.0));
  CHECK(h.Omega(0.73) == doctest::Approx(std::cos(0.73)).epsilon(1e-4));
  CHECK(h.omega_abs(1.11) == doctest::Approx(1.0 + 0.5 * std::sin(1.11)).epsilon(1e-4));
  CHECK(h.phi_omega.derivative(1.0) == doctest::Approx(0.3).epsilon(1e-6));
  CHECK_THROWS_AS(h.require_in_domain(2.5), PreconditionError);
}

TEST_CASE("tabulated CSV rejects malformed input") {
  auto parse = [](const std::string& text) {
    std::stringstream s(text);
    return read_tabulated_csv(s);
  };
  CHECK_THROWS_AS(parse("t,Omega,w,phi\n0,1,1,0\n"), PreconditionError);
  CHECK_THROWS_AS(parse("t,Omega,omega_abs,phi_omega\n0,1,1,0\n0,1,1,0\n"), PreconditionError);
  CHECK_THROWS_AS(parse("t,Omega,omega_abs,phi_omega\n0,1,-1,0\n"), PreconditionError);
  CHECK_THROWS_AS(parse("t,Omega,omega_abs,phi_omega\n0,1,1,0\n1,1,1,4\n"), PreconditionError);
  CHECK_THROWS_AS(parse("t,Omega,omega_abs,phi_omega\n0,1,1\n"), PreconditionError);
  CHECK_THROWS_AS(parse("t,Omega,omega_abs,phi_omega\n0,1,x,0\n"), PreconditionError);
  TabulatedFields tiny = parse("t,Omega,omega_abs,phi_omega\n0,1,1,0\n1,1,1,0\n");
  CHECK_THROWS_AS(make_tabulated_trajectory(tiny), PreconditionError);
}
