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

#include "twolevel/evolution.hpp"

#include <cmath>

#include <fmt/format.h>

#include "twolevel/error.hpp"

namespace twolevel {

namespace {

void require_index(const ParametrizationState& p, std::size_t index) {
  if (index >= p.size()) {
    throw PreconditionError(fmt::format("propagator: index {} outside grid of {} samples", index, p.size()));
  }
}

}  // namespace

Propagator build_propagator(const ParametrizationState& p, std::size_t index) {
  require_index(p, index);
  const double chi = p.chi[index];
  const double Theta = p.Theta[index];
  const double phi = p.phi[index];
  const double phi_w = p.phi_omega[index];
  const Complex a = std::cos(chi) * std::polar(1.0, -0.5 * (Theta - phi_w + phi));
  const Complex b = Complex{0.0, -std::sin(chi)} * std::polar(1.0, -0.5 * (Theta - phi_w - phi));
  return {Matrix2{a, b, -std::conj(b), std::conj(a), true}, p.grid[index], Provenance::parametrized};
}

Propagator build_propagator_axis_angle(const ParametrizationState& p, std::size_t index) {
  require_index(p, index);
  const double sin_Phi = std::sin(p.Phi[index]);
  if (sin_Phi == 0.0) return build_propagator(p, index);
  const Matrix2 u = z_phase(p.phi_omega[index]) * su2_rotation(p.Phi[index], p.n[index]) * z_phase(-p.phi_omega0());
  return {u, p.grid[index], Provenance::parametrized};
}

PropagatorTrajectory build_trajectory(const ParametrizationState& p) {
  PropagatorTrajectory out;
  out.reserve(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) out.push_back(build_propagator(p, i));
  return out;
}

Complex transition_amplitude_formula(const ParametrizationState& p, double theta_t, double theta_0,
                                     std::size_t index) {
  require_index(p, index);
  const double cc = std::cos(p.chi[index]);
  const double sc = std::sin(p.chi[index]);
  const double pp = p.phi_plus[index];
  const double pm = p.phi_minus[index];
  const double dm = 0.5 * (theta_t - theta_0);
  const double dp = 0.5 * (theta_t + theta_0);
  const double re = cc * std::cos(pp) * std::sin(dm) - sc * std::sin(pm) * std::cos(dm);
  const double im = sc * std::cos(pm) * std::cos(dp) - cc * std::sin(pp) * std::sin(dp);
  return {re, im};
}

Complex transition_amplitude_general(const Propagator& u, const Eigenframe& frame_t, const Eigenframe& frame_0,
                                     Level from, Level to) {
  return matrix_element(frame_t.ket(to), u.u, frame_0.ket(from));
}

std::vector<Complex> transition_amplitudes(const PropagatorTrajectory& us, const HamiltonianTrajectory& h,
                                           Level from, Level to) {
  std::vector<Complex> out;
  if (us.empty()) return out;
  out.reserve(us.size());
  const Eigenframe f0 = eigenframe_at(h, us.front().t);
  for (const Propagator& u : us) out.push_back(transition_amplitude_general(u, eigenframe_at(h, u.t), f0, from, to));
  return out;
}

}  // namespace twolevel
