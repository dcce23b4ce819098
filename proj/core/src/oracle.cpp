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

#include "twolevel/oracle.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "twolevel/error.hpp"

namespace twolevel {

namespace {

class Stepper {
 public:
  Stepper(const HamiltonianTrajectory& h, const IntegratorConfig& cfg) : h_(h), cfg_(cfg) {}

  void advance(Matrix2& u, double t, double dt, int depth) {
    const Matrix2 full = rk4(u, t, dt);
    const Matrix2 half = rk4(rk4(u, t, 0.5 * dt), t + 0.5 * dt, 0.5 * dt);
    deepest = std::max(deepest, depth);
    if (frob_distance(full, half) <= cfg_.tol) {
      u = half;
      return;
    }
    if (depth >= cfg_.max_halvings) {
      throw NumericalError(fmt::format("oracle: step-doubling error {:.3g} > tol {:.3g} after {} halvings on "
                                       "[{:.17g}, {:.17g}]",
                                       frob_distance(full, half), cfg_.tol, depth, t, t + dt),
                           t, t + dt);
    }
    advance(u, t, 0.5 * dt, depth + 1);
    advance(u, t + 0.5 * dt, 0.5 * dt, depth + 1);
  }

  std::size_t steps = 0;
  int deepest = 0;

 private:
  Matrix2 rhs(double t, const Matrix2& u) const {
    return Complex{0.0, -1.0 / h_.hbar} * (hamiltonian_matrix(h_, t) * u);
  }

  Matrix2 rk4(const Matrix2& u, double t, double dt) {
    ++steps;
    const Complex half{0.5 * dt, 0.0};
    const Matrix2 k1 = rhs(t, u);
    const Matrix2 k2 = rhs(t + 0.5 * dt, u + half * k1);
    const Matrix2 k3 = rhs(t + 0.5 * dt, u + half * k2);
    const Matrix2 k4 = rhs(t + dt, u + Complex{dt, 0.0} * k3);
    return u + Complex{dt / 6.0, 0.0} * (k1 + Complex{2.0, 0.0} * k2 + Complex{2.0, 0.0} * k3 + k4);
  }

  const HamiltonianTrajectory& h_;
  const IntegratorConfig& cfg_;
};

}  // namespace

double transient_step_bound(double nu0, double alpha) {
  if (!(nu0 > 0.0) || !(alpha > 0.0)) throw PreconditionError("transient_step_bound: nu0, alpha must be > 0");
  return std::min(1.0 / nu0, 1.0 / alpha) / 50.0;
}

Matrix2 project_unitary(const Matrix2& u) {
  Matrix2 x = u;
  for (int k = 0; k < 3; ++k) {
    const Complex d = x.det();
    // (X⁻¹)† for a 2×2 matrix.
    const Matrix2 inv_dag{std::conj(x.m11 / d), std::conj(-x.m10 / d), std::conj(-x.m01 / d), std::conj(x.m00 / d)};
    x = Complex{0.5, 0.0} * (x + inv_dag);
  }
  x.unitary = true;
  return x;
}

OracleResult integrate(const HamiltonianTrajectory& h, const std::vector<double>& samples,
                       const IntegratorConfig& cfg) {
  if (!(cfg.step > 0.0) || !(cfg.tol > 0.0) || cfg.max_halvings < 0) {
    throw PreconditionError("oracle: step > 0, tol > 0 and max_halvings >= 0 required");
  }
  quad::validate_grid(samples);
  h.require_in_domain(samples.front());
  h.require_in_domain(samples.back());

  Stepper stepper(h, cfg);
  OracleResult out;
  out.trajectory.reserve(samples.size());
  Matrix2 u = Matrix2::identity();
  out.trajectory.push_back({u, samples.front(), Provenance::oracle});
  for (std::size_t i = 1; i < samples.size(); ++i) {
    const double t0 = samples[i - 1];
    const double span = samples[i] - t0;
    const auto n = static_cast<std::size_t>(std::ceil(span / cfg.step - 1e-9));
    const std::size_t substeps = std::max<std::size_t>(1, n);
    const double dt = span / static_cast<double>(substeps);
    for (std::size_t k = 0; k < substeps; ++k) stepper.advance(u, t0 + dt * static_cast<double>(k), dt, 0);
    out.unitarity_drift = std::max(out.unitarity_drift, unitarity_defect(u));
    if (cfg.renormalize) u = project_unitary(u);
    u.unitary = true;
    out.trajectory.push_back({u, samples[i], Provenance::oracle});
  }
  out.rk4_steps = stepper.steps;
  out.deepest_halving = stepper.deepest;
  return out;
}

OracleResult integrate(const HamiltonianTrajectory& h, double t_end, const IntegratorConfig& cfg) {
  return integrate(h, std::vector<double>{0.0, t_end}, cfg);
}

ComparisonReport compare_trajectories(const PropagatorTrajectory& a, const PropagatorTrajectory& b,
                                      const HamiltonianTrajectory& h) {
  if (a.size() != b.size() || a.empty()) throw PreconditionError("compare_trajectories: grid mismatch (size)");
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::abs(a[i].t - b[i].t) > 1e-12 * std::max(1.0, std::abs(a[i].t))) {
      throw PreconditionError(fmt::format("compare_trajectories: grid mismatch at index {}", i));
    }
  }
  ComparisonReport r;
  r.distance.resize(a.size());
  const Eigenframe f0 = eigenframe_at(h, a.front().t);
  for (std::size_t i = 0; i < a.size(); ++i) {
    r.distance[i] = frob_distance(a[i].u, b[i].u);
    if (r.distance[i] > r.max_frob) {
      r.max_frob = r.distance[i];
      r.argmax_t = a[i].t;
    }
    const Eigenframe ft = eigenframe_at(h, a[i].t);
    const Complex da = transition_amplitude_general(a[i], ft, f0, Level::plus, Level::minus);
    const Complex db = transition_amplitude_general(b[i], ft, f0, Level::plus, Level::minus);
    r.max_amp_discrepancy = std::max(r.max_amp_discrepancy, std::abs(da - db));
  }
  return r;
}

}  // namespace twolevel
