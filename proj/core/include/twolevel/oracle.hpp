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

#pragma once

#include <cstddef>
#include <vector>

#include "twolevel/evolution.hpp"
#include "twolevel/hamiltonian.hpp"

namespace twolevel {

/// Brute-force propagator settings. Each step of length `step` is checked by
/// step doubling; a step whose full/two-half difference exceeds `tol` is split
/// in two, at most `max_halvings` times.
struct IntegratorConfig {
  double step = 1e-2;
  double tol = 1e-12;
  int max_halvings = 24;
  /// Project U back onto the unitary group after every output sample.
  bool renormalize = false;
};

struct OracleResult {
  PropagatorTrajectory trajectory;
  /// max over samples of ‖U†U − I‖_F before any renormalization.
  double unitarity_drift = 0.0;
  std::size_t rk4_steps = 0;
  int deepest_halving = 0;
};

/// Step bound resolving the initial transient: (1/50)·min(1/ν₀, 1/α).
double transient_step_bound(double nu0, double alpha);

/// Integrates iħ dU/dt = H(t) U from the first sample (U = I there) and
/// reports U at every sample. Throws NumericalError naming the interval where
/// max_halvings ran out.
OracleResult integrate(const HamiltonianTrajectory& h, const std::vector<double>& samples,
                       const IntegratorConfig& cfg = {});

/// Convenience overload returning U at t = 0 and t = t_end.
OracleResult integrate(const HamiltonianTrajectory& h, double t_end, const IntegratorConfig& cfg = {});

struct ComparisonReport {
  std::vector<double> distance;
  double max_frob = 0.0;
  double argmax_t = 0.0;
  double max_amp_discrepancy = 0.0;
};

/// Per-sample Frobenius distance and the worst ⟨−|U|+⟩ discrepancy, eigenframes
/// from `h`. Global phase is not factored out. Throws PreconditionError on
/// mismatched grids.
ComparisonReport compare_trajectories(const PropagatorTrajectory& a, const PropagatorTrajectory& b,
                                      const HamiltonianTrajectory& h);

/// Nearest unitary (polar factor) of a near-unitary 2×2 matrix.
Matrix2 project_unitary(const Matrix2& u);

}  // namespace twolevel
