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

#include "twolevel/hamiltonian.hpp"
#include "twolevel/linear.hpp"
#include "twolevel/parametrization.hpp"

namespace twolevel {

enum class Provenance { parametrized, oracle };

struct Propagator {
  Matrix2 u = Matrix2::identity();
  double t = 0.0;
  Provenance provenance = Provenance::parametrized;
};

using PropagatorTrajectory = std::vector<Propagator>;

/// U = [[a, b], [−b*, a*]] with a = cos χ e^{−(i/2)(Θ − φ_ω + φ)},
/// b = −i sin χ e^{−(i/2)(Θ − φ_ω − φ)}.
Propagator build_propagator(const ParametrizationState& p, std::size_t index);

/// Same propagator through e^{(i/2)σ_z φ_ω} e^{−iΦ n·σ} e^{−(i/2)σ_z φ_ω(0)}.
/// Where sin Φ = 0 the axis is undefined and the (a, b) form is returned.
Propagator build_propagator_axis_angle(const ParametrizationState& p, std::size_t index);

PropagatorTrajectory build_trajectory(const ParametrizationState& p);

/// Closed-form ⟨−|_t U(t) |+⟩₀ in terms of χ, φ± and θ, θ₀.
Complex transition_amplitude_formula(const ParametrizationState& p, double theta_t, double theta_0,
                                     std::size_t index);

/// ⟨to|_t U |from⟩₀ as a direct matrix element.
Complex transition_amplitude_general(const Propagator& u, const Eigenframe& frame_t, const Eigenframe& frame_0,
                                     Level from, Level to);

/// ⟨−|_t U(t_i) |+⟩₀ at each grid sample of a propagator trajectory, with the
/// eigenframes taken from `h`.
std::vector<Complex> transition_amplitudes(const PropagatorTrajectory& us, const HamiltonianTrajectory& h,
                                           Level from = Level::plus, Level to = Level::minus);

}  // namespace twolevel
