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

#include <iosfwd>
#include <string>
#include <vector>

#include "twolevel/hamiltonian.hpp"

namespace twolevel {

/// Samples of (Ω, |ω|, φ_ω) on a strictly increasing time axis.
struct TabulatedFields {
  std::vector<double> t;
  std::vector<double> Omega;
  std::vector<double> omega_abs;
  std::vector<double> phi_omega;
};

/// Parses CSV with header exactly `t,Omega,omega_abs,phi_omega`. Rejects
/// non-increasing t, negative |ω|, and phase jumps ≥ π between rows.
TabulatedFields read_tabulated_csv(std::istream& in);
TabulatedFields read_tabulated_csv_file(const std::string& path);

/// Cubic (modified Akima) interpolation of each field; derivatives come from
/// the interpolant. Needs at least 4 samples.
HamiltonianTrajectory make_tabulated_trajectory(const TabulatedFields& fields, double hbar = 1.0);

}  // namespace twolevel
