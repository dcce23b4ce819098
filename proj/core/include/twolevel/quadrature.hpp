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
#include <functional>
#include <span>
#include <vector>

namespace twolevel::quad {

using Integrand = std::function<double(double)>;

struct Options {
  /// Absolute tolerance for the whole grid; each interval gets a share
  /// proportional to its length.
  double abs_tol = 1e-10;
  int max_depth = 40;
};

/// Adaptive Simpson with Richardson correction on [a, b]. Throws
/// NumericalError naming the worst subinterval when max_depth is exhausted
/// or the integrand produces a non-finite value.
double adaptive_simpson(const Integrand& f, double a, double b, double tol, int max_depth = 40);

/// 10-point Gauss–Legendre on [a, b]; used for short sub-interval evaluations.
double gauss_legendre(const Integrand& f, double a, double b);

/// Checks that the grid is non-empty and strictly increasing.
void validate_grid(std::span<const double> grid);

/// Uniform grid of n + 1 samples on [t0, t1].
std::vector<double> uniform_grid(double t0, double t1, std::size_t n);

/// Running integral of `f` sampled on a grid, evaluable at any t in the grid's
/// span: the nearest sample plus a Gauss–Legendre correction.
class CumulativeIntegral {
 public:
  CumulativeIntegral() = default;
  CumulativeIntegral(Integrand f, std::vector<double> grid, const Options& opts = {});

  const std::vector<double>& grid() const noexcept { return grid_; }
  const std::vector<double>& samples() const noexcept { return values_; }
  double operator()(double t) const;

 private:
  Integrand f_;
  std::vector<double> grid_;
  std::vector<double> values_;
};

}  // namespace twolevel::quad
