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

#include "twolevel/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <boost/math/quadrature/gauss.hpp>
#include <fmt/format.h>

#include "twolevel/error.hpp"

namespace twolevel::quad {

namespace {

struct Worst {
  double a = 0.0;
  double b = 0.0;
  double err = -1.0;
};

double finite_or_throw(const Integrand& f, double t, double a, double b) {
  const double v = f(t);
  if (!std::isfinite(v)) {
    throw NumericalError(fmt::format("quadrature: non-finite integrand at t={:.17g}", t), a, b);
  }
  return v;
}

double simpson_step(const Integrand& f, double a, double fa, double m, double fm, double b,
                    double fb, double whole, double tol, int depth, Worst& worst) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = finite_or_throw(f, lm, a, b);
  const double frm = finite_or_throw(f, rm, a, b);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (std::abs(delta) <= 15.0 * tol || (m - a) <= 8.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(a))) {
    return left + right + delta / 15.0;
  }
  if (depth <= 0) {
    if (std::abs(delta) > worst.err) worst = {a, b, std::abs(delta)};
    return left + right + delta / 15.0;
  }
  return simpson_step(f, a, fa, lm, flm, m, fm, left, 0.5 * tol, depth - 1, worst) +
         simpson_step(f, m, fm, rm, frm, b, fb, right, 0.5 * tol, depth - 1, worst);
}

}  // namespace

double adaptive_simpson(const Integrand& f, double a, double b, double tol, int max_depth) {
  if (b == a) return 0.0;
  const double fa = finite_or_throw(f, a, a, b);
  const double fb = finite_or_throw(f, b, a, b);
  const double m = 0.5 * (a + b);
  const double fm = finite_or_throw(f, m, a, b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  Worst worst;
  const double result = simpson_step(f, a, fa, m, fm, b, fb, whole, tol, max_depth, worst);
  if (worst.err >= 0.0) {
    throw NumericalError(
        fmt::format("quadrature: tolerance {:.3g} not met on [{:.17g}, {:.17g}] (error estimate {:.3g})",
                    tol, worst.a, worst.b, worst.err / 15.0),
        worst.a, worst.b);
  }
  return result;
}

double gauss_legendre(const Integrand& f, double a, double b) {
  if (b == a) return 0.0;
  return boost::math::quadrature::gauss<double, 10>::integrate(f, a, b);
}

void validate_grid(std::span<const double> grid) {
  if (grid.empty()) throw PreconditionError("grid: empty");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!std::isfinite(grid[i])) throw PreconditionError("grid: non-finite sample");
    if (i > 0 && !(grid[i] > grid[i - 1])) {
      throw PreconditionError(fmt::format("grid: not strictly increasing at index {}", i));
    }
  }
}

std::vector<double> uniform_grid(double t0, double t1, std::size_t n) {
  if (n == 0 || !(t1 > t0)) throw PreconditionError("uniform_grid: need n > 0 and t1 > t0");
  std::vector<double> g(n + 1);
  const double h = (t1 - t0) / static_cast<double>(n);
  for (std::size_t i = 0; i <= n; ++i) g[i] = t0 + h * static_cast<double>(i);
  g[n] = t1;
  return g;
}

CumulativeIntegral::CumulativeIntegral(Integrand f, std::vector<double> grid, const Options& opts)
    : f_(std::move(f)), grid_(std::move(grid)) {
  validate_grid(grid_);
  values_.assign(grid_.size(), 0.0);
  const double span = grid_.back() - grid_.front();
  for (std::size_t i = 1; i < grid_.size(); ++i) {
    const double share = opts.abs_tol * (grid_[i] - grid_[i - 1]) / span;
    values_[i] = values_[i - 1] + adaptive_simpson(f_, grid_[i - 1], grid_[i], share, opts.max_depth);
  }
}

double CumulativeIntegral::operator()(double t) const {
  if (grid_.empty()) throw PreconditionError("CumulativeIntegral: empty");
  if (grid_.size() == 1) return values_.front() + gauss_legendre(f_, grid_.front(), t);
  auto it = std::upper_bound(grid_.begin(), grid_.end(), t);
  std::size_t hi = static_cast<std::size_t>(std::clamp<std::ptrdiff_t>(it - grid_.begin(), 1,
                                                                         static_cast<std::ptrdiff_t>(grid_.size() - 1)));
  const std::size_t lo = hi - 1;
  if (t - grid_[lo] <= grid_[hi] - t) return values_[lo] + gauss_legendre(f_, grid_[lo], t);
  return values_[hi] - gauss_legendre(f_, t, grid_[hi]);
}

}  // namespace twolevel::quad
