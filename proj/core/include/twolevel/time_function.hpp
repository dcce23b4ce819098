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

#include <algorithm>
#include <cmath>
#include <functional>
#include <type_traits>

namespace twolevel {

/// Central-difference step used when no analytic derivative is supplied.
inline double fd_step(double t) noexcept { return 1e-6 * std::max(1.0, std::abs(t)); }

/// Scalar function of time with an optional analytic derivative. Must be
/// pure: the same t always yields the same value.
class TimeFunction {
 public:
  using Fn = std::function<double(double)>;

  TimeFunction() = default;
  TimeFunction(Fn value) : value_(std::move(value)) {}  // NOLINT: implicit by intent
  template <class F>
    requires(std::is_invocable_r_v<double, F, double> && !std::is_same_v<std::decay_t<F>, Fn> &&
             !std::is_same_v<std::decay_t<F>, TimeFunction>)
  TimeFunction(F value) : value_(std::move(value)) {}  // NOLINT
  TimeFunction(Fn value, Fn derivative) : value_(std::move(value)), derivative_(std::move(derivative)) {}

  static TimeFunction constant(double c);

  explicit operator bool() const noexcept { return static_cast<bool>(value_); }
  bool has_derivative() const noexcept { return static_cast<bool>(derivative_); }

  double operator()(double t) const { return value_(t); }

  /// Analytic derivative when available, otherwise a central difference with
  /// step 1e-6·max(1, |t|).
  double derivative(double t) const;

  /// Derivative as a TimeFunction (analytic second derivative is not tracked).
  TimeFunction derivative_function() const;

 private:
  Fn value_;
  Fn derivative_;
};

}  // namespace twolevel
