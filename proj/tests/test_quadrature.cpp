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

#include <cmath>

#include "twolevel/error.hpp"
#include "twolevel/quadrature.hpp"

using namespace twolevel;

TEST_CASE("adaptive_simpson on smooth integrands") {
  CHECK(quad::adaptive_simpson([](double t) { return std::cos(t); }, 0.0, 1.0, 1e-12) ==
        doctest::Approx(std::sin(1.0)).epsilon(1e-12));
  CHECK(quad::adaptive_simpson([](double t) { return std::exp(-t * t); }, -3.0, 3.0, 1e-12) ==
        doctest::Approx(std::sqrt(M_PI) * std::erf(3.0)).epsilon(1e-11));
  CHECK(quad::adaptive_simpson([](double) { return 1.0; }, 2.0, 2.0, 1e-12) == 0.0);
}

TEST_CASE("adaptive_simpson reports the failing subinterval") {
  // 1/sqrt(t) has an integrable but unresolvable endpoint spike at this depth.
  auto f = [](double t) { return t <= 0.0 ? 1e300 : 1.0 / std::sqrt(t); };
  try {
    quad::adaptive_simpson(f, 0.0, 1.0, 1e-14, 6);
    FAIL("expected NumericalError");
  } catch (const NumericalError& e) {
    CHECK(e.interval_begin() == 0.0);
    CHECK(e.interval_end() <= 1.0 / 64.0 + 1e-15);
  }
}

TEST_CASE("adaptive_simpson rejects non-finite integrands") {
  auto f = [](double t) { return 1.0 / (t - 0.5); };
  CHECK_THROWS_AS(quad::adaptive_simpson(f, 0.0, 1.0, 1e-10), NumericalError);
}

TEST_CASE("CumulativeIntegral samples and in-between evaluation") {
  const auto grid = quad::uniform_grid(0.0, 3.0, 64);
  const quad::CumulativeIntegral ci([](double t) { return std::exp(t); }, grid);
  for (std::size_t i = 0; i < grid.size(); ++i) CHECK(ci.samples()[i] == doctest::Approx(std::expm1(grid[i])).epsilon(1e-12));
  for (double t : {0.0, 0.013, 1.5001, 2.99, 3.0}) CHECK(ci(t) == doctest::Approx(std::expm1(t)).epsilon(1e-12));
}

TEST_CASE("grid validation") {
  CHECK_THROWS_AS(quad::validate_grid(std::vector<double>{}), PreconditionError);
  CHECK_THROWS_AS(quad::validate_grid(std::vector<double>{0.0, 1.0, 1.0}), PreconditionError);
  CHECK_THROWS_AS(quad::uniform_grid(1.0, 0.0, 4), PreconditionError);
  const auto g = quad::uniform_grid(0.0, 1.0, 4);
  CHECK(g.size() == 5);
  CHECK(g.back() == 1.0);
}
