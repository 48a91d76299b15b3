// Copyright 2026 The pdqlab Authors
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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "pdqlab/roots.hpp"
#include "pdqlab/special.hpp"

using namespace pdqlab;

TEST_CASE("known roots") {
    CHECK(find_root([](double x) { return special::normal_cdf(x) - 0.5; },
                    interval(-10.0, 10.0)) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(find_root([](double x) { return 1.0 - std::exp(-x) - 0.25; }, interval(0.0, 10.0)) ==
          doctest::Approx(std::log(4.0 / 3.0)).epsilon(1e-12));
    // cdf of the sine-squared bell shape is symmetric about one half
    constexpr double two_pi = 6.283185307179586476925287;
    CHECK(find_root([](double t) { return t - std::sin(two_pi * t) / two_pi - 0.5; },
                    interval(1e-9, 1.0 - 1e-9)) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("round trip through monotone cdfs") {
    auto logistic_cdf = [](double x) { return 1.0 / (1.0 + std::exp(-x)); };
    auto cubic_cdf = [](double x) { return x * x * (3.0 - 2.0 * x); };
    for (int i = 1; i <= 99; ++i) {
        const double u = i / 100.0;
        const double x1 =
            find_root([&](double x) { return logistic_cdf(x) - u; }, interval(-60.0, 60.0));
        CHECK(logistic_cdf(x1) == doctest::Approx(u).epsilon(1e-10));
        const double x2 =
            find_root([&](double x) { return cubic_cdf(x) - u; }, interval(0.0, 1.0));
        CHECK(cubic_cdf(x2) == doctest::Approx(u).epsilon(1e-10));
    }
}

TEST_CASE("bracket without sign change is rejected") {
    CHECK_THROWS_AS(find_root([](double x) { return x * x + 1.0; }, interval(-1.0, 1.0)),
                    bracket_error);
}
