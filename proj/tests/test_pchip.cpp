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
#include <vector>

#include "pdqlab/pchip.hpp"
#include "pdqlab/rng.hpp"

using namespace pdqlab;

TEST_CASE("identity grid reproduces the identity") {
    std::vector<double> x, y;
    for (int i = 0; i <= 32; ++i) {
        x.push_back(i / 32.0);
        y.push_back(i / 32.0);
    }
    monotone_cubic f(x, y, true);
    for (double t : {0.013, 0.25, 0.5001, 0.93})
        CHECK(f(t) == doctest::Approx(t).epsilon(1e-14));
}

TEST_CASE("two-node grid is the linear segment") {
    monotone_cubic f({0.0, 1.0}, {0.0, 1.0}, true);
    CHECK(f(0.5) == doctest::Approx(0.5));
    CHECK(f.inverse(0.5) == doctest::Approx(0.5));
}

TEST_CASE("node values reproduced exactly") {
    std::vector<double> x{0.0, 0.1, 0.35, 0.7, 1.0};
    std::vector<double> y{1.0, 1.3, 2.0, 2.1, 5.0};
    monotone_cubic f(x, y);
    for (std::size_t i = 0; i < x.size(); ++i) CHECK(f(x[i]) == y[i]);
}

TEST_CASE("smooth cdf sampled on a dense grid inverts to 1e-8") {
    constexpr double two_pi = 6.283185307179586476925287;
    auto cdf = [](double t) { return t - std::sin(two_pi * t) / two_pi; };
    std::vector<double> x, y;
    const int n = 4097;
    for (int i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) / (n - 1);
        x.push_back(t);
        y.push_back(cdf(t));
    }
    // strictify the flat-ish endpoints so the inverse is defined
    monotone_cubic f(x, y);
    CHECK(f.inverse(cdf(0.3)) == doctest::Approx(0.3).epsilon(1e-8));
    CHECK(f.inverse(cdf(0.77)) == doctest::Approx(0.77).epsilon(1e-8));
}

TEST_CASE("monotonicity violation is reported") {
    CHECK_THROWS_AS(monotone_cubic({0.0, 0.5, 1.0}, {0.0, 1.0, 0.5}, true),
                    monotonicity_error);
}

TEST_CASE("inverse round trip on random increasing data") {
    counter_rng rng(2024);
    std::vector<double> x{0.0}, y{0.0};
    for (int i = 0; i < 200; ++i) {
        x.push_back(x.back() + 0.001 + rng.next_uniform());
        y.push_back(y.back() + 0.001 + rng.next_uniform());
    }
    monotone_cubic f(x, y, true);
    for (int i = 0; i < 1000; ++i) {
        const double t = x.front() + (x.back() - x.front()) * rng.next_uniform();
        CHECK(f.inverse(f(t)) == doctest::Approx(t).epsilon(1e-8));
    }
}
