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

#include "pdqlab/grid.hpp"
#include "pdqlab/rng.hpp"

using namespace pdqlab;

TEST_CASE("canonical nodes are strictly increasing and span [0,1]") {
    const auto nodes = canonical_nodes(grid_spec{});
    CHECK(nodes.front() == 0.0);
    CHECK(nodes.back() == 1.0);
    for (std::size_t i = 1; i < nodes.size(); ++i) CHECK(nodes[i] > nodes[i - 1]);
    CHECK(nodes.size() >= 4000);
}

TEST_CASE("flat density tabulates to the identity cdf") {
    auto g = density_grid::build([](double) { return 1.0; }, {0.0, 0.0});
    CHECK(g.raw_mass() == doctest::Approx(1.0).epsilon(1e-12));
    for (double u : {1e-14, 1e-6, 0.2, 0.5, 0.9, 1.0 - 1e-9}) {
        CHECK(g.cdf(u) == doctest::Approx(u).epsilon(1e-10));
        CHECK(g.quantile(u) == doctest::Approx(u).epsilon(1e-10));
    }
    CHECK(g.sup() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("linear density: cdf u^2 and inverse sqrt") {
    auto g = density_grid::build([](double u) { return 2.0 * u; }, {1.0, 0.0});
    for (double u : {1e-9, 0.001, 0.3, 0.5, 0.99}) {
        CHECK(g.cdf(u) == doctest::Approx(u * u).epsilon(1e-9));
        CHECK(g.quantile(u * u) == doctest::Approx(u).epsilon(1e-8));
    }
}

TEST_CASE("square-root singularity in the derivative") {
    auto g = density_grid::build([](double u) { return 1.5 * std::sqrt(u); }, {0.5, 0.0});
    CHECK(g.raw_mass() == doctest::Approx(1.0).epsilon(1e-10));
    for (double u : {1e-13, 1e-7, 0.04, 0.5, 0.97}) {
        CHECK(g.cdf(u) == doctest::Approx(std::pow(u, 1.5)).epsilon(1e-8));
    }
    // kappa of this shape: 2.25 * 1/2
    const double k = g.integrate_transform([](double, double v) { return v * v; });
    CHECK(k == doctest::Approx(1.125).epsilon(1e-9));
}

TEST_CASE("inverse-power singular density is handled end to end") {
    // density ~ u^{-1/3}, integrable; mass (2/3)^-1 ... with c = 2/3 the
    // total is exactly 1
    auto g = density_grid::build([](double u) { return (2.0 / 3.0) * std::pow(u, -1.0 / 3.0); },
                                 {-1.0 / 3.0, 0.0});
    CHECK(g.raw_mass() == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(g.cdf(0.2) == doctest::Approx(std::pow(0.2, 2.0 / 3.0)).epsilon(1e-9));
    CHECK(g.sup() == inf);
}

TEST_CASE("fitted exponents recover the power behavior") {
    auto g = density_grid::build([](double u) { return 1.5 * std::sqrt(u); },
                                 {std::nullopt, std::nullopt});
    CHECK(*g.exponents().p0 == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(std::abs(*g.exponents().p1) < 0.01);
}

TEST_CASE("import from tabulated values matches the source") {
    auto source = density_grid::build([](double u) { return 6.0 * u * (1.0 - u); }, {1.0, 1.0});
    grid_function gf;
    gf.nodes = source.nodes();
    gf.values = source.values();
    gf.nodes.insert(gf.nodes.begin(), 0.0);
    gf.nodes.push_back(1.0);
    gf.values.insert(gf.values.begin(), 0.0);
    gf.values.push_back(0.0);
    gf.exponents = source.exponents();
    auto copy = density_grid::from_values(gf);
    for (double u : {0.001, 0.25, 0.5, 0.9}) {
        // between nodes the import interpolates the tabulated values
        CHECK(copy.density(u) == doctest::Approx(6.0 * u * (1.0 - u)).epsilon(1e-6));
        CHECK(copy.cdf(u) == doctest::Approx(source.cdf(u)).epsilon(1e-7));
    }
}

TEST_CASE("monotone interpolant rejects non-monotone grid functions") {
    grid_function gf;
    gf.nodes = {0.0, 0.4, 1.0};
    gf.values = {0.0, 1.0, 0.5};
    CHECK_THROWS_AS(monotone_interpolant(gf, true), monotonicity_error);
}
