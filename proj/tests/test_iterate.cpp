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

#include "pdqlab/iterate.hpp"
#include "pdqlab/catalog.hpp"
#include "pdqlab/quadrature.hpp"

using namespace pdqlab;

namespace {

// Exact kappa_n sequences from the moment closed forms:
//   -ln x on (0,1):  mu_n = n!            -> kappa_n = (n+2)/(n+1)
//   exponential:     mu_n = 1/n           -> kappa_n = (n+1)^2/(n(n+2))
//   square law b=2:  mu_n = 2^n/(n+1)     -> kappa_n = (n+2)^2/((n+1)(n+3))
//   normal:          mu_n = (2pi)^((1-n)/2)/sqrt(n) -> (n+1)/sqrt(n(n+2))
//   sine-squared:    central binomial ratios -> n(2n+1)/((n+1)(2n-1))
double kappa_loglog(int n) { return (n + 2.0) / (n + 1.0); }
double kappa_exponential(int n) { return (n + 1.0) * (n + 1.0) / (n * (n + 2.0)); }
double kappa_power2(int n) { return (n + 2.0) * (n + 2.0) / ((n + 1.0) * (n + 3.0)); }
double kappa_normal(int n) { return (n + 1.0) / std::sqrt(n * (n + 2.0)); }
double kappa_cauchy(int n) { return n * (2.0 * n + 1.0) / ((n + 1.0) * (2.0 * n - 1.0)); }

}  // namespace

TEST_CASE("closed-form moments of the -ln x density") {
    const moment_sequence mu = compute_moments(make_family("loglog"), 12);
    CHECK(mu.all_finite_up_to == 12);
    CHECK(mu.moment(1) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(mu.moment(4) == doctest::Approx(24.0).epsilon(1e-12));
    CHECK(mu.moment(12) == doctest::Approx(479001600.0).epsilon(1e-12));
}

TEST_CASE("quadrature reproduces the factorial moments") {
    // independent route: integrate (-ln x)^n directly in x space
    for (int n : {2, 4, 8, 12}) {
        CAPTURE(n);
        const double direct = integrate(
            [n](double x) { return std::pow(-std::log(x), static_cast<double>(n)); },
            interval::unit(), {});
        CHECK(direct == doctest::Approx(std::tgamma(n + 1.0)).epsilon(1e-9));
    }
    // and through fQ^{n-1} on (0,1) with the quantile inversion
    distribution d = make_family("loglog");
    d.log_moment = nullptr;
    const moment_sequence mu = compute_moments(d, 5);
    CHECK(mu.all_finite_up_to == 5);
    CHECK(mu.moment(4) == doctest::Approx(24.0).epsilon(1e-9));
    CHECK(mu.moment(5) == doctest::Approx(120.0).epsilon(1e-9));
}

TEST_CASE("normal third moment two ways") {
    constexpr double pi = 3.14159265358979323846;
    const double closed = 1.0 / (2.0 * pi * std::sqrt(3.0));
    CHECK(compute_moments(make_family("normal"), 3).moment(3) ==
          doctest::Approx(closed).epsilon(1e-12));
    distribution d = make_family("normal");
    d.log_moment = nullptr;
    CHECK(compute_moments(d, 3).moment(3) == doctest::Approx(closed).epsilon(1e-9));
}

TEST_CASE("moment engine diagnostics for -ln x") {
    const moment_sequence mu = compute_moments(make_family("loglog"), 14);
    const iteration_trace t = kappa_diagnostics(mu, 6);
    REQUIRE(t.steps.size() >= 8);
    for (const auto& s : t.steps) {
        CHECK(s.kappa == doctest::Approx(kappa_loglog(s.n)).epsilon(1e-12));
        CHECK(s.l2 == doctest::Approx(std::sqrt(1.0 / (s.n + 1.0))).epsilon(1e-9));
    }
    CHECK(t.steps[2].l2 == doctest::Approx(0.5).epsilon(1e-9));
    // L_4 bound at the first step: nu_{1,4} - 2 nu_{1,3} + nu_{1,2} + kappa_1 - 1
    // with nu_{1,4} = kappa_3 kappa_2^2 kappa_1^3 = 7.5, nu_{1,3} = 3
    bool found = false;
    for (const auto& [r, bound] : t.steps[0].lr) {
        if (r == 4.0) {
            found = true;
            CHECK(bound == doctest::Approx(7.5 - 6.0 + 1.5 + 0.5).epsilon(1e-9));
        }
    }
    CHECK(found);
    CHECK(t.engine == "moments");
}

TEST_CASE("uniform is diagnosed as converged at once") {
    const moment_sequence mu = compute_moments(make_family("uniform"), 8);
    const iteration_trace t = kappa_diagnostics(mu, 4);
    for (const auto& s : t.steps) {
        CHECK(s.kappa == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(s.l2 == doctest::Approx(0.0));
    }
    CHECK(t.verdict == "converged");
}

TEST_CASE("moment engine matches the exact kappa sequences") {
    auto check_engine = [](const distribution& d, double (*exact)(int)) {
        const moment_sequence mu = compute_moments(d, 10);
        const iteration_trace t = kappa_diagnostics(mu, 3);
        for (const auto& s : t.steps) {
            CAPTURE(d.name);
            CAPTURE(s.n);
            CHECK(s.kappa == doctest::Approx(exact(s.n)).epsilon(1e-10));
        }
    };
    check_engine(make_family("loglog"), kappa_loglog);
    check_engine(make_family("exponential"), kappa_exponential);
    check_engine(make_family("power", {{"b", 2.0}}), kappa_power2);
    check_engine(make_family("normal"), kappa_normal);
    check_engine(make_family("cauchy"), kappa_cauchy);
}

TEST_CASE("grid engine matches the exact kappa sequences") {
    auto check_grid = [](const std::string& spec, double (*exact)(int), int steps) {
        const iteration_trace t = iterate_grid(pdq::of(parse_family_spec(spec)), steps, {});
        REQUIRE(static_cast<int>(t.steps.size()) == steps);
        for (const auto& s : t.steps) {
            CAPTURE(spec);
            CAPTURE(s.n);
            CHECK(s.kappa == doctest::Approx(exact(s.n)).epsilon(1e-6));
        }
    };
    check_grid("exponential", kappa_exponential, 4);
    check_grid("power:b=2", kappa_power2, 4);
    check_grid("cauchy", kappa_cauchy, 4);
    check_grid("loglog", kappa_loglog, 4);
}

TEST_CASE("grid trace satisfies the squared-distance identity") {
    const iteration_trace t = iterate_grid(pdq::of(make_family("cauchy")), 4, {4.0});
    for (const auto& s : t.steps) {
        CHECK(s.l2 * s.l2 == doctest::Approx(s.kappa - 1.0).epsilon(1e-8));
        CHECK(s.kappa >= 1.0 - 1e-10);
    }
}

TEST_CASE("empirical L4 never exceeds the moment bound") {
    const moment_sequence mu = compute_moments(make_family("cauchy"), 12);
    const iteration_trace bounds = kappa_diagnostics(mu, 4);
    const iteration_trace empirical = iterate_grid(pdq::of(make_family("cauchy")), 6, {4.0});
    for (std::size_t i = 0; i < empirical.steps.size(); ++i) {
        if (i >= bounds.steps.size() || bounds.steps[i].lr.empty()) continue;
        const double emp = empirical.steps[i].lr[0].second;
        const double bnd = bounds.steps[i].lr[0].second;
        CHECK(emp <= bnd + 1e-8);
    }
}

TEST_CASE("sup norms decrease along the iteration of a bounded shape") {
    const iteration_trace t = iterate_grid(pdq::of(make_family("cauchy")), 6, {});
    REQUIRE(t.steps.size() == 6);
    CHECK(t.steps[0].sup_norm == doctest::Approx(2.0).epsilon(1e-9));
    for (std::size_t i = 1; i < t.steps.size(); ++i)
        CHECK(t.steps[i].sup_norm <= t.steps[i - 1].sup_norm + 1e-9);
}

TEST_CASE("iteration truncates at the star order") {
    const iteration_trace t = iterate_grid(pdq::of(make_family("power", {{"b", 0.75}})), 3, {});
    REQUIRE(t.truncated_at_order.has_value());
    CHECK(*t.truncated_at_order == 2);
    CHECK(t.verdict == "star-order-2");
    REQUIRE(t.steps.size() == 2);
    CHECK(t.steps[0].kappa == doctest::Approx(4.0 / 3.0).epsilon(1e-8));
    CHECK(std::isinf(t.steps[1].kappa));
}

TEST_CASE("insufficient moment order is rejected") {
    moment_sequence mu;
    mu.log_mu = {0.0, inf, inf};
    mu.all_finite_up_to = 1;
    CHECK_THROWS_AS(kappa_diagnostics(mu, 4), numeric_error);
}
