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

#include "pdqlab/catalog.hpp"
#include "pdqlab/pdq.hpp"

using namespace pdqlab;

namespace {

double sup_diff(const pdq& f, const std::function<double(double)>& target) {
    double worst = 0.0;
    for (int i = 1; i <= 99; ++i) {
        const double u = i / 100.0;
        worst = std::max(worst, std::abs(f.density(u) - target(u)));
    }
    return worst;
}

// The law with density exp(x) on the negative half line.
distribution negative_exponential() {
    distribution d;
    d.name = "negexp";
    d.support = interval(-inf, 0.0);
    d.pdf = [](double x) { return std::exp(x); };
    d.cdf = [](double x) { return std::exp(x); };
    d.quantile = [](double u) { return std::log(u); };
    d.density_quantile = [](double u) { return u; };
    d.fq_exponents = {1.0, 0.0};
    d.bounded_pdf = true;
    return d;
}

}  // namespace

TEST_CASE("the flat density is the fixed point") {
    const pdq u = pdq::uniform();
    const pdq star = star_transform(u);
    CHECK(sup_diff(star, [](double) { return 1.0; }) < 1e-8);
    CHECK(star.kappa_parent() == doctest::Approx(1.0).epsilon(1e-10));
    // and a non-flat shape does not collapse to it in one step
    const pdq n1 = star_transform(make_family("normal"));
    CHECK(sup_diff(n1, [](double) { return 1.0; }) > 0.1);
}

TEST_CASE("density exp(x) on x<0 maps to the 2u shape") {
    const pdq f = star_transform(negative_exponential());
    CHECK(f.kappa_parent() == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(sup_diff(f, [](double u) { return 2.0 * u; }) < 1e-8);
}

TEST_CASE("known normalizers") {
    constexpr double pi = 3.14159265358979323846;
    CHECK(star_transform(make_family("exponential")).kappa_parent() ==
          doctest::Approx(0.5).epsilon(1e-10));
    CHECK(star_transform(make_family("normal")).kappa_parent() ==
          doctest::Approx(1.0 / (2.0 * std::sqrt(pi))).epsilon(1e-10));
    CHECK(star_transform(make_family("cauchy")).kappa_parent() ==
          doctest::Approx(1.0 / (2.0 * pi)).epsilon(1e-10));
    CHECK(star_transform(make_family("power", {{"b", 2.0}})).kappa_parent() ==
          doctest::Approx(4.0 / 3.0).epsilon(1e-10));
}

TEST_CASE("transform of a transform follows the power recursion") {
    // the 3/4-power shape maps to (1/2) u^{-1/2}, whose square is not
    // integrable, so the next application must fail
    const pdq f1 = pdq::of(make_family("power", {{"b", 0.75}}));
    const pdq f2 = star_transform(f1);
    CHECK(f2.kappa_parent() == doctest::Approx(4.0 / 3.0).epsilon(1e-8));
    double worst = 0.0;
    for (int i = 1; i <= 99; ++i) {
        const double u = i / 100.0;
        worst = std::max(worst, std::abs(f2.density(u) - 0.5 / std::sqrt(u)));
    }
    CHECK(worst < 1e-6);
    CHECK_THROWS_AS(star_transform(f2), not_square_integrable);
}

TEST_CASE("every transform output integrates to one") {
    for (const std::string spec :
         {"normal", "cauchy", "gumbel", "pareto:a=2", "beta:a=2,b=3", "loglog"}) {
        CAPTURE(spec);
        const pdq f = star_transform(parse_family_spec(spec));
        const double mass = f.integrate_transform([](double, double g) { return g; });
        CHECK(mass == doctest::Approx(1.0).epsilon(1e-9));
        // cdf and quantile are mutually inverse
        for (double v : {0.001, 0.3, 0.5, 0.99}) {
            CHECK(f.cdf(f.quantile(v)) == doctest::Approx(v).epsilon(1e-9));
        }
    }
}

TEST_CASE("location and scale leave the shape unchanged") {
    for (const std::string name : {"normal", "gumbel", "exponential"}) {
        CAPTURE(name);
        const distribution base = make_family(name);
        const pdq standard = star_transform(base);
        const pdq shifted = star_transform(affine(base, 3.0, 5.0));
        double worst = 0.0;
        for (int i = 1; i <= 99; ++i) {
            const double u = i / 100.0;
            worst = std::max(worst, std::abs(standard.density(u) - shifted.density(u)));
        }
        CHECK(worst < 1e-8);
    }
}

TEST_CASE("star order by the exact power recursion") {
    auto order = [](double b) { return star_order_of(make_family("power", {{"b", b}}), 10); };
    CHECK_FALSE(order(0.75).is_infinite);
    CHECK(order(0.75).order == 2);
    CHECK(order(0.75).method == star_order_result::method_kind::closed_form);
    CHECK_FALSE(order(0.6).is_infinite);
    CHECK(order(0.6).order == 1);
    CHECK(order(2.0).is_infinite);
    CHECK(order(2.0).verified_up_to == 10);
    CHECK(order(1.0).is_infinite);
}

TEST_CASE("star order by moment finiteness") {
    const auto chisq = star_order_of(make_family("chisq", {{"nu", 1.5}}), 10);
    CHECK_FALSE(chisq.is_infinite);
    CHECK(chisq.order == 2);
    for (const std::string spec : {"normal", "cauchy", "pareto:a=1", "pareto:a=0.4", "loglog"}) {
        CAPTURE(spec);
        const auto res = star_order_of(parse_family_spec(spec), 10);
        CHECK(res.is_infinite);
        CHECK(res.verified_up_to == 10);
    }
}

TEST_CASE("reconstruction recovers the square law") {
    const pdq g = pdq::of(make_family("power", {{"b", 2.0}}));
    const distribution rec = reconstruct_cdf(g);
    double worst_cdf = 0.0;
    for (int i = 1; i <= 99; ++i) {
        const double x = i / 100.0;
        worst_cdf = std::max(worst_cdf, std::abs(rec.evaluate_cdf(x) - x * x));
    }
    CHECK(worst_cdf < 1e-6);
    // round trip: transforming the reconstruction gives back the shape
    const pdq back = star_transform(rec);
    double worst = 0.0;
    for (int i = 1; i <= 99; ++i) {
        const double u = i / 100.0;
        worst = std::max(worst, std::abs(back.density(u) - g.density(u)));
    }
    CHECK(worst < 1e-6);
}

TEST_CASE("reconstruction of the flat density is the identity") {
    const distribution rec = reconstruct_cdf(pdq::uniform());
    for (double x : {0.1, 0.5, 0.9}) {
        CHECK(rec.evaluate_cdf(x) == doctest::Approx(x).epsilon(1e-9));
    }
}

TEST_CASE("reconstruction condition fails for the 2u shape") {
    const pdq g = pdq::from_density([](double u) { return 2.0 * u; }, {1.0, 0.0});
    CHECK_THROWS_AS(reconstruct_cdf(g), reconstruction_error);
    // same through the fitted-exponent path
    const pdq h = pdq::from_density([](double u) { return 2.0 * u; },
                                    {std::nullopt, std::nullopt});
    CHECK_THROWS_AS(reconstruct_cdf(h), reconstruction_error);
}

TEST_CASE("closed shapes expose usable cdf and quantile") {
    for (const std::string name :
         {"normal", "exponential", "laplace", "lognormal", "cauchy", "logistic", "gumbel"}) {
        CAPTURE(name);
        const pdq f = pdq::of(make_family(name));
        for (double v : {0.02, 0.4, 0.97}) {
            CHECK(f.cdf(f.quantile(v)) == doctest::Approx(v).epsilon(1e-10));
        }
    }
    // the sine-squared bell: cdf has the closed displacement form
    const pdq c = pdq::of(make_family("cauchy"));
    constexpr double two_pi = 6.28318530717958647692;
    CHECK(c.cdf(0.3) == doctest::Approx(0.3 - std::sin(two_pi * 0.3) / two_pi).epsilon(1e-14));
}
