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
#include "pdqlab/quadrature.hpp"

using namespace pdqlab;

namespace {

const std::vector<std::string> kAllSpecs = {
    "uniform",      "normal",     "logistic",   "laplace",      "t2",
    "t:nu=3",       "cauchy",     "exponential", "gumbel",      "lognormal",
    "lognormal:sigma=0.5",        "pareto:a=1", "pareto:a=2",  "power:b=2",
    "power:b=0.75", "beta:a=2,b=3", "chisq:nu=3", "gamma:k=2",
    "weibull:beta=1.5", "tukey:lambda=0.5", "tukey:lambda=-1", "loglog"};

}  // namespace

TEST_CASE("every family's density integrates to one") {
    for (const auto& spec : kAllSpecs) {
        if (spec.rfind("tukey", 0) == 0) continue;  // quantile-defined; covered below
        CAPTURE(spec);
        const distribution d = parse_family_spec(spec);
        // split at the median so laws with a modal kink stay smooth per piece
        const double med = d.evaluate_quantile(0.5);
        const double mass = integrate(d.pdf, interval(d.support.lo, med)) +
                            integrate(d.pdf, interval(med, d.support.hi));
        CHECK(mass == doctest::Approx(1.0).epsilon(1e-8));
    }
}

TEST_CASE("quantile inverts the cdf at 99 probe points") {
    for (const auto& spec : kAllSpecs) {
        CAPTURE(spec);
        const distribution d = parse_family_spec(spec);
        for (int i = 1; i <= 99; ++i) {
            const double u = i / 100.0;
            const double x = d.evaluate_quantile(u);
            CHECK(d.evaluate_cdf(x) == doctest::Approx(u).epsilon(1e-8));
        }
    }
}

TEST_CASE("attached closed-form shapes are densities on (0,1)") {
    for (const auto& spec : kAllSpecs) {
        const distribution d = parse_family_spec(spec);
        if (!d.pdq_closed_form) continue;
        CAPTURE(spec);
        const double mass = integrate(*d.pdq_closed_form, interval(0.0, 0.5)) +
                            integrate(*d.pdq_closed_form, interval(0.5, 1.0));
        CHECK(mass == doctest::Approx(1.0).epsilon(1e-8));
    }
}

TEST_CASE("closed-form shape equals the numeric transform") {
    for (const auto& name : reference_families()) {
        CAPTURE(name);
        const distribution d = make_family(name);
        const pdq numeric = star_transform(d);
        double worst = 0.0;
        for (int i = 1; i <= 99; ++i) {
            const double u = i / 100.0;
            worst = std::max(worst, std::abs(numeric.density(u) - (*d.pdq_closed_form)(u)));
        }
        CHECK(worst < 1e-6);
    }
}

TEST_CASE("reference values") {
    CHECK((*make_family("exponential").pdq_closed_form)(0.0) == doctest::Approx(2.0));
    CHECK((*make_family("cauchy").pdq_closed_form)(0.5) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(make_family("power", {{"b", 2.0}}).evaluate_quantile(0.25) ==
          doctest::Approx(0.5).epsilon(1e-14));
    const double e1 = std::exp(-1.0);
    CHECK(evaluate(make_family("gumbel"), eval_what::density_quantile, e1) ==
          doctest::Approx(e1).epsilon(1e-14));
    CHECK(evaluate(make_family("pareto", {{"a", 1.0}}), eval_what::quantile, 0.5) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(evaluate(make_family("normal"), eval_what::quantile, 0.5) == 0.0);
    // fQ of the logistic is u(1-u)
    CHECK(make_family("logistic").evaluate_density_quantile(0.3) ==
          doctest::Approx(0.21).epsilon(1e-14));
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(make_family("nosuch"), std::invalid_argument);
    CHECK_THROWS_AS(make_family("power", {{"b", 0.4}}), not_square_integrable);
    CHECK_THROWS_AS(make_family("power", {{"b", 0.5}}), not_square_integrable);
    CHECK_THROWS_AS(make_family("beta", {{"a", 0.3}, {"b", 2.0}}), not_square_integrable);
    CHECK_THROWS_AS(make_family("chisq", {{"nu", 0.9}}), not_square_integrable);
    CHECK_THROWS_AS(make_family("normal", {{"mu", 0.0}}), std::invalid_argument);
    CHECK_THROWS_AS(make_family("power"), std::invalid_argument);  // missing b
}

TEST_CASE("family spec parsing") {
    const distribution d = parse_family_spec("beta:a=2,b=3");
    CHECK(d.params.at("a") == 2.0);
    CHECK(d.params.at("b") == 3.0);
    CHECK_THROWS_AS(parse_family_spec("beta:a=x"), std::invalid_argument);
    CHECK_THROWS_AS(parse_family_spec("beta:=2"), std::invalid_argument);
    // t2 is an alias for t with nu = 2
    const distribution t2 = parse_family_spec("t2");
    const distribution t = parse_family_spec("t:nu=2");
    CHECK(t2.evaluate_quantile(0.8) == doctest::Approx(t.evaluate_quantile(0.8)).epsilon(1e-14));
}

TEST_CASE("evaluation outside the domain fails") {
    const distribution d = make_family("exponential");
    CHECK_THROWS_AS(d.evaluate_pdf(-1.0), std::domain_error);
    CHECK_THROWS_AS(d.evaluate_quantile(1.5), std::domain_error);
    CHECK_THROWS_AS(d.evaluate_density_quantile(0.0), std::domain_error);
}

TEST_CASE("tukey quantile-defined family") {
    // lambda = 2 is the uniform shape on [-1/2, 1/2]
    const distribution d = make_family("tukey", {{"lambda", 2.0}});
    CHECK(d.evaluate_density_quantile(0.3) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(d.evaluate_quantile(0.75) == doctest::Approx(0.25).epsilon(1e-12));
    // cdf is the numerical inverse of the quantile
    CHECK(d.evaluate_cdf(0.25) == doctest::Approx(0.75).epsilon(1e-10));
}
