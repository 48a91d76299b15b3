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

#include "pdqlab/pdq.hpp"

#include <algorithm>
#include <cmath>

#include "pdqlab/roots.hpp"
#include "pdqlab/special.hpp"

namespace pdqlab {

namespace {

constexpr double kSqrt2 = 1.4142135623730950488016887242097;

quad_hints hints_from_exponents(const endpoint_exponents& e, double power = 1.0) {
    quad_hints h;
    h.left = e.p0 ? quad_endpoint::power(*e.p0 * power) : quad_endpoint::unknown();
    h.right = e.p1 ? quad_endpoint::power(*e.p1 * power) : quad_endpoint::unknown();
    return h;
}

// Closed-form cdf/quantile pairs for catalog shapes, used when available so
// that sampling and step-one iterates cost no table lookups.
struct closed_shape {
    real_function cdf;
    real_function quantile;
};

std::optional<closed_shape> closed_shape_for(const distribution& d) {
    using special::normal_cdf;
    using special::normal_quantile;
    const std::string& n = d.name;
    if (n == "uniform") {
        return closed_shape{[](double t) { return t; }, [](double v) { return v; }};
    }
    if (n == "normal") {
        return closed_shape{
            [](double t) { return normal_cdf(kSqrt2 * normal_quantile(t)); },
            [](double v) { return normal_cdf(normal_quantile(v) / kSqrt2); }};
    }
    if (n == "exponential") {
        return closed_shape{[](double t) { return 1.0 - (1.0 - t) * (1.0 - t); },
                            [](double v) { return 1.0 - std::sqrt(1.0 - v); }};
    }
    if (n == "power") {
        const double b = d.params.at("b");
        const double e = 2.0 - 1.0 / b;
        return closed_shape{[e](double t) { return std::pow(t, e); },
                            [e](double v) { return std::pow(v, 1.0 / e); }};
    }
    if (n == "pareto") {
        const double a = d.params.at("a");
        const double e = 2.0 + 1.0 / a;
        return closed_shape{[e](double t) { return 1.0 - std::pow(1.0 - t, e); },
                            [e](double v) { return 1.0 - std::pow(1.0 - v, 1.0 / e); }};
    }
    if (n == "laplace") {
        return closed_shape{
            [](double t) {
                return (t <= 0.5) ? 2.0 * t * t : 1.0 - 2.0 * (1.0 - t) * (1.0 - t);
            },
            [](double v) {
                return (v <= 0.5) ? std::sqrt(0.5 * v) : 1.0 - std::sqrt(0.5 * (1.0 - v));
            }};
    }
    if (n == "lognormal") {
        const double s = d.params.at("sigma");
        return closed_shape{
            [s](double t) { return normal_cdf(kSqrt2 * (normal_quantile(t) + 0.5 * s)); },
            [s](double v) { return normal_cdf(normal_quantile(v) / kSqrt2 - 0.5 * s); }};
    }
    if (n == "cauchy") {
        constexpr double two_pi = 6.28318530717958647692528676655900577;
        auto cdf = [](double t) { return t - std::sin(two_pi * t) / two_pi; };
        return closed_shape{cdf, [cdf](double v) {
            return find_root([&](double t) { return cdf(t) - v; }, interval(0.0, 1.0),
                             {1e-15, 200});
        }};
    }
    if (n == "logistic") {
        auto cdf = [](double t) { return t * t * (3.0 - 2.0 * t); };
        return closed_shape{cdf, [cdf](double v) {
            return find_root([&](double t) { return cdf(t) - v; }, interval(0.0, 1.0),
                             {1e-15, 200});
        }};
    }
    if (n == "gumbel") {
        auto cdf = [](double t) {
            return (t <= 0.0) ? 0.0 : t * t * (1.0 - 2.0 * std::log(t));
        };
        return closed_shape{cdf, [cdf](double v) {
            return find_root([&](double t) { return cdf(t) - v; }, interval(0.0, 1.0),
                             {1e-15, 200});
        }};
    }
    return std::nullopt;
}

}  // namespace

void pdq::scan_sup(const grid_spec& spec) {
    if ((exps_.p0 && *exps_.p0 < 0.0) || (exps_.p1 && *exps_.p1 < 0.0)) {
        sup_ = inf;
        return;
    }
    if (grid_ && !closed_density_) {
        sup_ = grid_->sup();
        return;
    }
    const auto nodes = canonical_nodes(spec);
    double m = 0.0;
    for (std::size_t i = 1; i + 1 < nodes.size(); ++i) m = std::max(m, density(nodes[i]));
    sup_ = m;
}

pdq pdq::uniform() {
    pdq f;
    f.family = "uniform";
    f.closed_density_ = [](double) { return 1.0; };
    f.closed_cdf_ = [](double t) { return t; };
    f.closed_quantile_ = [](double v) { return v; };
    f.exps_ = {0.0, 0.0};
    f.kappa_parent_ = 1.0;
    f.sup_ = 1.0;
    return f;
}

pdq pdq::of(const distribution& d, const grid_spec& spec, exec policy) {
    if (!d.pdq_closed_form) {
        pdq f = star_transform(d, spec, policy);
        return f;
    }
    pdq f;
    f.family = d.name;
    f.family_params = d.params;
    f.closed_density_ = *d.pdq_closed_form;
    f.exps_ = d.fq_exponents;
    const auto cs = closed_shape_for(d);
    if (cs) {
        f.closed_cdf_ = cs->cdf;
        f.closed_quantile_ = cs->quantile;
    } else {
        // Closed density, tabulated cumulative.
        f.grid_ = std::make_shared<density_grid>(
            density_grid::build(f.closed_density_, f.exps_, spec, policy));
        f.exps_ = f.grid_->exponents();
    }
    // mid-split keeps symmetric kinks (min{u,1-u}) at a panel boundary
    f.kappa_parent_ =
        integrate(d.density_quantile, interval(0.0, 0.5), {},
                  hints_from_exponents(d.fq_exponents)) +
        integrate(d.density_quantile, interval(0.5, 1.0), {},
                  hints_from_exponents(d.fq_exponents));
    f.scan_sup(spec);
    return f;
}

pdq pdq::from_density(const real_function& density, endpoint_exponents hints,
                      const grid_spec& spec, exec policy) {
    density_grid g = density_grid::build(density, hints, spec, policy);
    return from_grid(std::move(g), 1.0);
}

pdq pdq::from_grid(density_grid g, double kappa_parent) {
    pdq f;
    f.grid_ = std::make_shared<density_grid>(std::move(g));
    f.exps_ = f.grid_->exponents();
    f.kappa_parent_ = kappa_parent;
    f.sup_ = f.grid_->sup();
    return f;
}

double pdq::density(double u) const {
    if (!(u > 0.0 && u < 1.0)) throw std::domain_error("pdq: density argument in (0,1)");
    if (closed_density_) return closed_density_(u);
    return grid_->density(u);
}

double pdq::cdf(double u) const {
    if (u <= 0.0) return 0.0;
    if (u >= 1.0) return 1.0;
    if (closed_cdf_) return closed_cdf_(u);
    return grid_->cdf(u);
}

double pdq::quantile(double v) const {
    if (!(v >= 0.0 && v <= 1.0)) throw std::domain_error("pdq: quantile argument in [0,1]");
    if (closed_quantile_) return closed_quantile_(v);
    return grid_->quantile(v);
}

double pdq::integrate_transform(const std::function<double(double, double)>& h,
                                exec policy) const {
    if (grid_ && !closed_density_) return grid_->integrate_transform(h, policy);
    const auto& f = closed_density_;
    auto g = [&](double u) { return h(u, f(u)); };
    // Split at one half: symmetric shapes (min{u,1-u} and relatives) kink
    // there, and a kink at an endpoint costs the rule nothing.
    return integrate(g, interval(0.0, 0.5), {}, quad_hints::singular()) +
           integrate(g, interval(0.5, 1.0), {}, quad_hints::singular());
}

grid_function pdq::to_grid_function(const grid_spec& spec) const {
    // Endpoint rows carry the density limits (0, a finite value, or inf per
    // the endpoint exponent); imports ignore them.
    auto limit = [](std::optional<double> p, double anchor) {
        if (!p || *p > 0.0) return 0.0;
        if (*p < 0.0) return inf;
        return anchor;
    };
    grid_function gf;
    if (grid_ && !closed_density_) {
        gf.nodes = grid_->nodes();
        gf.values = grid_->values();
        gf.exponents = grid_->exponents();
    } else {
        const auto all = canonical_nodes(spec);
        gf.nodes.assign(all.begin() + 1, all.end() - 1);
        gf.values.reserve(gf.nodes.size());
        for (double u : gf.nodes) gf.values.push_back(density(u));
        gf.exponents = exps_;
    }
    gf.nodes.insert(gf.nodes.begin(), 0.0);
    gf.nodes.push_back(1.0);
    gf.values.insert(gf.values.begin(), limit(gf.exponents.p0, gf.values.front()));
    gf.values.push_back(limit(gf.exponents.p1, gf.values.back()));
    return gf;
}

double kappa_of(const pdq& f, exec policy) {
    // The squared density integrates iff both endpoint exponents exceed
    // -1/2; the margin band above the boundary covers fitted-exponent
    // uncertainty and falls back to the quadrature test.
    const auto& e = f.exponents();
    const double margin = 0.05;
    bool borderline = false;
    for (const auto& p : {e.p0, e.p1}) {
        if (!p) continue;
        if (*p <= -0.5)
            throw not_square_integrable("not square-integrable: pdQ does not exist");
        if (*p <= -0.5 + margin) borderline = true;
    }
    try {
        if (borderline) {
            // Exponent alone cannot decide; integrate the squared density
            // with endpoint probing and divergence detection instead of the
            // cell-wise rule.
            return integrate(
                [&f](double u) {
                    const double v = f.density(u);
                    return v * v;
                },
                interval::unit(), {}, quad_hints::singular());
        }
        return f.integrate_transform([](double, double v) { return v * v; }, policy);
    } catch (const divergent_integral&) {
        throw not_square_integrable("not square-integrable: pdQ does not exist");
    }
}

pdq star_transform(const distribution& d, const grid_spec& spec, exec policy) {
    // kappa = integral of fQ over (0,1): exists iff the fQ endpoint
    // exponents stay above -1 (fQ enters unsquared here).
    const auto& e = d.fq_exponents;
    for (const auto& p : {e.p0, e.p1}) {
        if (p && *p <= -0.999)
            throw not_square_integrable("not square-integrable: pdQ does not exist");
    }
    try {
        density_grid g = density_grid::build(d.density_quantile, e, spec, policy);
        const double kappa = g.raw_mass();  // integral of fQ over (0,1)
        pdq out = pdq::from_grid(std::move(g), kappa);
        out.family = d.name;
        out.family_params = d.params;
        return out;
    } catch (const divergent_integral&) {
        throw not_square_integrable("not square-integrable: pdQ does not exist");
    }
}

pdq star_transform(const pdq& g, const grid_spec& spec, exec policy) {
    const auto& e = g.exponents();
    const double margin = 0.05;
    for (const auto& p : {e.p0, e.p1}) {
        if (p && *p <= -0.5)
            throw not_square_integrable("not square-integrable: pdQ does not exist");
    }
    if (!(e.p0 && *e.p0 > -0.5 + margin && e.p1 && *e.p1 > -0.5 + margin))
        kappa_of(g, policy);  // borderline or unknown: quadrature test decides
    // Composition with the inverse cdf: integral of g(G^-1(v)) dv equals
    // integral of g^2 du, so the raw mass of the composition is kappa.
    auto composed = [&g](double v) { return g.density(std::clamp(g.quantile(v), 1e-300, 1.0 - 1e-16)); };
    endpoint_exponents prop;
    prop.p0 = e.p0 ? std::optional<double>(*e.p0 / (1.0 + *e.p0)) : std::nullopt;
    prop.p1 = e.p1 ? std::optional<double>(*e.p1 / (1.0 + *e.p1)) : std::nullopt;
    try {
        density_grid out = density_grid::build(composed, prop, spec, policy);
        const double kappa = out.raw_mass();
        return pdq::from_grid(std::move(out), kappa);
    } catch (const divergent_integral&) {
        throw not_square_integrable("not square-integrable: pdQ does not exist");
    }
}

star_order_result star_order_of(const distribution& d, int max_n) {
    if (max_n < 1) throw std::invalid_argument("star_order_of: max_n >= 1");
    star_order_result res;
    if (d.name == "power") {
        // Exact shape recursion b' = 2 - 1/b; the transform exists while
        // b > 1/2.
        res.method = star_order_result::method_kind::closed_form;
        double b = d.params.at("b");
        int order = 0;
        while (order <= max_n) {
            // the 1e-9 margin absorbs rounding when the recursion lands on
            // the 1/2 boundary exactly
            if (!(b > 0.5 + 1e-9)) break;
            ++order;
            b = 2.0 - 1.0 / b;
        }
        if (order > max_n) {
            res.is_infinite = true;
            res.verified_up_to = max_n;
        } else {
            res.order = order;
        }
        return res;
    }

    // Moment finiteness: the n-th iterate exists iff the (n+1)-th power
    // integral of the density is finite.
    auto moment_is_finite = [&](int n, star_order_result::method_kind& used) -> bool {
        if (d.log_moment) {
            used = star_order_result::method_kind::closed_form;
            return std::isfinite(d.log_moment(n));
        }
        const auto& e = d.fq_exponents;
        const double pw = n - 1.0;
        for (const auto& p : {e.p0, e.p1}) {
            if (p && pw * *p <= -0.999) {
                used = star_order_result::method_kind::exponent_test;
                return false;
            }
        }
        used = star_order_result::method_kind::moment_test;
        try {
            quad_hints h = hints_from_exponents(e, pw);
            integrate([&](double u) { return std::pow(d.density_quantile(u), pw); },
                      interval::unit(), {}, h);
            return true;
        } catch (const divergent_integral&) {
            return false;
        }
    };

    res.method = star_order_result::method_kind::moment_test;
    int order = 0;
    for (int n = 2; n <= max_n + 2; ++n) {
        star_order_result::method_kind used = res.method;
        const bool finite = moment_is_finite(n, used);
        res.method = used;
        if (!finite) break;
        order = n - 1;
    }
    if (order > max_n) {
        res.is_infinite = true;
        res.verified_up_to = max_n;
    } else {
        res.order = order;
    }
    return res;
}

distribution reconstruct_cdf(const pdq& g, const grid_spec& spec, exec policy) {
    // The condition is integral of 1/g < infinity, i.e. density exponents
    // below 1 at both endpoints (0.05 confidence margin; slopes probed when
    // no exponent is attached).
    auto endpoint_slope = [&g](bool left) {
        const double d1 = 1e-9, d2 = 1e-12;
        const double v1 = g.density(left ? d1 : 1.0 - d1);
        const double v2 = g.density(left ? d2 : 1.0 - d2);
        if (!(v1 > 0.0) || !(v2 > 0.0)) return 0.0;
        return std::log(v2 / v1) / std::log(d2 / d1);
    };
    const double p0 = g.exponents().p0 ? *g.exponents().p0 : endpoint_slope(true);
    const double p1 = g.exponents().p1 ? *g.exponents().p1 : endpoint_slope(false);
    if (p0 >= 0.95 || p1 >= 0.95)
        throw reconstruction_error("reconstruction condition fails: integral of 1/g diverges");
    const auto& e = g.exponents();
    auto recip = [g](double u) { return 1.0 / g.density(u); };
    endpoint_exponents rexp;
    rexp.p0 = e.p0 ? std::optional<double>(-*e.p0) : std::nullopt;
    rexp.p1 = e.p1 ? std::optional<double>(-*e.p1) : std::nullopt;
    std::shared_ptr<density_grid> table;
    try {
        table = std::make_shared<density_grid>(density_grid::build(recip, rexp, spec, policy));
    } catch (const divergent_integral&) {
        throw reconstruction_error("reconstruction condition fails: integral of 1/g diverges");
    }
    // H(x) = integral_0^x 1/g; F(x) = H^-1(H(1) x), Q(u) = H(u)/H(1), and
    // the density is H(1) * g(F(x)).
    const double h1 = table->raw_mass();
    distribution out;
    out.name = "reconstructed";
    out.support = interval::unit();
    pdq shape = g;
    out.cdf = [table](double x) { return table->quantile(x); };
    out.quantile = [table](double u) { return table->cdf(u); };
    out.pdf = [table, shape, h1](double x) {
        return h1 * shape.density(std::clamp(table->quantile(x), 1e-300, 1.0 - 1e-16));
    };
    out.density_quantile = [shape, h1](double u) { return h1 * shape.density(u); };
    out.fq_exponents = g.exponents();
    out.bounded_pdf = std::isfinite(g.sup_norm());
    return out;
}

}  // namespace pdqlab
