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

#include "pdqlab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

namespace pdqlab {

namespace detail {
double& default_abs_tol_ref() {
    static double tol = 1e-10;
    return tol;
}
}  // namespace detail

void set_default_quad_tolerance(double abs_tol) {
    if (!(abs_tol > 0.0)) throw std::invalid_argument("quad tolerance must be positive");
    detail::default_abs_tol_ref() = abs_tol;
}

namespace {

// (G7,K15) nodes and weights, QUADPACK dqk15.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct gk_cell {
    double a, b, integral, error;
    bool operator<(const gk_cell& o) const { return error < o.error; }
};

gk_cell gk15(const real_function& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double f0 = f(c);
    double kron = kWgk[7] * f0;
    double gauss = kWg[3] * f0;
    for (int i = 0; i < 7; ++i) {
        const double fl = f(c - h * kXgk[i]);
        const double fr = f(c + h * kXgk[i]);
        kron += kWgk[i] * (fl + fr);
        if (i % 2 == 1) gauss += kWg[i / 2] * (fl + fr);
    }
    kron *= h;
    gauss *= h;
    double diff = std::abs(kron - gauss);
    double err = std::min(diff, std::pow(200.0 * diff, 1.5));
    err = std::max(err, 50.0 * std::numeric_limits<double>::epsilon() * std::abs(kron));
    return {a, b, kron, err};
}

// Log-log slope of |f| approaching an endpoint. Flags power growth at or
// beyond 1/d, which no quadrature rule can integrate.
void probe_endpoint_divergence(const real_function& f, double endpoint, double toward,
                               double scale) {
    const double sign = (toward > endpoint) ? 1.0 : -1.0;
    const double d1 = 1e-9 * scale;
    const double d2 = 1e-12 * scale;
    const double v1 = std::abs(f(endpoint + sign * d1));
    const double v2 = std::abs(f(endpoint + sign * d2));
    if (!std::isfinite(v1) || !std::isfinite(v2)) return;  // leave to the DE rule
    if (v1 <= 0.0 || v2 <= 0.0) return;
    const double slope = std::log(v2 / v1) / std::log(d2 / d1);
    if (slope <= -0.999)
        throw divergent_integral("divergent integral: endpoint behavior ~ d^p with p <= -1");
}

}  // namespace

double gauss7(const real_function& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double sum = kWg[3] * f(c);
    for (int i = 0; i < 3; ++i) {
        const double x = h * kXgk[2 * i + 1];
        sum += kWg[i] * (f(c - x) + f(c + x));
    }
    return h * sum;
}

double gauss_kronrod_adaptive(const real_function& f, double a, double b, quad_options opt) {
    std::priority_queue<gk_cell> cells;
    gk_cell whole = gk15(f, a, b);
    double total = whole.integral;
    double total_err = whole.error;
    cells.push(whole);
    int n = 1;
    double best_err = inf;
    int stagnant = 0;
    while (total_err > std::max(opt.abs_tol, opt.rel_tol * std::abs(total))) {
        if (n >= opt.max_intervals) {
            throw quadrature_error("quadrature failure: Gauss-Kronrod did not converge", total,
                                   total_err);
        }
        gk_cell worst = cells.top();
        cells.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            // interval at floating-point resolution; keep its estimate
            total_err -= worst.error;
            continue;
        }
        gk_cell left = gk15(f, worst.a, mid);
        gk_cell right = gk15(f, mid, worst.b);
        total += left.integral + right.integral - worst.integral;
        total_err += left.error + right.error - worst.error;
        cells.push(left);
        cells.push(right);
        ++n;
        if (total_err < 0.99 * best_err) {
            best_err = total_err;
            stagnant = 0;
        } else if (++stagnant >= 60) {
            // Error estimate sits at the roundoff floor of the shattered
            // partition; the tolerance cannot be certified any further.
            if (total_err <= 1e-7 * std::abs(total)) break;
            throw quadrature_error("quadrature failure: roundoff-limited before tolerance",
                                   total, total_err);
        }
    }
    if (std::isnan(total))
        throw quadrature_error("quadrature failure: NaN encountered", total, total_err);
    return total;
}

double tanh_sinh(const real_function& f, double a, double b, quad_options opt) {
    // x = m + r*tanh((pi/2) sinh t); nodes are generated through their
    // offsets from the endpoints so f can resolve singularities there.
    const double r = 0.5 * (b - a);
    const double half_pi = 1.5707963267948966;
    const double t_max = 6.115;  // offsets underflow beyond this

    auto eval_pair = [&](double t) -> double {
        const double s = half_pi * std::sinh(t);
        const double off = 2.0 * r / (std::exp(2.0 * s) + 1.0);  // r*(1 - tanh s)
        if (off <= 0.0) return 0.0;
        const double ch = std::cosh(s);
        const double w = half_pi * std::cosh(t) / (ch * ch);
        const double ul = a + off;
        const double ur = b - off;
        double v = 0.0;
        if (ul > a) {
            const double fl = f(ul);
            if (std::isfinite(fl)) v += fl;
        }
        if (ur < b) {
            const double fr = f(ur);
            if (std::isfinite(fr)) v += fr;
        }
        return w * v;
    };

    double h = 1.0;
    double sum = half_pi * f(a + r);  // t = 0 node (midpoint), weight pi/2
    for (double t = h; t <= t_max; t += h) sum += eval_pair(t);
    double estimate = sum * h * r;

    double previous = inf;
    int grew = 0;
    for (int level = 1; level <= opt.max_levels; ++level) {
        h *= 0.5;
        double add = 0.0;
        for (double t = h; t <= t_max; t += 2.0 * h) add += eval_pair(t);
        sum += add;
        const double next = sum * h * r;
        const double change = std::abs(next - estimate);
        previous = estimate;
        estimate = next;
        if (std::isnan(estimate))
            throw quadrature_error("quadrature failure: NaN encountered", previous, inf);
        if (std::abs(estimate) > 1.01 * std::abs(previous) && std::abs(estimate) > 1.0)
            ++grew;
        else
            grew = 0;
        if (level >= 3 && change <= std::max(opt.abs_tol, opt.rel_tol * std::abs(estimate)))
            return estimate;
        if (level == opt.max_levels && grew >= 3)
            throw divergent_integral("divergent integral: estimate grows under refinement");
    }
    throw quadrature_error("quadrature failure: tanh-sinh did not converge", estimate,
                           std::abs(estimate - previous));
}

namespace {

double integrate_finite(const real_function& f, double a, double b, quad_options opt,
                        quad_hints hints) {
    if (hints.smooth()) return gauss_kronrod_adaptive(f, a, b, opt);
    const double scale = b - a;
    if (hints.left.exponent) {
        if (*hints.left.exponent <= -1.0)
            throw divergent_integral("divergent integral: endpoint exponent <= -1");
    } else {
        probe_endpoint_divergence(f, a, b, scale);
    }
    if (hints.right.exponent) {
        if (*hints.right.exponent <= -1.0)
            throw divergent_integral("divergent integral: endpoint exponent <= -1");
    } else {
        probe_endpoint_divergence(f, b, a, scale);
    }
    return tanh_sinh(f, a, b, opt);
}

}  // namespace

double integrate(const real_function& f, interval domain, quad_options opt, quad_hints hints) {
    const bool lo_inf = std::isinf(domain.lo);
    const bool hi_inf = std::isinf(domain.hi);
    if (!lo_inf && !hi_inf) return integrate_finite(f, domain.lo, domain.hi, opt, hints);

    if (lo_inf && hi_inf) {
        // x = t / (1 - t^2) maps (-1,1) onto the real line
        auto g = [&f](double t) {
            const double d = 1.0 - t * t;
            const double x = t / d;
            return f(x) * (1.0 + t * t) / (d * d);
        };
        return integrate_finite(g, -1.0, 1.0, opt, quad_hints::singular());
    }
    if (hi_inf) {
        const double a = domain.lo;
        auto g = [&f, a](double t) {
            const double d = 1.0 - t;
            return f(a + t / d) / (d * d);
        };
        quad_hints h2;
        h2.left = hints.left;
        h2.right = quad_endpoint::unknown();
        return integrate_finite(g, 0.0, 1.0, opt, h2);
    }
    const double b = domain.hi;
    auto g = [&f, b](double t) {
        const double d = 1.0 - t;
        return f(b - t / d) / (d * d);
    };
    quad_hints h2;
    h2.left = hints.right;
    h2.right = quad_endpoint::unknown();
    return integrate_finite(g, 0.0, 1.0, opt, h2);
}

double integrate_unit(const real_function& f, quad_options opt, quad_hints hints) {
    return integrate(f, interval::unit(), opt, hints);
}

}  // namespace pdqlab
