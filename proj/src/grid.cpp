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

#include "pdqlab/grid.hpp"

#include <algorithm>
#include <cmath>

namespace pdqlab {

namespace {

inline double logit_coord(double u) { return std::log(u) - std::log1p(-u); }
inline double sigmoid_coord(double w) {
    if (w >= 0.0) return 1.0 / (1.0 + std::exp(-w));
    const double e = std::exp(w);
    return e / (1.0 + e);
}

}  // namespace

std::vector<double> canonical_nodes(const grid_spec& spec) {
    if (spec.size < 64) throw std::invalid_argument("grid_spec: size must be >= 64");
    if (!(spec.floor > 0.0 && spec.floor < 1e-3))
        throw std::invalid_argument("grid_spec: floor must be in (0, 1e-3)");
    const int n = spec.size;
    const double w_max = -logit_coord(spec.floor);
    std::vector<double> nodes;
    nodes.reserve(static_cast<std::size_t>(n));
    nodes.push_back(0.0);
    for (int i = 0; i < n - 2; ++i) {
        const double w = w_max * (2.0 * i / (n - 3.0) - 1.0);
        nodes.push_back(sigmoid_coord(w));
    }
    nodes.push_back(1.0);
    // Guard against collisions from rounding.
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
    return nodes;
}

monotone_cubic monotone_interpolant(const grid_function& g, bool require_monotone) {
    return monotone_cubic(g.nodes, g.values, require_monotone);
}

namespace {

// Distance below which 1-u is no longer resolvable in doubles; terminal
// integrals switch to the anchored power model there.
constexpr double kRightHorizon = 1e-16;

// Derivatives from a local quartic through the five nearest nodes; fourth
// order on the (logit-uniform) working grid without shape constraints.
std::vector<double> stencil_slopes(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    std::vector<double> d(n, 0.0);
    const std::size_t width = std::min<std::size_t>(5, n);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t lo = (i >= width / 2) ? i - width / 2 : 0;
        lo = std::min(lo, n - width);
        // derivative of the Lagrange interpolant at x[i]
        double acc = 0.0;
        for (std::size_t j = lo; j < lo + width; ++j) {
            double term = 0.0;
            for (std::size_t k = lo; k < lo + width; ++k) {
                if (k == j) continue;
                double prod = 1.0;
                for (std::size_t l = lo; l < lo + width; ++l) {
                    if (l == j || l == k) continue;
                    prod *= (x[i] - x[l]) / (x[j] - x[l]);
                }
                term += prod / (x[j] - x[k]);
            }
            acc += y[j] * term;
        }
        d[i] = acc;
    }
    return d;
}

// Least-squares log-log slope of f over the given (u, f(u)) pairs.
std::optional<double> fit_exponent(const std::vector<double>& us, const std::vector<double>& vs) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (std::size_t i = 0; i < us.size(); ++i) {
        if (!(vs[i] > 0.0) || !std::isfinite(vs[i])) continue;
        const double x = std::log(us[i]);
        const double y = std::log(vs[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++n;
    }
    if (n < 4) return std::nullopt;
    const double denom = n * sxx - sx * sx;
    if (denom == 0.0) return std::nullopt;
    return (n * sxy - sx * sy) / denom;
}

// Integral over (0, width) of fn(s), s the exact distance to the endpoint;
// uses s = width * exp(-t) so power and log behavior is resolved without
// cancellation. Tolerance is set relative to the integrand's own scale so
// tiny terminal masses keep full relative accuracy.
double tail_integral(const std::function<double(double)>& fn, double width, double t_max) {
    auto g = [&](double t) {
        const double s = width * std::exp(-t);
        if (s <= 0.0) return 0.0;
        const double v = fn(s);
        return std::isfinite(v) ? v * s : 0.0;
    };
    quad_options rough_opt;
    rough_opt.abs_tol = 1e-30;
    rough_opt.rel_tol = 1e-3;
    rough_opt.max_intervals = 400;
    double scale = 0.0;
    try {
        scale = gauss_kronrod_adaptive([&](double t) { return std::abs(g(t)); }, 0.0, t_max,
                                       rough_opt);
    } catch (const quadrature_error& e) {
        scale = std::abs(e.partial_estimate);
    }
    quad_options opt;
    opt.abs_tol = std::max(1e-280, 1e-12 * scale);
    opt.rel_tol = 1e-12;
    return gauss_kronrod_adaptive(g, 0.0, t_max, opt);
}

// Closed-form mass of the anchored power model c*(s/width)^p over (0, cut).
double model_mass(double anchor, double p, double width, double cut) {
    return anchor * width / (p + 1.0) * std::pow(cut / width, p + 1.0);
}

}  // namespace

density_grid density_grid::build(const real_function& density, endpoint_exponents hints,
                                 const grid_spec& spec, exec policy) {
    density_grid g;
    const std::vector<double> all = canonical_nodes(spec);
    g.nodes_.assign(all.begin() + 1, all.end() - 1);
    g.values_.assign(g.nodes_.size(), 0.0);
    for_index(policy, static_cast<std::ptrdiff_t>(g.nodes_.size()),
              [&](std::ptrdiff_t i) { g.values_[i] = density(g.nodes_[i]); });
    g.exps_ = hints;
    g.finish(&density, policy);
    return g;
}

density_grid density_grid::from_values(grid_function gf, exec policy) {
    if (gf.nodes.size() != gf.values.size() || gf.nodes.size() < 8)
        throw std::invalid_argument("density_grid: need matching nodes/values, >= 8 points");
    if (gf.nodes.front() != 0.0 || gf.nodes.back() != 1.0)
        throw std::invalid_argument("density_grid: nodes must span [0,1]");
    density_grid g;
    // Endpoint values may be 0 or non-finite; the terminal model covers them.
    g.nodes_.assign(gf.nodes.begin() + 1, gf.nodes.end() - 1);
    g.values_.assign(gf.values.begin() + 1, gf.values.end() - 1);
    for (std::size_t i = 1; i < g.nodes_.size(); ++i)
        if (!(g.nodes_[i] > g.nodes_[i - 1]))
            throw std::invalid_argument("density_grid: nodes must be strictly increasing");
    g.exps_ = gf.exponents;
    g.finish(nullptr, policy);
    return g;
}

void density_grid::finish(const real_function* density, exec policy) {
    const std::size_t n = nodes_.size();
    for (std::size_t i = 0; i < n; ++i)
        if (!std::isfinite(values_[i]) || values_[i] <= 0.0)
            throw numeric_error("density_grid: density must be finite and positive at nodes");

    const std::size_t fitw = std::min<std::size_t>(16, n / 2);
    // Fit absent endpoint exponents on the outer nodes.
    if (!exps_.p0) {
        std::vector<double> us(nodes_.begin(), nodes_.begin() + fitw);
        std::vector<double> vs(values_.begin(), values_.begin() + fitw);
        exps_.p0 = fit_exponent(us, vs).value_or(0.0);
    }
    if (!exps_.p1) {
        std::vector<double> us, vs;
        for (std::size_t i = n - fitw; i < n; ++i) {
            us.push_back(1.0 - nodes_[i]);
            vs.push_back(values_[i]);
        }
        exps_.p1 = fit_exponent(us, vs).value_or(0.0);
    }
    if (*exps_.p0 <= -1.0 || *exps_.p1 <= -1.0)
        throw divergent_integral("divergent integral: density endpoint exponent <= -1");

    // Interpolant of ln g against logit u, from the raw values; the
    // normalization enters as a constant shift at evaluation.
    w_.resize(n);
    std::vector<double> logv(n);
    for (std::size_t i = 0; i < n; ++i) {
        w_[i] = logit_coord(nodes_[i]);
        logv[i] = std::log(values_[i]);
    }
    log_density_ = std::make_shared<monotone_cubic>(w_, logv, stencil_slopes(w_, logv));

    const double u1 = nodes_.front();
    const double wR = 1.0 - nodes_.back();

    // Terminal-cell masses: the actual function where it is resolvable, the
    // anchored power model below the resolution horizon (and throughout when
    // only tabulated values exist).
    std::vector<double> masses(n + 1, 0.0);
    if (density) {
        masses[0] = tail_integral([&](double s) { return (*density)(s); }, u1, 400.0);
        // Below the resolution horizon the anchored model integrates in
        // closed form; above it the actual function is evaluated (1-s is
        // exact there).
        masses[n] = model_mass(values_.back(), *exps_.p1, wR, kRightHorizon) +
                    tail_integral([&](double s) { return (*density)(1.0 - s); }, wR,
                                  std::log(wR / kRightHorizon));
    } else {
        masses[0] = model_mass(values_.front(), *exps_.p0, u1, u1);
        masses[n] = model_mass(values_.back(), *exps_.p1, wR, wR);
    }

    const monotone_cubic& raw_interp = *log_density_;
    const auto cell_fn =
        density ? *density : real_function([&raw_interp](double u) {
            return std::exp(raw_interp(logit_coord(u)));
        });
    for_index(policy, static_cast<std::ptrdiff_t>(n) - 1, [&](std::ptrdiff_t i) {
        masses[i + 1] = gauss7(cell_fn, nodes_[i], nodes_[i + 1]);
    });

    // Forward and backward accumulation give the cdf and survivor without
    // cancellation near either end.
    std::vector<double> fwd(n), bwd(n);
    neumaier_sum acc;
    for (std::size_t i = 0; i < n; ++i) {
        acc.add(masses[i]);
        fwd[i] = acc.value();
    }
    acc.add(masses[n]);
    const double total = acc.value();
    if (!(total > 0.0) || !std::isfinite(total))
        throw numeric_error("density_grid: density mass not positive and finite");
    raw_mass_ = total;
    log_norm_ = std::log(total);

    neumaier_sum back;
    for (std::size_t i = n; i-- > 0;) {
        back.add(masses[i + 1]);
        bwd[i] = back.value();
    }

    for (std::size_t i = 0; i < n; ++i) values_[i] /= total;
    left_mass_ = masses[0] / total;
    right_mass_ = masses[n] / total;

    // Log-odds of the cdf against logit u, with exact slopes from the
    // tabulated density.
    std::vector<double> m(n), dm(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double F = fwd[i] / total;
        const double S = bwd[i] / total;
        m[i] = std::log(fwd[i]) - std::log(bwd[i]);
        dm[i] = values_[i] * nodes_[i] * (1.0 - nodes_[i]) / std::max(F * S, 1e-300);
    }
    for (std::size_t i = 1; i < n; ++i)
        if (!(m[i] > m[i - 1])) m[i] = std::nextafter(m[i - 1], inf);
    log_odds_ = std::make_shared<monotone_cubic>(w_, m, dm);
}

double density_grid::density(double u) const {
    if (!(u > 0.0 && u < 1.0)) throw std::domain_error("density_grid: u must be in (0,1)");
    if (u < nodes_.front())
        return values_.front() * std::pow(u / nodes_.front(), *exps_.p0);
    if (u > nodes_.back())
        return values_.back() * std::pow((1.0 - u) / (1.0 - nodes_.back()), *exps_.p1);
    return std::exp((*log_density_)(logit_coord(u)) - log_norm_);
}

double density_grid::cdf(double u) const {
    if (u <= 0.0) return 0.0;
    if (u >= 1.0) return 1.0;
    if (u < nodes_.front())
        return left_mass_ * std::pow(u / nodes_.front(), *exps_.p0 + 1.0);
    if (u > nodes_.back())
        return 1.0 - right_mass_ * std::pow((1.0 - u) / (1.0 - nodes_.back()), *exps_.p1 + 1.0);
    return sigmoid_coord((*log_odds_)(logit_coord(u)));
}

double density_grid::quantile(double v) const {
    if (!(v >= 0.0 && v <= 1.0)) throw std::domain_error("density_grid: quantile arg in [0,1]");
    if (v <= 0.0) return 0.0;
    if (v >= 1.0) return 1.0;
    if (v < left_mass_)
        return nodes_.front() * std::pow(v / left_mass_, 1.0 / (*exps_.p0 + 1.0));
    if (v > 1.0 - right_mass_)
        return 1.0 -
               (1.0 - nodes_.back()) * std::pow((1.0 - v) / right_mass_, 1.0 / (*exps_.p1 + 1.0));
    return sigmoid_coord(log_odds_->inverse(logit_coord(v)));
}

double density_grid::upper_quantile_distance(double q) const {
    if (!(q >= 0.0 && q <= 1.0))
        throw std::domain_error("density_grid: tail mass in [0,1]");
    if (q <= 0.0) return 0.0;
    if (q < right_mass_)
        return (1.0 - nodes_.back()) * std::pow(q / right_mass_, 1.0 / (*exps_.p1 + 1.0));
    return 1.0 - quantile(1.0 - q);
}

double density_grid::sup() const {
    if (*exps_.p0 < 0.0 || *exps_.p1 < 0.0) return inf;
    double m = 0.0;
    for (double v : values_) m = std::max(m, v);
    return m;
}

double density_grid::integrate_transform(const std::function<double(double, double)>& h,
                                         exec policy) const {
    const std::size_t n = nodes_.size();
    const double u1 = nodes_.front();
    const double v1 = values_.front();
    const double uL = nodes_.back();
    const double vL = values_.back();
    const double p0 = *exps_.p0;
    const double p1 = *exps_.p1;

    // Terminal cells in exact distance-to-endpoint arithmetic: the density
    // follows the anchored model; the u passed to h is clamped to the
    // resolvable range (only log-mild factors of h may depend on it).
    auto left_fn = [&](double s) { return h(s, v1 * std::pow(s / u1, p0)); };
    auto right_fn = [&](double s) {
        const double u = 1.0 - std::max(s, kRightHorizon);
        return h(u, vL * std::pow(s / (1.0 - uL), p1));
    };
    std::vector<double> parts(n + 1, 0.0);
    parts[0] = tail_integral(left_fn, u1, 400.0);
    parts[n] = tail_integral(right_fn, 1.0 - uL, 400.0);
    const monotone_cubic& logd = *log_density_;
    const double shift = log_norm_;
    for_index(policy, static_cast<std::ptrdiff_t>(n) - 1, [&](std::ptrdiff_t i) {
        parts[i + 1] = gauss7(
            [&](double u) { return h(u, std::exp(logd(logit_coord(u)) - shift)); }, nodes_[i],
            nodes_[i + 1]);
    });
    neumaier_sum acc;
    for (double p : parts) acc.add(p);
    return acc.value();
}

}  // namespace pdqlab
