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

#include "pdqlab/divergence.hpp"

#include <cmath>

namespace pdqlab {

namespace {

// x ln x -> 0 as x -> 0; densities below 1e-300 are treated as endpoint
// singularities of the other factor.
inline double xlogx(double x) { return (x < 1e-300) ? 0.0 : x * std::log(x); }

inline double safe_log(double x) { return std::log(std::max(x, 1e-300)); }

}  // namespace

double kl_divergence(const pdq& f1, const pdq& f2, exec policy) {
    try {
        if (f1.grid_backed()) {
            return f1.integrate_transform(
                [&f2](double u, double g1) {
                    if (g1 < 1e-300) return 0.0;
                    return g1 * (std::log(g1) - safe_log(f2.density(u)));
                },
                policy);
        }
        if (f2.grid_backed()) {
            return f2.integrate_transform(
                [&f1](double u, double g2) {
                    const double g1 = f1.density(u);
                    if (g1 < 1e-300) return 0.0;
                    return g1 * (std::log(g1) - safe_log(g2));
                },
                policy);
        }
        return integrate(
            [&](double u) {
                const double g1 = f1.density(u);
                if (g1 < 1e-300) return 0.0;
                return g1 * (std::log(g1) - safe_log(f2.density(u)));
            },
            interval::unit(), {}, quad_hints::singular());
    } catch (const divergent_integral&) {
        return inf;
    }
}

bool uniformity_profile_t::divergent() const {
    return !std::isfinite(i_u_f) || !std::isfinite(i_f_u);
}

uniformity_profile_t uniformity_profile(const pdq& f, exec policy) {
    uniformity_profile_t p;
    try {
        p.i_u_f = f.integrate_transform([](double, double g) { return -safe_log(g); }, policy);
        p.i_f_u = f.integrate_transform([](double, double g) { return xlogx(g); }, policy);
    } catch (const divergent_integral&) {
        p.i_u_f = inf;
        p.i_f_u = inf;
    }
    // Tiny negative values are quadrature noise around the flat density.
    if (p.i_u_f < 0.0 && p.i_u_f > -1e-12) p.i_u_f = 0.0;
    if (p.i_f_u < 0.0 && p.i_f_u > -1e-12) p.i_f_u = 0.0;
    p.j = p.i_u_f + p.i_f_u;
    p.s1 = std::sqrt(std::max(0.0, p.i_u_f));
    p.s2 = std::sqrt(std::max(0.0, p.i_f_u));
    p.distance = std::sqrt(std::max(0.0, p.j));
    return p;
}

double semi_metric(const pdq& f1, const pdq& f2, exec policy) {
    const double a = kl_divergence(f1, f2, policy);
    const double b = kl_divergence(f2, f1, policy);
    return std::sqrt(std::max(0.0, a + b));
}

map_locus_t map_locus(const family_grid& grid, const grid_spec& spec, exec policy) {
    map_locus_t locus;
    locus.family = grid.family;
    locus.points.resize(grid.values.size());
    // Points are independent; each writes only its own slot.
    for_index(policy, static_cast<std::ptrdiff_t>(grid.values.size()), [&](std::ptrdiff_t i) {
        locus_point& pt = locus.points[i];
        pt.param = grid.values[i];
        try {
            distribution base = parse_family_spec(grid.family);
            std::map<std::string, double> params = base.params;
            for (const auto& key : grid.keys) params[key] = grid.values[i];
            const distribution d = make_family(base.name, params);
            const auto prof = uniformity_profile(pdq::of(d, spec, exec::seq), exec::seq);
            pt.s1 = prof.s1;
            pt.s2 = prof.s2;
            pt.distance = prof.distance;
        } catch (const std::exception& ex) {
            pt.s1 = pt.s2 = pt.distance = std::numeric_limits<double>::quiet_NaN();
            pt.error = ex.what();
        }
    });
    return locus;
}

}  // namespace pdqlab
