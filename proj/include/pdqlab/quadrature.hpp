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

#pragma once

#include <functional>
#include <optional>

#include "pdqlab/common.hpp"

namespace pdqlab {

namespace detail {
double& default_abs_tol_ref();
}

/// Process-wide default absolute quadrature tolerance (surfaced as a CLI
/// flag); freshly constructed quad_options pick it up.
void set_default_quad_tolerance(double abs_tol);

struct quad_options {
    double abs_tol = detail::default_abs_tol_ref();
    double rel_tol = 1e-12;
    int max_intervals = 4000;  // adaptive Gauss-Kronrod subdivisions
    int max_levels = 12;       // tanh-sinh refinement levels
};

/// Hints about the integrand near the endpoints of the domain: power-law
/// exponent of f (f ~ c*d^p at distance d from the endpoint) when known,
/// and whether f stays bounded there. Unknown exponents are treated as
/// potentially singular.
struct quad_endpoint {
    std::optional<double> exponent;
    bool bounded = true;

    bool smooth() const { return bounded && exponent && *exponent == 0.0; }
    static quad_endpoint finite_value() { return {0.0, true}; }
    static quad_endpoint power(double p) { return {p, p >= 0.0}; }
    static quad_endpoint unknown() { return {std::nullopt, false}; }
};

struct quad_hints {
    quad_endpoint left = quad_endpoint::finite_value();
    quad_endpoint right = quad_endpoint::finite_value();

    bool smooth() const { return left.smooth() && right.smooth(); }
    static quad_hints singular() { return {quad_endpoint::unknown(), quad_endpoint::unknown()}; }
};

using real_function = std::function<double(double)>;

/// Integrate f over the (open) domain. Smooth finite domains go through
/// adaptive Gauss-Kronrod; endpoint singularities and infinite domains are
/// handled by tanh-sinh after variable substitution.
///
/// Throws quadrature_error (carrying the partial estimate and error bound)
/// on non-convergence and divergent_integral when refinement keeps growing
/// the estimate.
double integrate(const real_function& f, interval domain, quad_options opt = {},
                 quad_hints hints = quad_hints::singular());

/// Integrate over (0,1).
double integrate_unit(const real_function& f, quad_options opt = {},
                      quad_hints hints = quad_hints::singular());

/// Adaptive Gauss-Kronrod (G7,K15) on a finite interval; interior smoothness
/// assumed, endpoints never evaluated exactly.
double gauss_kronrod_adaptive(const real_function& f, double a, double b, quad_options opt = {});

/// Tanh-sinh (double-exponential) rule on a finite interval. Evaluates f
/// through offsets from the endpoints, so integrable power/log endpoint
/// singularities converge at machine precision.
double tanh_sinh(const real_function& f, double a, double b, quad_options opt = {});

/// Fixed 7-point Gauss-Legendre on [a,b]; exact for polynomials of degree
/// <= 13. Used cell-wise on grid-backed densities.
double gauss7(const real_function& f, double a, double b);

}  // namespace pdqlab
