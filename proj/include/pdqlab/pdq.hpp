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
#include <map>
#include <memory>
#include <string>

#include "pdqlab/distribution.hpp"
#include "pdqlab/grid.hpp"

namespace pdqlab {

/// A positive density on (0,1) with its cdf and inverse. Closed-form backed
/// (catalog shapes) or grid backed (results of the transform). Immutable
/// and cheap to copy.
class pdq {
public:
    static pdq uniform();

    /// The family's normalized density-quantile shape with closed-form
    /// pieces attached where the catalog provides them; falls back to the
    /// numeric construction otherwise.
    static pdq of(const distribution& d, const grid_spec& spec = {}, exec policy = exec::par);

    /// Wrap an arbitrary positive density on (0,1); the input is normalized.
    static pdq from_density(const real_function& density, endpoint_exponents hints,
                            const grid_spec& spec = {}, exec policy = exec::par);

    static pdq from_grid(density_grid g, double kappa_parent);

    double density(double u) const;
    double cdf(double u) const;
    double quantile(double v) const;

    /// Normalizer used to create this density (integral of the parent's
    /// squared density), when applicable.
    double kappa_parent() const { return kappa_parent_; }
    double sup_norm() const { return sup_; }
    const endpoint_exponents& exponents() const { return exps_; }
    bool grid_backed() const { return static_cast<bool>(grid_) && !closed_density_; }
    std::shared_ptr<const density_grid> grid() const { return grid_; }

    /// Integral over (0,1) of h(u, f(u)). Grid-backed densities integrate
    /// cell-wise; closed forms go through singularity-aware quadrature.
    double integrate_transform(const std::function<double(double, double)>& h,
                               exec policy = exec::par) const;

    grid_function to_grid_function(const grid_spec& spec = {}) const;

    std::string family;
    std::map<std::string, double> family_params;

private:
    real_function closed_density_;
    real_function closed_cdf_;
    real_function closed_quantile_;
    std::shared_ptr<const density_grid> grid_;
    endpoint_exponents exps_;
    double kappa_parent_ = 1.0;
    double sup_ = inf;

    void scan_sup(const grid_spec& spec);
};

/// kappa = integral of the squared density, by quadrature with the
/// endpoint-exponent policy. Throws not_square_integrable when it diverges.
double kappa_of(const pdq& f, exec policy = exec::par);

/// The transform: f*(u) = f(Q(u)) / kappa for a distribution, and
/// g*(u) = g(G^inverse(u)) / kappa for a density on (0,1).
pdq star_transform(const distribution& d, const grid_spec& spec = {}, exec policy = exec::par);
pdq star_transform(const pdq& g, const grid_spec& spec = {}, exec policy = exec::par);

struct star_order_result {
    bool is_infinite = false;
    int order = 0;            // meaningful when !is_infinite
    int verified_up_to = 0;   // iterations verified when is_infinite
    enum class method_kind { closed_form, moment_test, exponent_test } method =
        method_kind::moment_test;
};

/// Largest n such that the first n transform iterates exist, tested through
/// moment finiteness (exact recursion for the power family).
star_order_result star_order_of(const distribution& d, int max_n);

/// Rebuild the distribution whose normalized density-quantile shape is g,
/// supported on [0,1]; requires integral of 1/g to be finite (throws
/// reconstruction_error otherwise).
distribution reconstruct_cdf(const pdq& g, const grid_spec& spec = {}, exec policy = exec::par);

}  // namespace pdqlab
