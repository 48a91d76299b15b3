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
#include <memory>
#include <vector>

#include "pdqlab/common.hpp"
#include "pdqlab/parallel.hpp"
#include "pdqlab/pchip.hpp"
#include "pdqlab/quadrature.hpp"

namespace pdqlab {

/// Node layout for densities on [0,1]: uniform in the logit coordinate
/// between `floor` and 1 - `floor`, so endpoint power behavior and the
/// smooth interior are resolved on one scale.
struct grid_spec {
    int size = 4097;
    double floor = 1e-12;
};

std::vector<double> canonical_nodes(const grid_spec& spec);

/// A function tabulated on strictly increasing nodes spanning [0,1], with
/// optional endpoint power-law exponents.
struct grid_function {
    std::vector<double> nodes;   // nodes.front() == 0, nodes.back() == 1
    std::vector<double> values;  // finite at interior nodes
    endpoint_exponents exponents;
};

/// Shape-preserving interpolant over a grid function (values at the
/// interior nodes; terminal cells are not modeled here).
monotone_cubic monotone_interpolant(const grid_function& g, bool require_monotone = false);

/// A positive density on (0,1) held on the canonical grid together with its
/// cumulative distribution and inverse. The stored density integrates to 1;
/// `raw_mass()` is the integral of the input function before normalization.
///
/// Between the outermost interior nodes the density follows the monotone
/// cubic through the tabulated values; inside the terminal cells it follows
/// the power model value(u) ~ v1 * (u/u1)^p0 (and mirrored on the right).
class density_grid {
public:
    static density_grid build(const real_function& density, endpoint_exponents hints,
                              const grid_spec& spec = {}, exec policy = exec::par);

    /// Rebuild the cdf from tabulated values (CSV import path).
    static density_grid from_values(grid_function g, exec policy = exec::par);

    double density(double u) const;
    double cdf(double u) const;
    double quantile(double v) const;

    /// Distance from 1 of the point with upper-tail mass q; stays accurate
    /// below the spacing of doubles near 1 (where quantile(1-q) would
    /// collapse onto 1).
    double upper_quantile_distance(double q) const;

    double raw_mass() const { return raw_mass_; }
    double sup() const;
    const endpoint_exponents& exponents() const { return exps_; }
    const std::vector<double>& nodes() const { return nodes_; }
    const std::vector<double>& values() const { return values_; }

    /// Integral over (0,1) of h(u, g(u)); cell-wise Gauss on the interior,
    /// exponential substitution against the power models in the terminal
    /// cells. Deterministic regardless of execution policy.
    double integrate_transform(const std::function<double(double, double)>& h,
                               exec policy = exec::par) const;

private:
    std::vector<double> nodes_;   // interior nodes u1..uL (excludes 0 and 1)
    std::vector<double> values_;  // normalized density at interior nodes
    std::vector<double> w_;       // logit(nodes)
    endpoint_exponents exps_;     // exponents of the density at 0 and 1
    double raw_mass_ = 0.0;
    double log_norm_ = 0.0;    // ln(raw_mass): shift between raw and normalized
    double left_mass_ = 0.0;   // normalized cdf at u1
    double right_mass_ = 0.0;  // normalized 1 - cdf at uL
    std::shared_ptr<const monotone_cubic> log_density_;  // ln g vs logit u (raw)
    std::shared_ptr<const monotone_cubic> log_odds_;     // logit F vs logit u

    // density == nullptr: only tabulated values exist (import path)
    void finish(const real_function* density, exec policy);
};

}  // namespace pdqlab
