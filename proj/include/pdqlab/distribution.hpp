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
#include <optional>
#include <string>

#include "pdqlab/common.hpp"

namespace pdqlab {

/// A continuous law given by pdf / cdf / quantile on a real support.
/// Immutable after construction; all members are pure functions, so
/// instances are safe to share across threads.
struct distribution {
    std::string name;
    std::map<std::string, double> params;
    interval support = interval::real_line();

    std::function<double(double)> pdf;       // may be empty for quantile-defined laws
    std::function<double(double)> cdf;       // closed-form or numeric-backed
    std::function<double(double)> quantile;  // closed-form or numeric-backed

    /// fQ(u) = f(Q(u)) on (0,1); always available.
    std::function<double(double)> density_quantile;

    /// Closed-form normalized density-quantile shape, when the family has one.
    std::optional<std::function<double(double)>> pdq_closed_form;

    /// Endpoint power exponents of fQ near u = 0 and u = 1, when known
    /// analytically; absent entries are estimated numerically downstream.
    endpoint_exponents fq_exponents;

    /// sup f < infinity known analytically.
    bool bounded_pdf = false;

    /// Closed-form log power integrals ln integral f(x)^n dx, when known.
    std::function<double(int)> log_moment;

    double evaluate_pdf(double x) const;
    double evaluate_cdf(double x) const;
    double evaluate_quantile(double u) const;
    double evaluate_density_quantile(double u) const;
};

/// Location-scale shift: Y = loc + scale * X. The density-quantile picks up
/// the factor 1/scale; the normalized shape is unchanged.
distribution affine(const distribution& d, double loc, double scale);

}  // namespace pdqlab
