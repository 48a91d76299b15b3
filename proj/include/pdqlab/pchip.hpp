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

#include <vector>

#include "pdqlab/common.hpp"

namespace pdqlab {

/// Shape-preserving piecewise-cubic Hermite interpolant (Fritsch-Carlson
/// slope limiting). Reproduces node values exactly and preserves strict
/// monotonicity of the data, which makes the inverse well defined.
class monotone_cubic {
public:
    /// Nodes must be strictly increasing; two nodes degrade to the linear
    /// segment. With require_monotone set, values must be strictly
    /// increasing (throws monotonicity_error otherwise).
    monotone_cubic(std::vector<double> x, std::vector<double> y, bool require_monotone = false);

    /// Hermite interpolant with caller-supplied derivatives (e.g. a cdf with
    /// its tabulated density), clamped into the monotone region when the
    /// data are increasing.
    monotone_cubic(std::vector<double> x, std::vector<double> y, std::vector<double> dydx);

    double operator()(double x) const;
    double derivative(double x) const;

    /// Inverse of a strictly increasing interpolant by per-cell Newton
    /// iteration with bisection safeguard.
    double inverse(double y) const;

    bool increasing() const { return increasing_; }
    const std::vector<double>& nodes() const { return x_; }
    const std::vector<double>& values() const { return y_; }

private:
    std::size_t cell_of(double x) const;
    std::size_t cell_of_value(double y) const;

    std::vector<double> x_;
    std::vector<double> y_;
    std::vector<double> slope_;
    bool increasing_ = false;
};

}  // namespace pdqlab
