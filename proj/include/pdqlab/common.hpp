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

#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>

namespace pdqlab {

inline constexpr double inf = std::numeric_limits<double>::infinity();

/// Integration / support domain. Either endpoint may be infinite.
struct interval {
    double lo;
    double hi;

    interval(double lo_, double hi_) : lo(lo_), hi(hi_) {
        if (!(lo < hi)) throw std::invalid_argument("interval: requires lo < hi");
    }
    bool finite() const { return std::isfinite(lo) && std::isfinite(hi); }
    bool contains(double x) const { return x > lo && x < hi; }
    static interval unit() { return interval(0.0, 1.0); }
    static interval real_line() { return interval(-inf, inf); }
    static interval positive() { return interval(0.0, inf); }
};

// Numeric failure hierarchy. CLI maps these to exit code 3.
class numeric_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Quadrature did not converge; carries the partial estimate and error bound.
class quadrature_error : public numeric_error {
public:
    quadrature_error(const std::string& what, double partial, double bound)
        : numeric_error(what), partial_estimate(partial), error_bound(bound) {}
    double partial_estimate;
    double error_bound;
};

class divergent_integral : public numeric_error {
public:
    using numeric_error::numeric_error;
};

class bracket_error : public numeric_error {
public:
    using numeric_error::numeric_error;
};

class monotonicity_error : public numeric_error {
public:
    using numeric_error::numeric_error;
};

class not_square_integrable : public numeric_error {
public:
    using numeric_error::numeric_error;
};

class reconstruction_error : public numeric_error {
public:
    using numeric_error::numeric_error;
};

/// Neumaier compensated accumulator; totals are order-insensitive to ~1e-12.
struct neumaier_sum {
    double sum = 0.0;
    double comp = 0.0;

    void add(double x) {
        double t = sum + x;
        if (std::abs(sum) >= std::abs(x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
    }
    double value() const { return sum + comp; }
};

/// Power-law behavior of a density near the endpoints of (0,1):
/// value ~ c*u^p0 near 0 and ~ c*(1-u)^p1 near 1. Absent exponents are
/// estimated by log-log regression on the outer grid nodes.
struct endpoint_exponents {
    std::optional<double> p0;
    std::optional<double> p1;
};

}  // namespace pdqlab
