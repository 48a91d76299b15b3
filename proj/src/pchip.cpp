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

#include "pdqlab/pchip.hpp"

#include <algorithm>
#include <cmath>

namespace pdqlab {

monotone_cubic::monotone_cubic(std::vector<double> x, std::vector<double> y,
                               bool require_monotone)
    : x_(std::move(x)), y_(std::move(y)) {
    const std::size_t n = x_.size();
    if (n < 2 || y_.size() != n)
        throw std::invalid_argument("monotone_cubic: need >= 2 nodes and matching values");
    for (std::size_t i = 1; i < n; ++i)
        if (!(x_[i] > x_[i - 1]))
            throw std::invalid_argument("monotone_cubic: nodes must be strictly increasing");

    increasing_ = true;
    for (std::size_t i = 1; i < n; ++i)
        if (!(y_[i] > y_[i - 1])) increasing_ = false;
    if (require_monotone && !increasing_)
        throw monotonicity_error("monotonicity violation: values not strictly increasing");

    slope_.assign(n, 0.0);
    if (n == 2) {
        slope_[0] = slope_[1] = (y_[1] - y_[0]) / (x_[1] - x_[0]);
        return;
    }
    std::vector<double> h(n - 1), delta(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        h[i] = x_[i + 1] - x_[i];
        delta[i] = (y_[i + 1] - y_[i]) / h[i];
    }
    for (std::size_t k = 1; k + 1 < n; ++k) {
        const double dkm1 = delta[k - 1];
        const double dk = delta[k];
        if (dkm1 == 0.0 || dk == 0.0 || (dkm1 > 0.0) != (dk > 0.0)) {
            slope_[k] = 0.0;
        } else {
            const double w1 = 2.0 * h[k] + h[k - 1];
            const double w2 = h[k] + 2.0 * h[k - 1];
            slope_[k] = (w1 + w2) / (w1 / dkm1 + w2 / dk);
        }
    }
    // One-sided three-point endpoint slopes, clipped to preserve shape.
    auto end_slope = [](double h0, double h1, double d0, double d1) {
        double s = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
        if (s * d0 <= 0.0)
            s = 0.0;
        else if (d0 * d1 < 0.0 && std::abs(s) > 3.0 * std::abs(d0))
            s = 3.0 * d0;
        return s;
    };
    slope_[0] = end_slope(h[0], h[1], delta[0], delta[1]);
    slope_[n - 1] = end_slope(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
}

monotone_cubic::monotone_cubic(std::vector<double> x, std::vector<double> y,
                               std::vector<double> dydx)
    : x_(std::move(x)), y_(std::move(y)), slope_(std::move(dydx)) {
    const std::size_t n = x_.size();
    if (n < 2 || y_.size() != n || slope_.size() != n)
        throw std::invalid_argument("monotone_cubic: need >= 2 nodes, matching values/slopes");
    for (std::size_t i = 1; i < n; ++i)
        if (!(x_[i] > x_[i - 1]))
            throw std::invalid_argument("monotone_cubic: nodes must be strictly increasing");
    increasing_ = true;
    for (std::size_t i = 1; i < n; ++i)
        if (!(y_[i] > y_[i - 1])) increasing_ = false;
    if (!increasing_) return;
    // Clamp into the monotone region: slope at most 3x either adjacent secant.
    for (std::size_t i = 0; i < n; ++i) {
        double cap = inf;
        if (i > 0) cap = std::min(cap, 3.0 * (y_[i] - y_[i - 1]) / (x_[i] - x_[i - 1]));
        if (i + 1 < n) cap = std::min(cap, 3.0 * (y_[i + 1] - y_[i]) / (x_[i + 1] - x_[i]));
        slope_[i] = std::clamp(slope_[i], 0.0, cap);
    }
}

std::size_t monotone_cubic::cell_of(double x) const {
    auto it = std::upper_bound(x_.begin(), x_.end(), x);
    std::size_t i = static_cast<std::size_t>(std::max<std::ptrdiff_t>(1, it - x_.begin()));
    return std::min(i - 1, x_.size() - 2);
}

std::size_t monotone_cubic::cell_of_value(double y) const {
    auto it = std::upper_bound(y_.begin(), y_.end(), y);
    std::size_t i = static_cast<std::size_t>(std::max<std::ptrdiff_t>(1, it - y_.begin()));
    return std::min(i - 1, y_.size() - 2);
}

double monotone_cubic::operator()(double x) const {
    const std::size_t i = cell_of(x);
    const double h = x_[i + 1] - x_[i];
    const double t = (x - x_[i]) / h;
    const double t2 = t * t;
    const double t3 = t2 * t;
    const double h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
    const double h10 = t3 - 2.0 * t2 + t;
    const double h01 = -2.0 * t3 + 3.0 * t2;
    const double h11 = t3 - t2;
    return h00 * y_[i] + h * h10 * slope_[i] + h01 * y_[i + 1] + h * h11 * slope_[i + 1];
}

double monotone_cubic::derivative(double x) const {
    const std::size_t i = cell_of(x);
    const double h = x_[i + 1] - x_[i];
    const double t = (x - x_[i]) / h;
    const double t2 = t * t;
    const double dh00 = (6.0 * t2 - 6.0 * t) / h;
    const double dh10 = 3.0 * t2 - 4.0 * t + 1.0;
    const double dh01 = (-6.0 * t2 + 6.0 * t) / h;
    const double dh11 = 3.0 * t2 - 2.0 * t;
    return dh00 * y_[i] + dh10 * slope_[i] + dh01 * y_[i + 1] + dh11 * slope_[i + 1];
}

double monotone_cubic::inverse(double y) const {
    if (!increasing_)
        throw monotonicity_error("monotonicity violation: inverse requires increasing values");
    if (y <= y_.front()) return x_.front();
    if (y >= y_.back()) return x_.back();
    const std::size_t i = cell_of_value(y);
    double lo = x_[i], hi = x_[i + 1];
    // Initial guess from the secant, then Newton with bisection fallback.
    double x = lo + (hi - lo) * (y - y_[i]) / (y_[i + 1] - y_[i]);
    for (int it = 0; it < 100; ++it) {
        const double fx = (*this)(x) - y;
        if (fx > 0.0)
            hi = x;
        else
            lo = x;
        const double dfx = derivative(x);
        double next = (dfx > 0.0) ? x - fx / dfx : 0.5 * (lo + hi);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (std::abs(next - x) <= 1e-15 * (std::abs(x) + 1e-300) || next == x) return next;
        x = next;
        if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * (std::abs(lo) + 1e-300))
            return 0.5 * (lo + hi);
    }
    return x;
}

}  // namespace pdqlab
