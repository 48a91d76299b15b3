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

#include "pdqlab/distribution.hpp"

#include <cmath>

namespace pdqlab {

double distribution::evaluate_pdf(double x) const {
    if (!pdf) throw std::domain_error(name + ": pdf not available in closed form");
    if (!support.contains(x)) throw std::domain_error(name + ": argument outside support");
    return pdf(x);
}

double distribution::evaluate_cdf(double x) const {
    if (x <= support.lo) return 0.0;
    if (x >= support.hi) return 1.0;
    return cdf(x);
}

double distribution::evaluate_quantile(double u) const {
    if (!(u > 0.0 && u < 1.0)) throw std::domain_error(name + ": quantile argument in (0,1)");
    return quantile(u);
}

double distribution::evaluate_density_quantile(double u) const {
    if (!(u > 0.0 && u < 1.0))
        throw std::domain_error(name + ": density-quantile argument in (0,1)");
    return density_quantile(u);
}

distribution affine(const distribution& d, double loc, double scale) {
    if (!(scale > 0.0)) throw std::invalid_argument("affine: scale must be positive");
    distribution out = d;
    out.support = interval(std::isinf(d.support.lo) ? -inf : loc + scale * d.support.lo,
                           std::isinf(d.support.hi) ? inf : loc + scale * d.support.hi);
    if (d.pdf)
        out.pdf = [d, loc, scale](double x) { return d.pdf((x - loc) / scale) / scale; };
    out.cdf = [d, loc, scale](double x) { return d.cdf((x - loc) / scale); };
    out.quantile = [d, loc, scale](double u) { return loc + scale * d.quantile(u); };
    out.density_quantile = [d, scale](double u) { return d.density_quantile(u) / scale; };
    if (d.log_moment) {
        out.log_moment = [d, scale](int n) {
            return d.log_moment(n) + (1.0 - n) * std::log(scale);
        };
    }
    return out;
}

}  // namespace pdqlab
