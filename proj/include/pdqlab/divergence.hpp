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

#include <string>
#include <vector>

#include "pdqlab/catalog.hpp"
#include "pdqlab/pdq.hpp"

namespace pdqlab {

/// Directed divergence of f1 from f2 over (0,1): the expectation under f1
/// of ln(f1/f2). Returns +inf when the integral diverges; quadrature
/// failures propagate as exceptions, distinct from the divergence sentinel.
double kl_divergence(const pdq& f1, const pdq& f2, exec policy = exec::par);

/// Divergences from the flat density, their square roots (map coordinates),
/// and the distance from uniformity.
struct uniformity_profile_t {
    double i_u_f = 0.0;  // -E[ln f(U)]
    double i_f_u = 0.0;  // E_f[ln f]
    double j = 0.0;      // symmetrized divergence
    double s1 = 0.0;     // sqrt(i_u_f)
    double s2 = 0.0;     // sqrt(i_f_u)
    double distance = 0.0;
    bool divergent() const;
};

uniformity_profile_t uniformity_profile(const pdq& f, exec policy = exec::par);

/// Symmetrized root divergence between two shapes. Symmetric and zero only
/// at equality, but not a metric (no triangle inequality).
double semi_metric(const pdq& f1, const pdq& f2, exec policy = exec::par);

struct locus_point {
    double param = 0.0;
    double s1 = 0.0;
    double s2 = 0.0;
    double distance = 0.0;
    std::string error;  // per-point failures recorded, locus continues
};

struct map_locus_t {
    std::string family;
    std::vector<locus_point> points;
};

/// Divergence-map locus of a one-parameter family sweep; points are
/// independent and computed concurrently under the parallel policy.
map_locus_t map_locus(const family_grid& grid, const grid_spec& spec = {},
                      exec policy = exec::par);

}  // namespace pdqlab
