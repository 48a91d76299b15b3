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

#include <optional>
#include <string>
#include <vector>

#include "pdqlab/pdq.hpp"

namespace pdqlab {

/// Log power integrals ln of integral f(x)^n dx for n = 1..N, computed as
/// integrals of fQ(u)^(n-1) over (0,1) (closed forms when the family
/// attaches them). Entries beyond all_finite_up_to are +inf.
struct moment_sequence {
    std::vector<double> log_mu;  // log_mu[n-1] holds order n
    int all_finite_up_to = 0;

    double log_moment(int n) const { return log_mu.at(n - 1); }
    double moment(int n) const;
};

moment_sequence compute_moments(const distribution& d, int count);

struct trace_step {
    int n = 0;
    double kappa = 0.0;  // integral of the squared n-th iterate
    double l2 = 0.0;     // L2 distance from the flat density
    std::vector<std::pair<double, double>> lr;  // (r, L_r^r distance or bound)
    double sup_norm = 0.0;
};

struct iteration_trace {
    std::string engine;  // "moments" or "grid"
    std::vector<trace_step> steps;
    std::string verdict;
    std::optional<int> truncated_at_order;
};

/// Moment-recursion engine: kappa_n = mu_n mu_{n+2} / mu_{n+1}^2, the L2
/// identity l2^2 = kappa_n - 1, and for integer r >= 4 the L_r upper bound
/// nu_{n,r} - 2 nu_{n,r-1} + nu_{n,r-2} + kappa_n - 1 with
/// nu_{n,r} = prod_{i=0}^{r-2} kappa_{n+i}^{r-1-i}.
iteration_trace kappa_diagnostics(const moment_sequence& mu, int max_r);

/// Grid functional engine: applies the transform n_steps times, recording
/// per step the empirical kappa, L2, requested L_r distances, and sup norm.
/// A square-integrability failure at step k truncates the trace and records
/// the *-order k. `on_step(n, iterate)` is invoked with each recorded
/// iterate when provided (used by the CLI --dump).
iteration_trace iterate_grid(const pdq& f, int n_steps, const std::vector<double>& r_list,
                             const grid_spec& spec = {}, exec policy = exec::par,
                             const std::function<void(int, const pdq&)>& on_step = nullptr);

}  // namespace pdqlab
