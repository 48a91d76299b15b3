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

#include "pdqlab/iterate.hpp"

#include <cmath>

namespace pdqlab {

namespace {

// Numerical convergence: kappa - 1 below 1e-4 sustained for 3 consecutive
// recorded steps.
std::string convergence_verdict(const std::vector<trace_step>& steps) {
    int run = 0;
    for (const auto& s : steps) {
        if (std::isfinite(s.kappa) && s.kappa - 1.0 < 1e-4) {
            if (++run >= 3) return "converged";
        } else {
            run = 0;
        }
    }
    return "in-progress";
}

quad_hints power_hints(const endpoint_exponents& e, double power) {
    quad_hints h;
    h.left = e.p0 ? quad_endpoint::power(*e.p0 * power) : quad_endpoint::unknown();
    h.right = e.p1 ? quad_endpoint::power(*e.p1 * power) : quad_endpoint::unknown();
    return h;
}

}  // namespace

double moment_sequence::moment(int n) const { return std::exp(log_moment(n)); }

moment_sequence compute_moments(const distribution& d, int count) {
    if (count < 3) throw std::invalid_argument("compute_moments: need count >= 3");
    moment_sequence mu;
    mu.log_mu.assign(count, inf);
    for (int n = 1; n <= count; ++n) {
        if (d.log_moment) {
            mu.log_mu[n - 1] = d.log_moment(n);
        } else {
            const double pw = n - 1.0;
            const auto& e = d.fq_exponents;
            bool divergent = false;
            for (const auto& p : {e.p0, e.p1})
                if (p && pw * *p <= -0.999) divergent = true;
            if (!divergent) {
                try {
                    const double v =
                        integrate([&](double u) { return std::pow(d.density_quantile(u), pw); },
                                  interval::unit(), {}, power_hints(e, pw));
                    mu.log_mu[n - 1] = std::log(v);
                } catch (const divergent_integral&) {
                    divergent = true;
                } catch (const quadrature_error&) {
                    // caps the usable order at n-1
                    divergent = true;
                }
            }
            if (divergent) break;
        }
        if (!std::isfinite(mu.log_mu[n - 1])) break;
        mu.all_finite_up_to = n;
    }
    return mu;
}

iteration_trace kappa_diagnostics(const moment_sequence& mu, int max_r) {
    iteration_trace trace;
    trace.engine = "moments";
    const int usable = mu.all_finite_up_to;
    if (usable < 3)
        throw numeric_error("kappa_diagnostics: insufficient finite moment order");

    auto log_kappa = [&mu](int j) {
        return mu.log_moment(j) + mu.log_moment(j + 2) - 2.0 * mu.log_moment(j + 1);
    };
    auto log_nu = [&](int n, int r) {
        // nu_{n,r} = prod_{i=0}^{r-2} kappa_{n+i}^{r-1-i}; nu_{n,1} = 1
        double s = 0.0;
        for (int i = 0; i + 2 <= r; ++i) s += (r - 1.0 - i) * log_kappa(n + i);
        return s;
    };

    for (int n = 1; n + 2 <= usable; ++n) {
        trace_step step;
        step.n = n;
        const double lk = log_kappa(n);
        step.kappa = std::exp(lk);
        step.l2 = std::sqrt(std::max(0.0, std::expm1(lk)));
        for (int r = 4; r <= max_r; ++r) {
            if (n + r > usable) break;  // nu_{n,r} needs kappa up to n+r-2
            const double bound = std::exp(log_nu(n, r)) - 2.0 * std::exp(log_nu(n, r - 1)) +
                                 std::exp(log_nu(n, r - 2)) + std::expm1(lk);
            step.lr.emplace_back(static_cast<double>(r), bound);
        }
        step.sup_norm = std::numeric_limits<double>::quiet_NaN();
        trace.steps.push_back(std::move(step));
    }
    trace.verdict = convergence_verdict(trace.steps);
    return trace;
}

iteration_trace iterate_grid(const pdq& f, int n_steps, const std::vector<double>& r_list,
                             const grid_spec& spec, exec policy,
                             const std::function<void(int, const pdq&)>& on_step) {
    if (n_steps < 1) throw std::invalid_argument("iterate_grid: n_steps >= 1");
    iteration_trace trace;
    trace.engine = "grid";
    pdq current = f;
    for (int n = 1; n <= n_steps; ++n) {
        trace_step step;
        step.n = n;
        step.sup_norm = current.sup_norm();
        if (on_step) on_step(n, current);

        bool truncated = false;
        pdq next = current;
        if (n < n_steps) {
            try {
                next = star_transform(current, spec, policy);
                step.kappa = next.kappa_parent();
            } catch (const not_square_integrable&) {
                truncated = true;
            }
        } else {
            try {
                step.kappa = kappa_of(current, policy);
            } catch (const not_square_integrable&) {
                truncated = true;
            }
        }
        if (truncated) {
            step.kappa = inf;
            step.l2 = inf;
            for (double r : r_list) step.lr.emplace_back(r, inf);
            trace.steps.push_back(std::move(step));
            trace.truncated_at_order = n;
            trace.verdict = "star-order-" + std::to_string(n);
            return trace;
        }

        step.l2 = std::sqrt(std::max(
            0.0, current.integrate_transform(
                     [](double, double g) { return (g - 1.0) * (g - 1.0); }, policy)));
        for (double r : r_list) {
            const double lr = current.integrate_transform(
                [r](double, double g) { return std::pow(std::abs(g - 1.0), r); }, policy);
            step.lr.emplace_back(r, lr);
        }
        trace.steps.push_back(std::move(step));
        if (n < n_steps) current = next;
    }
    trace.verdict = convergence_verdict(trace.steps);
    return trace;
}

}  // namespace pdqlab
