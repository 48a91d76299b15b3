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

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pdqlab/pdq.hpp"

namespace pdqlab {

/// Null and alternative moments of the log likelihood ln f1(x) for one
/// observation: mu0/sigma0 under the flat density, mu1/sigma1 under f1.
struct alt_moments_t {
    double mu0 = 0.0;
    double sigma0 = 0.0;
    double mu1 = 0.0;
    double sigma1 = 0.0;
};

/// Computes the four moments; uses the exact power-family formulas when the
/// alternative carries that provenance, quadrature otherwise. Throws
/// numeric_error("test undefined...") when a moment diverges.
alt_moments_t alt_moments(const pdq& alt, exec policy = exec::par);

/// Always-quadrature path (consistency oracle for the closed forms).
alt_moments_t alt_moments_by_quadrature(const pdq& alt, exec policy = exec::par);

/// Sum of ln f1(x_i). A sample point where f1 underflows to zero yields
/// -inf, reported as-is.
double log_likelihood_stat(std::span<const double> x, const pdq& alt);

enum class test_mode { exact_normal, asymptotic, monte_carlo };

struct mc_options {
    std::uint64_t seed = 0;
    int reps = 10000;
};

struct test_report {
    double statistic = 0.0;
    double critical_value = 0.0;
    bool reject = false;
    double alpha = 0.0;
    int m = 0;
    test_mode mode = test_mode::asymptotic;
};

/// Most-powerful test of the flat null against a fixed alternative shape.
///   asymptotic:   reject when l_x >= m*mu0 + sqrt(m)*sigma0*z_{1-alpha}
///   exact_normal: reject when sum Phi^-1(x_i)^2 <= chi2_m(alpha)
///                 (normal-shape alternative only)
///   monte_carlo:  critical value from the empirical (1-alpha) quantile of
///                 l under the null over mc.reps replicates
test_report np_test(std::span<const double> x, const pdq& alt, double alpha, test_mode mode,
                    mc_options mc = {}, exec policy = exec::par);

struct power_result {
    double power = 0.0;
    std::string mode;
    std::optional<double> std_error;
};

/// Large-sample power Phi(sqrt(m)*(mu1-mu0)/sigma1 + z_alpha*sigma0/sigma1)
/// with z_alpha = Phi^-1(alpha).
power_result asymptotic_power(const alt_moments_t& am, int m, double alpha);

/// Exact power for the power-function alternative with parameter b > 1/2:
/// Phi(sqrt(m)*|1-1/b| + (2-1/b)*z_alpha).
power_result power_beta_closed_form(double b, int m, double alpha);

/// m i.i.d. draws via the inverse cdf under a counter-based seeded stream;
/// identical seed gives an identical sample under either policy.
std::vector<double> sample_pdq(const pdq& alt, int m, std::uint64_t seed,
                               exec policy = exec::par);

enum class mc_target { size, power, critical_value };

struct mc_result {
    double value = 0.0;
    double std_error = 0.0;
};

/// Monte Carlo calibration and evaluation of the test. Replicate k draws
/// its sub-seed from (seed, stream, k), so results are reproducible and
/// independent of scheduling.
///   size:           rejection rate under null samples at the calibrated cut
///   power:          rejection rate under alternative samples
///   critical_value: empirical (1-alpha) null quantile of the statistic
mc_result mc_estimate(const pdq& alt, int m, double alpha, int reps, std::uint64_t seed,
                      mc_target target, exec policy = exec::par);

}  // namespace pdqlab
