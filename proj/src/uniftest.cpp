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

#include "pdqlab/uniftest.hpp"

#include <algorithm>
#include <cmath>

#include "pdqlab/rng.hpp"
#include "pdqlab/special.hpp"

namespace pdqlab {

namespace {

constexpr std::uint64_t kSampleStream = 0x53414d50ULL;       // draws
constexpr std::uint64_t kCalibrationStream = 0x43414c42ULL;  // null replicates
constexpr std::uint64_t kAlternativeStream = 0x414c5452ULL;  // alternative replicates

inline double safe_log(double x) { return std::log(std::max(x, 1e-300)); }

void check_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("alpha must be in (0,1)");
}

void check_sample(std::span<const double> x) {
    if (x.empty()) throw std::invalid_argument("empty sample");
    for (double v : x)
        if (!(v > 0.0 && v < 1.0))
            throw std::domain_error("sample values must lie in (0,1)");
}

// Null-hypothesis log-likelihood statistics, one per replicate.
std::vector<double> h0_stats(const pdq& alt, int m, int reps, std::uint64_t seed, exec policy) {
    std::vector<double> stats(reps);
    for_index(policy, reps, [&](std::ptrdiff_t k) {
        counter_rng rng(derive_seed(seed, kCalibrationStream, static_cast<std::uint64_t>(k)));
        neumaier_sum l;
        for (int i = 0; i < m; ++i) l.add(safe_log(alt.density(rng.next_uniform())));
        stats[k] = l.value();
    });
    return stats;
}

double empirical_upper_quantile(std::vector<double> stats, double alpha) {
    const auto n = stats.size();
    const std::size_t k = static_cast<std::size_t>(
        std::min<double>(n - 1.0, std::ceil((1.0 - alpha) * n) - 1.0));
    std::nth_element(stats.begin(), stats.begin() + k, stats.end());
    return stats[k];
}

}  // namespace

alt_moments_t alt_moments(const pdq& alt, exec policy) {
    if (alt.family == "power" || alt.family == "uniform") {
        const double b = (alt.family == "uniform") ? 1.0 : alt.family_params.at("b");
        alt_moments_t am;
        const double c = 2.0 - 1.0 / b;
        am.mu0 = std::log(c) + 1.0 / b - 1.0;
        am.sigma0 = std::abs(1.0 - 1.0 / b);
        am.mu1 = am.mu0 + (1.0 - 1.0 / b) * (1.0 - 1.0 / b) / c;
        am.sigma1 = std::abs(1.0 - 1.0 / b) / c;
        return am;
    }
    return alt_moments_by_quadrature(alt, policy);
}

alt_moments_t alt_moments_by_quadrature(const pdq& alt, exec policy) {
    alt_moments_t am;
    try {
        am.mu0 = alt.integrate_transform([](double, double g) { return safe_log(g); }, policy);
        const double m0sq = alt.integrate_transform(
            [](double, double g) {
                const double l = safe_log(g);
                return l * l;
            },
            policy);
        am.mu1 = alt.integrate_transform(
            [](double, double g) { return (g < 1e-300) ? 0.0 : g * std::log(g); }, policy);
        const double m1sq = alt.integrate_transform(
            [](double, double g) {
                if (g < 1e-300) return 0.0;
                const double l = std::log(g);
                return g * l * l;
            },
            policy);
        am.sigma0 = std::sqrt(std::max(0.0, m0sq - am.mu0 * am.mu0));
        am.sigma1 = std::sqrt(std::max(0.0, m1sq - am.mu1 * am.mu1));
    } catch (const divergent_integral&) {
        throw numeric_error("test undefined for this alternative: divergent moment");
    }
    if (!std::isfinite(am.mu0) || !std::isfinite(am.mu1) || !std::isfinite(am.sigma0) ||
        !std::isfinite(am.sigma1))
        throw numeric_error("test undefined for this alternative: divergent moment");
    return am;
}

double log_likelihood_stat(std::span<const double> x, const pdq& alt) {
    check_sample(x);
    neumaier_sum l;
    bool minus_inf = false;
    for (double v : x) {
        const double g = alt.density(v);
        if (g <= 0.0) {
            minus_inf = true;
            continue;
        }
        l.add(std::log(g));
    }
    return minus_inf ? -inf : l.value();
}

test_report np_test(std::span<const double> x, const pdq& alt, double alpha, test_mode mode,
                    mc_options mc, exec policy) {
    check_alpha(alpha);
    check_sample(x);
    test_report rep;
    rep.alpha = alpha;
    rep.m = static_cast<int>(x.size());
    rep.mode = mode;

    switch (mode) {
        case test_mode::exact_normal: {
            if (alt.family != "normal")
                throw std::invalid_argument(
                    "exact_normal mode requires the normal-shape alternative");
            neumaier_sum s;
            for (double v : x) {
                const double z = special::normal_quantile(v);
                s.add(z * z);
            }
            rep.statistic = s.value();
            rep.critical_value = special::chi_square_quantile(alpha, rep.m);
            rep.reject = rep.statistic <= rep.critical_value;
            return rep;
        }
        case test_mode::asymptotic: {
            const alt_moments_t am = alt_moments(alt, policy);
            if (!(am.sigma0 > 0.0))
                throw numeric_error("test undefined: degenerate alternative (sigma0 = 0)");
            rep.statistic = log_likelihood_stat(x, alt);
            const double z = special::normal_quantile(1.0 - alpha);
            rep.critical_value = rep.m * am.mu0 + std::sqrt(static_cast<double>(rep.m)) *
                                                      am.sigma0 * z;
            rep.reject = rep.statistic >= rep.critical_value;
            return rep;
        }
        case test_mode::monte_carlo: {
            if (mc.reps < 1000)
                throw std::invalid_argument("monte_carlo mode requires reps >= 1000");
            rep.statistic = log_likelihood_stat(x, alt);
            rep.critical_value =
                empirical_upper_quantile(h0_stats(alt, rep.m, mc.reps, mc.seed, policy), alpha);
            rep.reject = rep.statistic >= rep.critical_value;
            return rep;
        }
    }
    throw std::invalid_argument("np_test: unknown mode");
}

power_result asymptotic_power(const alt_moments_t& am, int m, double alpha) {
    check_alpha(alpha);
    if (!(am.sigma1 > 1e-8)) {
        // Degenerate alternative (at or numerically at the null): the power
        // is the level.
        if (std::abs(am.mu1 - am.mu0) < 1e-8) return {alpha, "asymptotic", std::nullopt};
        throw std::domain_error("asymptotic_power: requires sigma1 > 0");
    }
    const double z_alpha = special::normal_quantile(alpha);
    const double arg = std::sqrt(static_cast<double>(m)) * (am.mu1 - am.mu0) / am.sigma1 +
                       z_alpha * am.sigma0 / am.sigma1;
    return {special::normal_cdf(arg), "asymptotic", std::nullopt};
}

power_result power_beta_closed_form(double b, int m, double alpha) {
    check_alpha(alpha);
    if (!(b > 0.5)) throw std::domain_error("power_beta_closed_form: requires b > 1/2");
    const double z_alpha = special::normal_quantile(alpha);
    const double arg = std::sqrt(static_cast<double>(m)) * std::abs(1.0 - 1.0 / b) +
                       (2.0 - 1.0 / b) * z_alpha;
    return {special::normal_cdf(arg), "closed_form", std::nullopt};
}

std::vector<double> sample_pdq(const pdq& alt, int m, std::uint64_t seed, exec policy) {
    if (m < 1) throw std::invalid_argument("sample_pdq: m >= 1");
    std::vector<double> x(m);
    for_index(policy, m, [&](std::ptrdiff_t i) {
        const double v =
            (static_cast<double>(derive_seed(seed, kSampleStream, static_cast<std::uint64_t>(i)) >>
                                 11) +
             0.5) *
            0x1.0p-53;
        x[i] = alt.quantile(v);
    });
    return x;
}

mc_result mc_estimate(const pdq& alt, int m, double alpha, int reps, std::uint64_t seed,
                      mc_target target, exec policy) {
    check_alpha(alpha);
    if (reps < 1000) throw std::invalid_argument("mc_estimate: reps >= 1000");
    if (m < 1) throw std::invalid_argument("mc_estimate: m >= 1");

    std::vector<double> h0 = h0_stats(alt, m, reps, seed, policy);
    const double c = empirical_upper_quantile(h0, alpha);
    if (target == mc_target::critical_value)
        return {c, std::numeric_limits<double>::quiet_NaN()};

    long rejections = 0;
    if (target == mc_target::size) {
        for (double l : h0) rejections += (l >= c) ? 1 : 0;
    } else {
        std::vector<int> hits(reps, 0);
        for_index(policy, reps, [&](std::ptrdiff_t k) {
            counter_rng rng(
                derive_seed(seed, kAlternativeStream, static_cast<std::uint64_t>(k)));
            neumaier_sum l;
            for (int i = 0; i < m; ++i)
                l.add(safe_log(alt.density(alt.quantile(rng.next_uniform()))));
            hits[k] = (l.value() >= c) ? 1 : 0;
        });
        for (int h : hits) rejections += h;
    }
    const double p = static_cast<double>(rejections) / reps;
    return {p, std::sqrt(std::max(p * (1.0 - p), 0.0) / reps)};
}

}  // namespace pdqlab
