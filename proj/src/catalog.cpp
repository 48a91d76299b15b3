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

#include "pdqlab/catalog.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <memory>

#include "pdqlab/grid.hpp"
#include "pdqlab/roots.hpp"
#include "pdqlab/special.hpp"

namespace pdqlab {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;
constexpr double kSqrtPi = 1.77245385090551602729816748334114518;

using special::normal_cdf;
using special::normal_pdf;
using special::normal_quantile;

class param_reader {
public:
    param_reader(std::string family, const std::map<std::string, double>& params)
        : family_(std::move(family)), params_(params) {}

    double require(const std::string& key) {
        auto it = params_.find(key);
        if (it == params_.end())
            throw std::invalid_argument(family_ + ": missing parameter '" + key + "'");
        used_.push_back(key);
        return it->second;
    }
    double get(const std::string& key, double fallback) {
        auto it = params_.find(key);
        used_.push_back(key);
        if (it == params_.end()) return fallback;
        return it->second;
    }
    void done() const {
        for (const auto& [key, value] : params_) {
            (void)value;
            if (std::find(used_.begin(), used_.end(), key) == used_.end())
                throw std::invalid_argument(family_ + ": unknown parameter '" + key + "'");
        }
    }

private:
    std::string family_;
    const std::map<std::string, double>& params_;
    std::vector<std::string> used_;
};

distribution make_uniform() {
    distribution d;
    d.name = "uniform";
    d.support = interval::unit();
    d.pdf = [](double) { return 1.0; };
    d.cdf = [](double x) { return x; };
    d.quantile = [](double u) { return u; };
    d.density_quantile = [](double) { return 1.0; };
    d.pdq_closed_form = [](double) { return 1.0; };
    d.fq_exponents = {0.0, 0.0};
    d.bounded_pdf = true;
    d.log_moment = [](int) { return 0.0; };
    return d;
}

distribution make_normal() {
    distribution d;
    d.name = "normal";
    d.support = interval::real_line();
    d.pdf = [](double x) { return normal_pdf(x); };
    d.cdf = [](double x) { return normal_cdf(x); };
    d.quantile = [](double u) { return normal_quantile(u); };
    d.density_quantile = [](double u) { return normal_pdf(normal_quantile(u)); };
    d.pdq_closed_form = [](double u) { return 2.0 * kSqrtPi * normal_pdf(normal_quantile(u)); };
    d.fq_exponents = {std::nullopt, std::nullopt};  // u*sqrt(2 ln 1/u): fitted
    d.bounded_pdf = true;
    d.log_moment = [](int n) {
        return 0.5 * (1.0 - n) * std::log(2.0 * kPi) - 0.5 * std::log(static_cast<double>(n));
    };
    return d;
}

distribution make_logistic() {
    distribution d;
    d.name = "logistic";
    d.support = interval::real_line();
    d.pdf = [](double x) {
        const double e = std::exp(-std::abs(x));
        return e / ((1.0 + e) * (1.0 + e));
    };
    d.cdf = [](double x) { return 1.0 / (1.0 + std::exp(-x)); };
    d.quantile = [](double u) { return std::log(u / (1.0 - u)); };
    d.density_quantile = [](double u) { return u * (1.0 - u); };
    d.pdq_closed_form = [](double u) { return 6.0 * u * (1.0 - u); };
    d.fq_exponents = {1.0, 1.0};
    d.bounded_pdf = true;
    d.log_moment = [](int n) { return special::log_beta(n, n); };
    return d;
}

distribution make_laplace() {
    distribution d;
    d.name = "laplace";
    d.support = interval::real_line();
    d.pdf = [](double x) { return 0.5 * std::exp(-std::abs(x)); };
    d.cdf = [](double x) {
        return (x < 0.0) ? 0.5 * std::exp(x) : 1.0 - 0.5 * std::exp(-x);
    };
    d.quantile = [](double u) {
        return (u <= 0.5) ? std::log(2.0 * u) : -std::log(2.0 * (1.0 - u));
    };
    d.density_quantile = [](double u) { return std::min(u, 1.0 - u); };
    // Normalized symmetric extension of the displayed u <= 1/2 branch.
    d.pdq_closed_form = [](double u) { return 4.0 * std::min(u, 1.0 - u); };
    d.fq_exponents = {1.0, 1.0};
    d.bounded_pdf = true;
    d.log_moment = [](int n) { return (1.0 - n) * std::log(2.0) - std::log(n); };
    return d;
}

distribution make_cauchy() {
    distribution d;
    d.name = "cauchy";
    d.support = interval::real_line();
    d.pdf = [](double x) { return 1.0 / (kPi * (1.0 + x * x)); };
    d.cdf = [](double x) { return 0.5 + std::atan(x) / kPi; };
    d.quantile = [](double u) { return std::tan(kPi * (u - 0.5)); };
    d.density_quantile = [](double u) {
        const double s = std::sin(kPi * u);
        return s * s / kPi;
    };
    d.pdq_closed_form = [](double u) {
        const double s = std::sin(kPi * u);
        return 2.0 * s * s;
    };
    d.fq_exponents = {2.0, 2.0};
    d.bounded_pdf = true;
    d.log_moment = [](int n) {
        // integral of sin^(2n-2) over a period: central binomial / 4^(n-1)
        return (1.0 - n) * std::log(kPi) + std::lgamma(2.0 * n - 1.0) -
               2.0 * std::lgamma(static_cast<double>(n)) - (n - 1.0) * std::log(4.0);
    };
    return d;
}

distribution make_exponential() {
    distribution d;
    d.name = "exponential";
    d.support = interval::positive();
    d.pdf = [](double x) { return std::exp(-x); };
    d.cdf = [](double x) { return -std::expm1(-x); };
    d.quantile = [](double u) { return -std::log1p(-u); };
    d.density_quantile = [](double u) { return 1.0 - u; };
    d.pdq_closed_form = [](double u) { return 2.0 * (1.0 - u); };
    d.fq_exponents = {0.0, 1.0};
    d.bounded_pdf = true;
    d.log_moment = [](int n) { return -std::log(static_cast<double>(n)); };
    return d;
}

distribution make_gumbel() {
    distribution d;
    d.name = "gumbel";
    d.support = interval::real_line();
    d.pdf = [](double x) { return std::exp(-x - std::exp(-x)); };
    d.cdf = [](double x) { return std::exp(-std::exp(-x)); };
    d.quantile = [](double u) { return -std::log(-std::log(u)); };
    d.density_quantile = [](double u) { return -u * std::log(u); };
    d.pdq_closed_form = [](double u) { return -4.0 * u * std::log(u); };
    d.fq_exponents = {std::nullopt, 1.0};
    d.bounded_pdf = true;
    d.log_moment = [](int n) { return std::lgamma(n) - n * std::log(static_cast<double>(n)); };
    return d;
}

distribution make_lognormal(double sigma) {
    if (!(sigma > 0.0)) throw std::invalid_argument("lognormal: requires sigma > 0");
    distribution d;
    d.name = "lognormal";
    d.params = {{"sigma", sigma}};
    d.support = interval::positive();
    d.pdf = [sigma](double x) { return normal_pdf(std::log(x) / sigma) / (x * sigma); };
    d.cdf = [sigma](double x) { return normal_cdf(std::log(x) / sigma); };
    d.quantile = [sigma](double u) { return std::exp(sigma * normal_quantile(u)); };
    d.density_quantile = [sigma](double u) {
        const double z = normal_quantile(u);
        return normal_pdf(z) * std::exp(-sigma * z) / sigma;
    };
    d.pdq_closed_form = [sigma](double u) {
        const double z = normal_quantile(u);
        return 2.0 * kSqrtPi * std::exp(-0.25 * sigma * sigma) * normal_pdf(z) *
               std::exp(-sigma * z);
    };
    d.fq_exponents = {std::nullopt, std::nullopt};
    d.bounded_pdf = true;
    d.log_moment = [sigma](int n) {
        const double c = (n - 1.0) * sigma;
        return (1.0 - n) * std::log(sigma) + 0.5 * (1.0 - n) * std::log(2.0 * kPi) -
               0.5 * std::log(static_cast<double>(n)) + c * c / (2.0 * n);
    };
    return d;
}

distribution make_pareto(double a) {
    if (!(a > 0.0)) throw std::invalid_argument("pareto: requires a > 0");
    distribution d;
    d.name = "pareto";
    d.params = {{"a", a}};
    d.support = interval::positive();
    d.pdf = [a](double x) { return a * std::pow(1.0 + x, -a - 1.0); };
    d.cdf = [a](double x) { return 1.0 - std::pow(1.0 + x, -a); };
    d.quantile = [a](double u) { return std::pow(1.0 - u, -1.0 / a) - 1.0; };
    d.density_quantile = [a](double u) { return a * std::pow(1.0 - u, 1.0 + 1.0 / a); };
    if (a == 1.0) {
        d.pdq_closed_form = [](double u) { return 3.0 * (1.0 - u) * (1.0 - u); };
    }
    d.fq_exponents = {0.0, 1.0 + 1.0 / a};
    d.bounded_pdf = true;
    d.log_moment = [a](int n) {
        return (n - 1.0) * std::log(a) - std::log((n - 1.0) * (1.0 + 1.0 / a) + 1.0);
    };
    return d;
}

distribution make_power(double b) {
    if (!(b > 0.5))
        throw not_square_integrable("power: pdQ does not exist: f not square-integrable (b <= 1/2)");
    distribution d;
    d.name = "power";
    d.params = {{"b", b}};
    d.support = interval::unit();
    d.pdf = [b](double x) { return b * std::pow(x, b - 1.0); };
    d.cdf = [b](double x) { return std::pow(x, b); };
    d.quantile = [b](double u) { return std::pow(u, 1.0 / b); };
    d.density_quantile = [b](double u) { return b * std::pow(u, 1.0 - 1.0 / b); };
    d.pdq_closed_form = [b](double u) { return (2.0 - 1.0 / b) * std::pow(u, 1.0 - 1.0 / b); };
    d.fq_exponents = {1.0 - 1.0 / b, 0.0};
    d.bounded_pdf = b >= 1.0;
    d.log_moment = [b](int n) {
        const double e = n * (b - 1.0) + 1.0;
        if (e <= 0.0) return inf;
        return n * std::log(b) - std::log(e);
    };
    return d;
}

distribution make_beta(double a, double b) {
    if (!(a > 0.5) || !(b > 0.5))
        throw not_square_integrable(
            "beta: pdQ does not exist: f not square-integrable (requires a > 1/2, b > 1/2)");
    distribution d;
    d.name = "beta";
    d.params = {{"a", a}, {"b", b}};
    d.support = interval::unit();
    const double log_norm = special::log_beta(a, b);
    auto pdf = [a, b, log_norm](double x) {
        return std::exp((a - 1.0) * std::log(x) + (b - 1.0) * std::log1p(-x) - log_norm);
    };
    d.pdf = pdf;
    // cdf / quantile backed by a tabulated cumulative of the pdf
    auto table = std::make_shared<density_grid>(
        density_grid::build(pdf, {a - 1.0, b - 1.0}, grid_spec{}, exec::seq));
    d.cdf = [table](double x) { return table->cdf(x); };
    d.quantile = [table](double u) { return table->quantile(u); };
    d.density_quantile = [a, b, log_norm, pdf, table](double u) {
        if (u > 0.5) {
            // work in the distance from 1, which the quantile contraction
            // can push below the resolution of 1-x
            const double s = table->upper_quantile_distance(1.0 - u);
            return std::exp((a - 1.0) * std::log1p(-s) + (b - 1.0) * std::log(s) - log_norm);
        }
        return pdf(table->quantile(u));
    };
    d.fq_exponents = {1.0 - 1.0 / a, 1.0 - 1.0 / b};
    d.bounded_pdf = a >= 1.0 && b >= 1.0;
    d.log_moment = [a, b, log_norm](int n) {
        const double ea = n * (a - 1.0) + 1.0;
        const double eb = n * (b - 1.0) + 1.0;
        if (ea <= 0.0 || eb <= 0.0) return inf;
        return special::log_beta(ea, eb) - n * log_norm;
    };
    return d;
}

distribution make_student_t(double nu) {
    if (!(nu > 0.0)) throw std::invalid_argument("t: requires nu > 0");
    distribution d;
    d.name = "t";
    d.params = {{"nu", nu}};
    d.support = interval::real_line();
    const double log_c = std::lgamma(0.5 * (nu + 1.0)) - std::lgamma(0.5 * nu) -
                         0.5 * std::log(nu * kPi);
    auto pdf = [nu, log_c](double x) {
        return std::exp(log_c - 0.5 * (nu + 1.0) * std::log1p(x * x / nu));
    };
    d.pdf = pdf;
    if (nu == 2.0) {
        d.cdf = [](double x) { return 0.5 * (1.0 + x / std::sqrt(2.0 + x * x)); };
        d.quantile = [](double u) {
            return (2.0 * u - 1.0) / std::sqrt(2.0 * u * (1.0 - u));
        };
        d.pdq_closed_form = [](double u) {
            return 128.0 * std::pow(u * (1.0 - u), 1.5) / (3.0 * kPi);
        };
    } else {
        // symmetric law: cdf through the Beta(nu/2, 1/2) cumulative of
        // z = nu / (nu + x^2)
        auto zbeta = std::make_shared<density_grid>(density_grid::build(
            [nu](double z) {
                return std::exp((0.5 * nu - 1.0) * std::log(z) - 0.5 * std::log1p(-z) -
                                special::log_beta(0.5 * nu, 0.5));
            },
            {0.5 * nu - 1.0, -0.5}, grid_spec{}, exec::seq));
        d.cdf = [nu, zbeta](double x) {
            // P(|T| > |x|)/2 through the Beta(nu/2, 1/2) law of nu/(nu+T^2)
            const double tail = 0.5 * zbeta->cdf(nu / (nu + x * x));
            return (x >= 0.0) ? 1.0 - tail : tail;
        };
        d.quantile = [nu, zbeta](double u) {
            if (u == 0.5) return 0.0;
            const double tail = (u > 0.5) ? 2.0 * (1.0 - u) : 2.0 * u;
            const double z = zbeta->quantile(tail);
            const double x = std::sqrt(std::max(0.0, nu * (1.0 - z) / z));
            return (u > 0.5) ? x : -x;
        };
    }
    auto quant = d.quantile;
    d.density_quantile = [pdf, quant](double u) { return pdf(quant(u)); };
    d.fq_exponents = {1.0 + 1.0 / nu, 1.0 + 1.0 / nu};
    d.bounded_pdf = true;
    d.log_moment = [nu, log_c](int n) {
        return n * log_c + 0.5 * std::log(nu) +
               special::log_beta(0.5, 0.5 * (n * (nu + 1.0) - 1.0));
    };
    return d;
}

distribution make_chisq(double nu) {
    if (!(nu > 1.0))
        throw not_square_integrable(
            "chisq: pdQ does not exist: f not square-integrable (requires nu > 1)");
    distribution d;
    d.name = "chisq";
    d.params = {{"nu", nu}};
    d.support = interval::positive();
    const double log_norm = 0.5 * nu * std::log(2.0) + std::lgamma(0.5 * nu);
    auto pdf = [nu, log_norm](double x) {
        return std::exp((0.5 * nu - 1.0) * std::log(x) - 0.5 * x - log_norm);
    };
    d.pdf = pdf;
    d.cdf = [nu](double x) { return special::chi_square_cdf(x, nu); };
    d.quantile = [nu](double u) { return special::chi_square_quantile(u, nu); };
    auto quant = d.quantile;
    d.density_quantile = [pdf, quant](double u) { return pdf(quant(u)); };
    d.fq_exponents = {1.0 - 2.0 / nu, std::nullopt};
    d.bounded_pdf = nu >= 2.0;
    d.log_moment = [nu, log_norm](int n) {
        const double e = n * (0.5 * nu - 1.0) + 1.0;
        if (e <= 0.0) return inf;
        return std::lgamma(e) + e * std::log(2.0 / n) - n * log_norm;
    };
    return d;
}

distribution make_gamma_dist(double k) {
    if (!(k > 0.5))
        throw not_square_integrable(
            "gamma: pdQ does not exist: f not square-integrable (requires k > 1/2)");
    distribution d;
    d.name = "gamma";
    d.params = {{"k", k}};
    d.support = interval::positive();
    const double log_norm = std::lgamma(k);
    auto pdf = [k, log_norm](double x) {
        return std::exp((k - 1.0) * std::log(x) - x - log_norm);
    };
    d.pdf = pdf;
    d.cdf = [k](double x) { return special::gamma_p(k, x); };
    d.quantile = [k](double u) { return 0.5 * special::chi_square_quantile(u, 2.0 * k); };
    auto quant = d.quantile;
    d.density_quantile = [pdf, quant](double u) { return pdf(quant(u)); };
    d.fq_exponents = {1.0 - 1.0 / k, std::nullopt};
    d.bounded_pdf = k >= 1.0;
    d.log_moment = [k, log_norm](int n) {
        const double e = n * (k - 1.0) + 1.0;
        if (e <= 0.0) return inf;
        return std::lgamma(e) - e * std::log(static_cast<double>(n)) - n * log_norm;
    };
    return d;
}

distribution make_weibull(double beta) {
    if (!(beta > 0.5))
        throw not_square_integrable(
            "weibull: pdQ does not exist: f not square-integrable (requires beta > 1/2)");
    distribution d;
    d.name = "weibull";
    d.params = {{"beta", beta}};
    d.support = interval::positive();
    d.pdf = [beta](double x) {
        return beta * std::pow(x, beta - 1.0) * std::exp(-std::pow(x, beta));
    };
    d.cdf = [beta](double x) { return -std::expm1(-std::pow(x, beta)); };
    d.quantile = [beta](double u) { return std::pow(-std::log1p(-u), 1.0 / beta); };
    d.density_quantile = [beta](double u) {
        return beta * std::pow(-std::log1p(-u), 1.0 - 1.0 / beta) * (1.0 - u);
    };
    d.fq_exponents = {1.0 - 1.0 / beta, std::nullopt};
    d.bounded_pdf = beta >= 1.0;
    return d;
}

distribution make_tukey(double lambda) {
    distribution d;
    d.name = "tukey";
    d.params = {{"lambda", lambda}};
    if (lambda == 0.0) return make_logistic();
    auto quantile = [lambda](double u) {
        return (std::pow(u, lambda) - std::pow(1.0 - u, lambda)) / lambda;
    };
    auto quantile_density = [lambda](double u) {
        return std::pow(u, lambda - 1.0) + std::pow(1.0 - u, lambda - 1.0);
    };
    d.support = (lambda > 0.0) ? interval(-1.0 / lambda, 1.0 / lambda) : interval::real_line();
    d.quantile = quantile;
    d.density_quantile = [quantile_density](double u) { return 1.0 / quantile_density(u); };
    d.cdf = [quantile, sup = d.support](double x) {
        auto eq = [&](double u) { return quantile(u) - x; };
        return find_root(eq, interval(1e-15, 1.0 - 1e-15));
    };
    auto cdf = d.cdf;
    auto dq = d.density_quantile;
    d.pdf = [cdf, dq](double x) { return dq(cdf(x)); };
    const double p = (lambda < 1.0) ? 1.0 - lambda : 0.0;
    d.fq_exponents = {p, p};
    d.bounded_pdf = true;
    return d;
}

distribution make_loglog() {
    distribution d;
    d.name = "loglog";
    d.support = interval::unit();
    d.pdf = [](double x) { return -std::log(x); };
    d.cdf = [](double x) { return x * (1.0 - std::log(x)); };
    d.quantile = [](double u) {
        // solve in y = ln x so roots near zero keep relative accuracy:
        // ln F = y + ln(1 - y)
        const double lu = std::log(u);
        auto eq = [lu](double y) { return y + std::log1p(-y) - lu; };
        return std::exp(find_root(eq, interval(-745.0, 0.0), {1e-13, 300}));
    };
    auto quant = d.quantile;
    d.density_quantile = [quant](double u) { return -std::log(quant(u)); };
    d.fq_exponents = {std::nullopt, 0.5};
    d.bounded_pdf = false;
    d.log_moment = [](int n) { return std::lgamma(n + 1.0); };
    return d;
}

}  // namespace

distribution make_family(const std::string& name, const std::map<std::string, double>& params) {
    param_reader p(name, params);
    distribution d;
    if (name == "uniform") {
        d = make_uniform();
    } else if (name == "normal") {
        d = make_normal();
    } else if (name == "logistic") {
        d = make_logistic();
    } else if (name == "laplace") {
        d = make_laplace();
    } else if (name == "cauchy") {
        d = make_cauchy();
    } else if (name == "exponential" || name == "exp") {
        d = make_exponential();
    } else if (name == "gumbel") {
        d = make_gumbel();
    } else if (name == "lognormal" || name == "ln") {
        d = make_lognormal(p.get("sigma", 1.0));
    } else if (name == "pareto") {
        d = make_pareto(p.get("a", 1.0));
    } else if (name == "power") {
        d = make_power(p.require("b"));
    } else if (name == "beta") {
        d = make_beta(p.get("a", 1.0), p.get("b", 1.0));
    } else if (name == "t") {
        d = make_student_t(p.get("nu", 2.0));
    } else if (name == "t2") {
        d = make_student_t(2.0);
    } else if (name == "chisq") {
        d = make_chisq(p.require("nu"));
    } else if (name == "gamma") {
        d = make_gamma_dist(p.require("k"));
    } else if (name == "weibull") {
        d = make_weibull(p.require("beta"));
    } else if (name == "tukey") {
        d = make_tukey(p.require("lambda"));
    } else if (name == "loglog") {
        d = make_loglog();
    } else {
        throw std::invalid_argument("unknown family: " + name);
    }
    p.done();
    return d;
}

distribution parse_family_spec(const std::string& spec) {
    const auto colon = spec.find(':');
    const std::string name = spec.substr(0, colon);
    std::map<std::string, double> params;
    if (colon != std::string::npos) {
        std::string rest = spec.substr(colon + 1);
        std::size_t pos = 0;
        while (pos < rest.size()) {
            auto comma = rest.find(',', pos);
            if (comma == std::string::npos) comma = rest.size();
            const std::string item = rest.substr(pos, comma - pos);
            const auto eq = item.find('=');
            if (eq == std::string::npos || eq == 0)
                throw std::invalid_argument("malformed family spec: '" + spec + "'");
            const std::string key = item.substr(0, eq);
            const std::string val = item.substr(eq + 1);
            double x = 0.0;
            const auto res = std::from_chars(val.data(), val.data() + val.size(), x);
            if (res.ec != std::errc{} || res.ptr != val.data() + val.size())
                throw std::invalid_argument("malformed parameter value in spec: '" + spec + "'");
            params[key] = x;
            pos = comma + 1;
        }
    }
    return make_family(name, params);
}

double evaluate(const distribution& dist, eval_what what, double arg) {
    switch (what) {
        case eval_what::pdf:
            return dist.evaluate_pdf(arg);
        case eval_what::cdf:
            return dist.evaluate_cdf(arg);
        case eval_what::quantile:
            return dist.evaluate_quantile(arg);
        case eval_what::density_quantile:
            return dist.evaluate_density_quantile(arg);
    }
    throw std::invalid_argument("evaluate: unknown selector");
}

const std::vector<std::string>& reference_families() {
    static const std::vector<std::string> names = {
        "normal", "logistic", "laplace",   "t2",        "cauchy",
        "exponential", "gumbel", "lognormal", "pareto"};
    return names;
}

}  // namespace pdqlab
