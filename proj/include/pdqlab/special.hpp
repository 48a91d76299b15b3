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

namespace pdqlab::special {

/// Standard normal density phi(x).
double normal_pdf(double x);

/// Standard normal cdf Phi(x), via erfc; accurate in both tails.
double normal_cdf(double x);

/// Inverse standard normal cdf (Wichura's PPND16 rational approximation,
/// |relative error| below 1e-15). Returns +/-inf at p = 1, 0.
double normal_quantile(double p);

/// Regularized lower incomplete gamma P(a,x) = gamma(a,x)/Gamma(a).
double gamma_p(double a, double x);

/// Regularized upper incomplete gamma Q(a,x) = 1 - P(a,x).
double gamma_q(double a, double x);

/// Chi-square cdf with nu degrees of freedom.
double chi_square_cdf(double x, double nu);

/// Chi-square quantile by root-finding on the regularized incomplete gamma.
double chi_square_quantile(double p, double nu);

/// log of the beta function B(a,b).
double log_beta(double a, double b);

}  // namespace pdqlab::special
