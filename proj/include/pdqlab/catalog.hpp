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

#include "pdqlab/distribution.hpp"

namespace pdqlab {

/// Construct a catalog family. Known names (aliases in parentheses):
///   uniform, normal, logistic, laplace, t (nu; t2), cauchy,
///   exponential (exp), gumbel, lognormal (sigma; ln), pareto (a),
///   power (b), beta (a, b), chisq (nu), gamma (k), weibull (beta),
///   tukey (lambda), loglog.
/// Throws std::invalid_argument for unknown names / parameters and
/// not_square_integrable when the parameters put the family outside the
/// region where the normalized density-quantile exists.
distribution make_family(const std::string& name,
                         const std::map<std::string, double>& params = {});

/// Parse a `name:key=value,key=value` family spec.
distribution parse_family_spec(const std::string& spec);

enum class eval_what { pdf, cdf, quantile, density_quantile };

/// Evaluate one of the distribution's functions with domain checking.
double evaluate(const distribution& dist, eval_what what, double arg);

/// A family name plus the parameter values of a one-parameter sweep.
struct family_grid {
    std::string family;            // spec template, e.g. "pareto:a=1"
    std::vector<std::string> keys; // swept parameter key(s)
    std::vector<double> values;
};

/// The nine closed-form reference families, in presentation order.
const std::vector<std::string>& reference_families();

}  // namespace pdqlab
