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

#include <functional>

#include "pdqlab/common.hpp"

namespace pdqlab {

struct root_options {
    double tol = 1e-12;
    int max_iter = 200;
};

/// Root of a continuous monotone function on the bracket, by Brent's method
/// (safeguarded bisection / secant / inverse quadratic). The function must
/// change sign across the bracket; throws bracket_error otherwise.
double find_root(const std::function<double(double)>& g, interval bracket,
                 root_options opt = {});

}  // namespace pdqlab
