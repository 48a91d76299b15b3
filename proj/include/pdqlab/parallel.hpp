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

#include <cstddef>
#include <exception>
#include <mutex>
#include <utility>

namespace pdqlab {

/// Execution policy for the data-parallel kernels (Monte Carlo replicates,
/// locus sweep points, grid node loops). `seq` is the serial reference
/// implementation; results must be identical under both policies.
enum class exec { seq, par };

namespace detail {
// Exceptions must not escape an OpenMP region; capture the first one.
class exception_latch {
public:
    void capture() {
        std::lock_guard<std::mutex> lock(mu_);
        if (!first_) first_ = std::current_exception();
    }
    void rethrow_if_set() {
        if (first_) std::rethrow_exception(first_);
    }

private:
    std::mutex mu_;
    std::exception_ptr first_;
};
}  // namespace detail

/// Apply body(i) for i in [0, n). Each iteration must be independent and
/// write only to its own slots.
template <class Body>
void for_index(exec policy, std::ptrdiff_t n, Body&& body) {
    if (policy == exec::par) {
        detail::exception_latch latch;
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t i = 0; i < n; ++i) {
            try {
                body(i);
            } catch (...) {
                latch.capture();
            }
        }
        latch.rethrow_if_set();
    } else {
        for (std::ptrdiff_t i = 0; i < n; ++i) body(i);
    }
}

}  // namespace pdqlab
