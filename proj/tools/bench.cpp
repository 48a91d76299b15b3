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

// Compares the serial reference implementations of the data-parallel
// kernels against the OpenMP paths and checks that results agree exactly.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "pdqlab/divergence.hpp"
#include "pdqlab/iterate.hpp"
#include "pdqlab/uniftest.hpp"

namespace {

double now_seconds() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

template <class Fn>
double timed(Fn&& fn) {
    const double t0 = now_seconds();
    fn();
    return now_seconds() - t0;
}

void report(const char* kernel, double serial, double parallel, bool match) {
    std::printf("%-28s serial %8.3fs   parallel %8.3fs   speedup %5.2fx   results %s\n", kernel,
                serial, parallel, serial / parallel, match ? "identical" : "DIFFER");
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP enabled, max threads = %d\n\n", omp_get_max_threads());
#else
    std::printf("OpenMP not enabled; both paths run serially\n\n");
#endif
    using namespace pdqlab;

    {
        const pdq alt = pdq::of(make_family("normal"));
        mc_result r_seq{}, r_par{};
        const double ts = timed([&] {
            r_seq = mc_estimate(alt, 100, 0.05, 40000, 7, mc_target::power, exec::seq);
        });
        const double tp = timed([&] {
            r_par = mc_estimate(alt, 100, 0.05, 40000, 7, mc_target::power, exec::par);
        });
        report("monte-carlo power", ts, tp, r_seq.value == r_par.value);
    }
    {
        family_grid grid;
        grid.family = "pareto:a=1";
        grid.keys = {"a"};
        for (int i = 0; i < 192; ++i) grid.values.push_back(0.2 + 0.025 * i);
        map_locus_t l_seq, l_par;
        const double ts = timed([&] { l_seq = map_locus(grid, {}, exec::seq); });
        const double tp = timed([&] { l_par = map_locus(grid, {}, exec::par); });
        bool match = l_seq.points.size() == l_par.points.size();
        for (std::size_t i = 0; match && i < l_seq.points.size(); ++i)
            match = l_seq.points[i].distance == l_par.points[i].distance;
        report("divergence-map locus", ts, tp, match);
    }
    {
        const pdq start = pdq::of(make_family("cauchy"));
        iteration_trace t_seq, t_par;
        const double ts = timed([&] { t_seq = iterate_grid(start, 8, {4.0}, {}, exec::seq); });
        const double tp = timed([&] { t_par = iterate_grid(start, 8, {4.0}, {}, exec::par); });
        bool match = t_seq.steps.size() == t_par.steps.size();
        for (std::size_t i = 0; match && i < t_seq.steps.size(); ++i)
            match = t_seq.steps[i].kappa == t_par.steps[i].kappa &&
                    t_seq.steps[i].l2 == t_par.steps[i].l2;
        report("grid transform iteration", ts, tp, match);
    }
    return 0;
}
