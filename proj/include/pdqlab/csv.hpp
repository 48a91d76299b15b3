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

#include <iosfwd>
#include <string>
#include <vector>

#include "pdqlab/divergence.hpp"
#include "pdqlab/grid.hpp"
#include "pdqlab/iterate.hpp"

namespace pdqlab {

class io_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Locale-independent shortest round-trip formatting (to_chars).
std::string format_double(double v);

/// Two-column `u,density` export/import of a density on (0,1).
void write_pdq_csv(std::ostream& os, const grid_function& g);
grid_function read_pdq_csv(std::istream& is);

void write_locus_csv(std::ostream& os, const map_locus_t& locus);

void write_trace_csv(std::ostream& os, const iteration_trace& trace,
                     const std::vector<double>& r_list);

/// One decimal value per line; a leading non-numeric header line is skipped.
std::vector<double> read_sample(std::istream& is);

}  // namespace pdqlab
