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

#include "pdqlab/csv.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>

namespace pdqlab {

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

namespace {

double parse_double(const std::string& s) {
    double v = 0.0;
    const char* b = s.data();
    const char* e = s.data() + s.size();
    while (b < e && (*b == ' ' || *b == '\t')) ++b;
    if (b < e && std::string_view(b, e - b) == "inf") return inf;
    if (b < e && std::string_view(b, e - b) == "-inf") return -inf;
    const auto res = std::from_chars(b, e, v);
    if (res.ec != std::errc{}) throw io_error("malformed numeric field: '" + s + "'");
    return v;
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (true) {
        const auto next = line.find(sep, pos);
        if (next == std::string::npos) {
            out.push_back(line.substr(pos));
            return out;
        }
        out.push_back(line.substr(pos, next - pos));
        pos = next + 1;
    }
}

std::string strip_cr(std::string s) {
    if (!s.empty() && s.back() == '\r') s.pop_back();
    return s;
}

}  // namespace

void write_pdq_csv(std::ostream& os, const grid_function& g) {
    os << "u,density\n";
    for (std::size_t i = 0; i < g.nodes.size(); ++i)
        os << format_double(g.nodes[i]) << ',' << format_double(g.values[i]) << '\n';
}

grid_function read_pdq_csv(std::istream& is) {
    grid_function g;
    std::string line;
    bool first = true;
    while (std::getline(is, line)) {
        line = strip_cr(line);
        if (line.empty()) continue;
        if (first) {
            first = false;
            if (line.rfind("u,", 0) == 0) continue;  // header
        }
        const auto fields = split(line, ',');
        if (fields.size() != 2) throw io_error("pdq csv: expected two columns");
        g.nodes.push_back(parse_double(fields[0]));
        g.values.push_back(parse_double(fields[1]));
    }
    if (g.nodes.size() < 8) throw io_error("pdq csv: too few rows");
    return g;
}

void write_locus_csv(std::ostream& os, const map_locus_t& locus) {
    os << "family,param,s1,s2,distance\n";
    for (const auto& p : locus.points) {
        os << locus.family << ',' << format_double(p.param) << ',' << format_double(p.s1)
           << ',' << format_double(p.s2) << ',' << format_double(p.distance) << '\n';
    }
}

void write_trace_csv(std::ostream& os, const iteration_trace& trace,
                     const std::vector<double>& r_list) {
    os << "n,kappa,l2";
    for (double r : r_list) os << ",lr_" << format_double(r);
    os << ",sup_norm,engine\n";
    for (const auto& s : trace.steps) {
        os << s.n << ',' << format_double(s.kappa) << ',' << format_double(s.l2);
        for (double r : r_list) {
            double v = std::numeric_limits<double>::quiet_NaN();
            for (const auto& [rr, val] : s.lr)
                if (rr == r) v = val;
            os << ',' << format_double(v);
        }
        os << ',' << format_double(s.sup_norm) << ',' << trace.engine << '\n';
    }
}

std::vector<double> read_sample(std::istream& is) {
    std::vector<double> x;
    std::string line;
    bool first = true;
    while (std::getline(is, line)) {
        line = strip_cr(line);
        if (line.empty()) continue;
        if (first) {
            first = false;
            try {
                x.push_back(parse_double(line));
            } catch (const io_error&) {
                // header line
            }
            continue;
        }
        x.push_back(parse_double(line));
    }
    return x;
}

}  // namespace pdqlab
