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

#include "pdqlab/cli.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "pdqlab/csv.hpp"
#include "pdqlab/divergence.hpp"
#include "pdqlab/iterate.hpp"
#include "pdqlab/uniftest.hpp"

namespace pdqlab::cli {

namespace {

using nlohmann::json;

struct common_opts {
    std::uint64_t seed = 0;
    int grid_size = 4097;
    double tol = 1e-10;
    std::string output = "-";
};

void add_common(CLI::App* cmd, common_opts& c, bool with_seed = true) {
    if (with_seed)
        cmd->add_option("--seed", c.seed, "RNG seed")->envname("PDQLAB_SEED");
    cmd->add_option("--grid-size", c.grid_size, "canonical grid size")
        ->envname("PDQLAB_GRID_SIZE")
        ->check(CLI::Range(64, 1 << 22));
    cmd->add_option("--tol", c.tol, "quadrature absolute tolerance")
        ->envname("PDQLAB_TOL")
        ->check(CLI::PositiveNumber);
    cmd->add_option("-o,--output", c.output, "output file ('-' for stdout)");
}

grid_spec spec_of(const common_opts& c) {
    grid_spec s;
    s.size = c.grid_size;
    return s;
}

// Writes to the named file, or to fallback when the path is "-".
class output_sink {
public:
    output_sink(const std::string& path, std::ostream& fallback) : os_(&fallback) {
        if (path != "-" && !path.empty()) {
            file_.open(path);
            if (!file_) throw io_error("cannot open output file: " + path);
            os_ = &file_;
        }
    }
    std::ostream& stream() { return *os_; }
    void finish() {
        os_->flush();
        if (file_.is_open() && !file_) throw io_error("write failure on output file");
    }

private:
    std::ofstream file_;
    std::ostream* os_;
};

struct sweep_t {
    std::vector<std::string> keys;
    std::vector<double> values;
};

sweep_t parse_sweep(const std::string& text) {
    const auto eq = text.find('=');
    if (eq == std::string::npos || eq == 0)
        throw std::invalid_argument("sweep must be key[,key]=lo:hi:steps");
    sweep_t sw;
    std::stringstream keys(text.substr(0, eq));
    std::string k;
    while (std::getline(keys, k, ',')) sw.keys.push_back(k);
    const std::string range = text.substr(eq + 1);
    double lo = 0, hi = 0;
    int steps = 0;
    char c1 = 0, c2 = 0;
    std::istringstream rs(range);
    if (!(rs >> lo >> c1 >> hi >> c2 >> steps) || c1 != ':' || c2 != ':' || steps < 1)
        throw std::invalid_argument("sweep must be key[,key]=lo:hi:steps");
    for (int i = 0; i < steps; ++i)
        sw.values.push_back(steps == 1 ? lo : lo + (hi - lo) * i / (steps - 1.0));
    return sw;
}

std::vector<double> parse_r_list(const std::string& text) {
    std::vector<double> rs;
    if (text.empty()) return rs;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) rs.push_back(std::stod(item));
    return rs;
}

distribution family_with(const std::string& spec, const std::vector<std::string>& keys,
                         double value) {
    distribution base = parse_family_spec(spec);
    auto params = base.params;
    for (const auto& k : keys) params[k] = value;
    return make_family(base.name, params);
}

int cmd_table1(const common_opts& c, std::ostream& fallback) {
    output_sink sink(c.output, fallback);
    auto& os = sink.stream();
    os << "family,i_u_f,i_f_u,sigma0,sigma1,j,j_over_sigma1,sigma0_over_sigma1\n";
    for (const auto& name : reference_families()) {
        const distribution d = make_family(name);
        const pdq shape = pdq::of(d, spec_of(c));
        const alt_moments_t am = alt_moments_by_quadrature(shape);
        const double j = am.mu1 - am.mu0;
        os << name << ',' << format_double(-am.mu0) << ',' << format_double(am.mu1) << ','
           << format_double(am.sigma0) << ',' << format_double(am.sigma1) << ','
           << format_double(j) << ',' << format_double(j / am.sigma1) << ','
           << format_double(am.sigma0 / am.sigma1) << '\n';
    }
    sink.finish();
    return 0;
}

int cmd_map(const common_opts& c, const std::string& family, const std::string& sweep_text,
            std::ostream& fallback) {
    const sweep_t sw = parse_sweep(sweep_text);
    family_grid grid;
    grid.family = family;
    grid.keys = sw.keys;
    grid.values = sw.values;
    const map_locus_t locus = map_locus(grid, spec_of(c));
    output_sink sink(c.output, fallback);
    write_locus_csv(sink.stream(), locus);
    sink.finish();
    return 0;
}

int cmd_iterate(const common_opts& c, const std::string& family, const std::string& engine,
                int n, const std::string& r_text, const std::string& dump_dir,
                std::ostream& fallback) {
    const std::vector<double> r_list = parse_r_list(r_text);
    const distribution d = parse_family_spec(family);
    iteration_trace trace;
    if (engine == "moments") {
        int max_r = 3;
        for (double r : r_list)
            if (r == std::floor(r) && r >= 4.0) max_r = std::max(max_r, static_cast<int>(r));
        const moment_sequence mu = compute_moments(d, n + 2 + std::max(0, max_r - 2));
        trace = kappa_diagnostics(mu, max_r);
        if (static_cast<int>(trace.steps.size()) > n) trace.steps.resize(n);
    } else if (engine == "grid") {
        std::function<void(int, const pdq&)> dump;
        if (!dump_dir.empty()) {
            std::filesystem::create_directories(dump_dir);
            const grid_spec spec = spec_of(c);
            dump = [dump_dir, spec](int step, const pdq& f) {
                char name[32];
                std::snprintf(name, sizeof(name), "step_%03d.csv", step);
                std::ofstream os(std::filesystem::path(dump_dir) / name);
                if (!os) throw io_error("cannot open dump file in " + dump_dir);
                write_pdq_csv(os, f.to_grid_function(spec));
            };
        }
        trace = iterate_grid(pdq::of(d, spec_of(c)), n, r_list, spec_of(c), exec::par, dump);
    } else {
        throw std::invalid_argument("engine must be 'moments' or 'grid'");
    }
    output_sink sink(c.output, fallback);
    write_trace_csv(sink.stream(), trace, r_list);
    sink.finish();
    return 0;
}

int cmd_power(const common_opts& c, const std::string& alt_spec, int m, double alpha,
              const std::string& sweep_text, std::ostream& fallback) {
    output_sink sink(c.output, fallback);
    auto& os = sink.stream();
    if (sweep_text.empty()) {
        const distribution d = parse_family_spec(alt_spec);
        const power_result pr = asymptotic_power(alt_moments(pdq::of(d, spec_of(c))), m, alpha);
        json out = {{"power", pr.power}, {"mode", pr.mode}, {"m", m}, {"alpha", alpha}};
        os << out.dump() << '\n';
        sink.finish();
        return 0;
    }
    const sweep_t sw = parse_sweep(sweep_text);
    os << "family,param,m,alpha,power\n";
    std::vector<double> powers(sw.values.size());
    std::vector<std::string> errors(sw.values.size());
    for_index(exec::par, static_cast<std::ptrdiff_t>(sw.values.size()), [&](std::ptrdiff_t i) {
        try {
            const distribution d = family_with(alt_spec, sw.keys, sw.values[i]);
            powers[i] =
                asymptotic_power(alt_moments(pdq::of(d, spec_of(c), exec::seq), exec::seq), m,
                                 alpha)
                    .power;
        } catch (const std::exception& ex) {
            powers[i] = std::numeric_limits<double>::quiet_NaN();
            errors[i] = ex.what();
        }
    });
    const std::string label = alt_spec.substr(0, alt_spec.find(':'));
    for (std::size_t i = 0; i < sw.values.size(); ++i) {
        os << label << ',' << format_double(sw.values[i]) << ',' << m << ','
           << format_double(alpha) << ',' << format_double(powers[i]) << '\n';
    }
    sink.finish();
    return 0;
}

int cmd_test(const common_opts& c, const std::string& alt_spec, const std::string& input,
             double alpha, const std::string& mode_text, int reps, std::ostream& fallback) {
    test_mode mode;
    if (mode_text == "asymptotic")
        mode = test_mode::asymptotic;
    else if (mode_text == "exact" || mode_text == "exact_normal")
        mode = test_mode::exact_normal;
    else if (mode_text == "mc" || mode_text == "monte_carlo")
        mode = test_mode::monte_carlo;
    else
        throw std::invalid_argument("mode must be asymptotic, exact, or mc");

    std::ifstream is(input);
    if (!is) throw io_error("cannot open sample file: " + input);
    const std::vector<double> x = read_sample(is);

    const distribution d = parse_family_spec(alt_spec);
    mc_options mc;
    mc.seed = c.seed;
    mc.reps = reps;
    const test_report rep = np_test(x, pdq::of(d, spec_of(c)), alpha, mode, mc);

    const char* mode_name = rep.mode == test_mode::exact_normal ? "exact_normal"
                            : rep.mode == test_mode::asymptotic ? "asymptotic"
                                                                : "monte_carlo";
    json out = {{"statistic", rep.statistic}, {"critical_value", rep.critical_value},
                {"decision", rep.reject ? "reject" : "retain"}, {"alpha", rep.alpha},
                {"m", rep.m},                 {"mode", mode_name}};
    output_sink sink(c.output, fallback);
    sink.stream() << out.dump() << '\n';
    sink.finish();
    return 0;
}

int cmd_sample(const common_opts& c, const std::string& alt_spec, int m,
               std::ostream& fallback) {
    const distribution d = parse_family_spec(alt_spec);
    const std::vector<double> x = sample_pdq(pdq::of(d, spec_of(c)), m, c.seed);
    output_sink sink(c.output, fallback);
    for (double v : x) sink.stream() << format_double(v) << '\n';
    sink.finish();
    return 0;
}

int cmd_reconstruct(const common_opts& c, const std::string& input, int points,
                    std::ostream& fallback) {
    std::ifstream is(input);
    if (!is) throw io_error("cannot open pdq file: " + input);
    const grid_function gf = read_pdq_csv(is);
    const pdq g = pdq::from_grid(density_grid::from_values(gf), 1.0);
    const distribution rec = reconstruct_cdf(g, spec_of(c));
    output_sink sink(c.output, fallback);
    auto& os = sink.stream();
    os << "x,cdf\n";
    for (int i = 0; i <= points; ++i) {
        const double x = static_cast<double>(i) / points;
        os << format_double(x) << ',' << format_double(rec.evaluate_cdf(x)) << '\n';
    }
    sink.finish();
    return 0;
}

json error_json(int code, const std::string& what) {
    return json{{"code", code}, {"error", what}};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"probability density quantile toolkit"};
    app.require_subcommand(1);

    common_opts c_table, c_map, c_iter, c_power, c_test, c_sample, c_rec;
    std::string map_family, map_sweep;
    std::string iter_family, iter_engine = "grid", iter_r, iter_dump;
    int iter_n = 1;
    std::string power_alt, power_sweep;
    int power_m = 25;
    double power_alpha = 0.05;
    std::string test_alt, test_input, test_mode_text = "asymptotic";
    double test_alpha = 0.05;
    int test_reps = 10000;
    std::string sample_alt;
    int sample_m = 1;
    std::string rec_input;
    int rec_points = 512;

    auto* table1 = app.add_subcommand("table1", "divergence table for the reference families");
    add_common(table1, c_table, false);

    auto* map = app.add_subcommand("map", "divergence-map locus for a family sweep");
    map->add_option("--family", map_family, "family spec, e.g. pareto:a=1")->required();
    map->add_option("--sweep", map_sweep, "key[,key]=lo:hi:steps")->required();
    add_common(map, c_map, false);

    auto* iterate = app.add_subcommand("iterate", "repeated transform diagnostics");
    iterate->add_option("--family", iter_family)->required();
    iterate->add_option("--engine", iter_engine)->check(CLI::IsMember({"moments", "grid"}));
    iterate->add_option("--n", iter_n, "number of steps")->required()->check(CLI::Range(1, 64));
    iterate->add_option("--r", iter_r, "comma-separated L_r orders");
    iterate->add_option("--dump", iter_dump, "directory for per-step density CSVs");
    add_common(iterate, c_iter, false);

    auto* power = app.add_subcommand("power", "power of the uniformity test");
    power->add_option("--alt", power_alt, "alternative family spec")->required();
    power->add_option("--m", power_m, "sample size")->required()->check(CLI::PositiveNumber);
    power->add_option("--alpha", power_alpha)->check(CLI::Range(1e-12, 1.0));
    power->add_option("--sweep", power_sweep, "key[,key]=lo:hi:steps");
    add_common(power, c_power, false);

    auto* test = app.add_subcommand("test", "run the uniformity test on a sample file");
    test->add_option("--alt", test_alt)->required();
    test->add_option("--input", test_input, "sample file, one value per line")->required();
    test->add_option("--alpha", test_alpha)->check(CLI::Range(1e-12, 1.0));
    test->add_option("--mode", test_mode_text)->check(CLI::IsMember({"asymptotic", "exact", "mc"}));
    test->add_option("--reps", test_reps)->check(CLI::Range(1000, 100000000));
    add_common(test, c_test);

    auto* sample = app.add_subcommand("sample", "seeded draws from a family's shape");
    sample->add_option("--alt", sample_alt)->required();
    sample->add_option("--m", sample_m)->required()->check(CLI::PositiveNumber);
    add_common(sample, c_sample);

    auto* reconstruct = app.add_subcommand("reconstruct", "rebuild a cdf from a density CSV");
    reconstruct->add_option("--input", rec_input, "two-column u,density CSV")->required();
    reconstruct->add_option("--points", rec_points)->check(CLI::Range(16, 1 << 20));
    add_common(reconstruct, c_rec);

    std::vector<const char*> argv;
    argv.push_back("pdqlab");
    for (const auto& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << error_json(2, e.what()).dump() << '\n';
        return 2;
    }

    try {
        if (table1->parsed()) {
            set_default_quad_tolerance(c_table.tol);
            return cmd_table1(c_table, out);
        }
        if (map->parsed()) {
            set_default_quad_tolerance(c_map.tol);
            return cmd_map(c_map, map_family, map_sweep, out);
        }
        if (iterate->parsed()) {
            set_default_quad_tolerance(c_iter.tol);
            return cmd_iterate(c_iter, iter_family, iter_engine, iter_n, iter_r, iter_dump, out);
        }
        if (power->parsed()) {
            set_default_quad_tolerance(c_power.tol);
            return cmd_power(c_power, power_alt, power_m, power_alpha, power_sweep, out);
        }
        if (test->parsed()) {
            set_default_quad_tolerance(c_test.tol);
            return cmd_test(c_test, test_alt, test_input, test_alpha, test_mode_text, test_reps,
                            out);
        }
        if (sample->parsed()) {
            set_default_quad_tolerance(c_sample.tol);
            return cmd_sample(c_sample, sample_alt, sample_m, out);
        }
        if (reconstruct->parsed()) {
            set_default_quad_tolerance(c_rec.tol);
            return cmd_reconstruct(c_rec, rec_input, rec_points, out);
        }
        err << error_json(2, "no subcommand").dump() << '\n';
        return 2;
    } catch (const io_error& e) {
        err << error_json(4, e.what()).dump() << '\n';
        return 4;
    } catch (const numeric_error& e) {
        err << error_json(3, e.what()).dump() << '\n';
        return 3;
    } catch (const std::invalid_argument& e) {
        err << error_json(2, e.what()).dump() << '\n';
        return 2;
    } catch (const std::domain_error& e) {
        err << error_json(2, e.what()).dump() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << error_json(3, e.what()).dump() << '\n';
        return 3;
    }
}

}  // namespace pdqlab::cli
