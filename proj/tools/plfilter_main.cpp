// plfilter: Pareto-Laplace transforms of optimization problems.
//
// Subcommands: transform, sample, landau, analyze, modes, geodesic, oracle.
// Exit codes: 0 success, 1 usage, 2 bad input, 3 infeasible, 4 unbounded,
// 5 degenerate region, 6 sampler start failure, 7 insufficient data,
// 8 unsupported dimension, 9 numerical failure.

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "plfilter/analysis.hpp"
#include "plfilter/errors.hpp"
#include "plfilter/expression.hpp"
#include "plfilter/geometry.hpp"
#include "plfilter/io.hpp"
#include "plfilter/model.hpp"
#include "plfilter/polytope.hpp"
#include "plfilter/sampler.hpp"
#include "plfilter/transform.hpp"

namespace {

using nlohmann::json;
using plf::Vec;

Vec default_beta_grid() {
    Vec grid(40);
    for (std::size_t i = 0; i < grid.size(); ++i)
        grid[i] = std::pow(10.0, -2.0 + 4.0 * double(i) / 39.0);
    return grid;
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw plf::input_error("cannot open output file: " + path);
    return out;
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text << "\n";
        return;
    }
    auto out = open_output(path);
    out << text << "\n";
}

// Generic table sink: CSV by default, a JSON array of row objects on request.
class TableWriter {
public:
    TableWriter(std::vector<std::string> columns, bool as_json)
        : columns_(std::move(columns)), as_json_(as_json) {}

    void add_row(const Vec& values) { rows_.push_back(values); }

    std::string str() const {
        std::ostringstream os;
        if (as_json_) {
            json arr = json::array();
            for (const auto& row : rows_) {
                json obj;
                for (std::size_t i = 0; i < columns_.size(); ++i) obj[columns_[i]] = row[i];
                arr.push_back(std::move(obj));
            }
            os << arr.dump(2);
            return os.str();
        }
        for (std::size_t i = 0; i < columns_.size(); ++i)
            os << (i ? "," : "") << columns_[i];
        os << "\n";
        for (const auto& row : rows_) {
            for (std::size_t i = 0; i < row.size(); ++i)
                os << (i ? "," : "") << plf::format_number(row[i]);
            os << "\n";
        }
        return os.str();
    }

private:
    std::vector<std::string> columns_;
    bool as_json_;
    std::vector<Vec> rows_;
};

struct CommonOpts {
    std::string input;
    std::string output = "-";
    Vec betas;
    Vec schedule;
    std::uint64_t seed = 12345;
    int chains = 2;
    long steps = 60000;
    long burn_in = 10000;
    int bins = 30;
    long resolution = 500;
    std::string format = "csv";
    std::string window;
    std::string c_expr;
    bool anneal = false;
};

plf::ChainConfig chain_config(const CommonOpts& opt) {
    plf::ChainConfig cfg;
    cfg.n_steps = opt.steps;
    cfg.burn_in = opt.burn_in;
    cfg.seed = opt.seed;
    cfg.n_chains = opt.chains;
    return cfg;
}

// Pressure-weighted sums of linear (or quadratic) objectives stay linear
// (quadratic), so multi-objective closed forms reduce to the single case.
plf::LinearObjective combined_linear(const plf::ProblemSpec& p, const Vec& w) {
    Vec c(p.dimension, 0.0);
    double d0 = 0.0;
    for (std::size_t i = 0; i < p.n_objectives(); ++i) {
        const auto& lin = p.objectives[i].linear();
        for (std::size_t j = 0; j < p.dimension; ++j) c[j] += w[i] * lin.c[j];
        d0 += w[i] * lin.d0;
    }
    return plf::LinearObjective(std::move(c), d0);
}

plf::QuadraticObjective combined_quadratic(const plf::ProblemSpec& p, const Vec& w) {
    plf::Matrix a(p.dimension, p.dimension);
    Vec b(p.dimension, 0.0);
    for (std::size_t i = 0; i < p.n_objectives(); ++i) {
        const auto& q = p.objectives[i].quadratic();
        for (std::size_t r = 0; r < p.dimension; ++r)
            for (std::size_t c = 0; c < p.dimension; ++c) a(r, c) += w[i] * q.a(r, c);
        for (std::size_t r = 0; r < p.dimension; ++r) b[r] += w[i] * q.b[r];
    }
    return plf::QuadraticObjective(std::move(a), std::move(b));
}

int cmd_transform(const CommonOpts& opt) {
    const plf::ProblemSpec p = plf::parse_problem_file(opt.input);
    const Vec grid = opt.betas.empty() ? default_beta_grid() : opt.betas;
    const std::string prefix = opt.output == "-" ? "plfilter_out" : opt.output;
    const Vec weights = p.pressure ? *p.pressure : Vec(p.n_objectives(), 1.0);

    TableWriter sweep({"beta", "T", "logZ", "mean_O", "var_O"}, opt.format == "json");

    if (p.kind == plf::ProblemKind::linear) {
        const plf::LinearObjective obj = combined_linear(p, weights);
        const auto sv = plf::slice_volume(p.constraints, obj);
        const auto ms = plf::lp_partition_function(sv);
        write_text(prefix + ".modes.json", plf::mode_sum_to_json(ms));
        write_text(prefix + ".slice.json", plf::slice_volume_to_json(sv));
        for (double b : grid)
            sweep.add_row({b, 1.0 / b, plf::log_Z(ms, b), plf::mean_objective(ms, b), plf::variance(ms, b)});
    } else if (p.kind == plf::ProblemKind::quadratic) {
        if (!p.constraints.empty())
            throw plf::input_error(
                "transform: the quadratic closed form is unconstrained; use sample or oracle for "
                "constrained quadratics");
        const plf::QuadraticObjective q = combined_quadratic(p, weights);
        json info;
        info["o_min"] = q.o_min;
        info["log_det_A"] = q.log_det_a;
        info["dimension"] = p.dimension;
        write_text(prefix + ".qp.json", info.dump(2));
        for (double b : grid) {
            const auto t = plf::qp_partition_function(q, b);
            sweep.add_row({b, 1.0 / b, t.log_z, t.mean, t.var});
        }
    } else if (p.kind == plf::ProblemKind::discrete) {
        const plf::PressureVector pv(p.pressure ? *p.pressure : Vec(p.n_objectives(), 1.0));
        const plf::Objective total = p.n_objectives() == 1 ? p.objectives.front()
                                                           : plf::combine_objectives(p.objectives, pv);
        const auto ms = plf::discrete_partition_function(p.discrete_points, total);
        write_text(prefix + ".modes.json", plf::mode_sum_to_json(ms));
        for (double b : grid)
            sweep.add_row({b, 1.0 / b, plf::log_Z(ms, b), plf::mean_objective(ms, b), plf::variance(ms, b)});
    } else {
        throw plf::input_error("transform: closed forms exist for linear, quadratic, or discrete problems");
    }

    write_text(prefix + ".sweep." + (opt.format == "json" ? "json" : "csv"), sweep.str());
    return 0;
}

int cmd_sample(const CommonOpts& opt) {
    const plf::ProblemSpec p = plf::parse_problem_file(opt.input);
    Vec schedule = !opt.schedule.empty() ? opt.schedule : opt.betas;
    if (schedule.empty()) schedule = {1.0};
    const plf::SweepData sweep = plf::beta_sweep(p, schedule, chain_config(opt));

    if (opt.anneal) {
        json doc;
        doc["best_value"] = sweep.best_value;
        doc["best_point"] = sweep.best_point;
        write_text(opt.output, doc.dump(2));
        return 0;
    }
    if (opt.format == "json") {
        json arr = json::array();
        for (const auto& r : sweep.rows) {
            json row;
            row["beta"] = r.beta;
            row["T"] = r.temperature;
            row["mean_O"] = r.mean_o;
            row["stderr_O"] = r.stderr_o;
            row["var_O"] = r.var_o;
            if (!r.component_means.empty()) row["component_means"] = r.component_means;
            arr.push_back(std::move(row));
        }
        write_text(opt.output, arr.dump(2));
        return 0;
    }
    std::ostringstream os;
    plf::write_sweep_csv(os, sweep);
    std::string text = os.str();
    if (!text.empty() && text.back() == '\n') text.pop_back();
    write_text(opt.output, text);
    return 0;
}

int cmd_landau(const CommonOpts& opt) {
    const plf::ProblemSpec p = plf::parse_problem_file(opt.input);
    const double beta = opt.betas.empty() ? 1.0 : opt.betas.front();
    const plf::SampleBatch batch = plf::metropolis_chain(p, beta, chain_config(opt));

    std::function<double(const Vec&)> characteristic;
    if (opt.c_expr.empty() || opt.c_expr == "objective" || opt.c_expr == "O") {
        const plf::PressureVector pv(p.pressure ? *p.pressure : Vec(p.n_objectives(), 1.0));
        const plf::Objective total = p.n_objectives() == 1 ? p.objectives.front()
                                                           : plf::combine_objectives(p.objectives, pv);
        characteristic = [total](const Vec& x) { return total(x); };
    } else {
        characteristic = plf::compile_expression(opt.c_expr, p.dimension);
    }

    const plf::LandauProfile prof = plf::landau_histogram(batch, characteristic, opt.bins);
    if (prof.degenerate)
        std::cerr << "warning: degenerate histogram (all samples in one bin)\n";
    std::ostringstream os;
    plf::write_landau_csv(os, prof);
    std::string text = os.str();
    if (!text.empty() && text.back() == '\n') text.pop_back();
    write_text(opt.output, text);
    return 0;
}

int cmd_analyze(const CommonOpts& opt) {
    const plf::SweepData sweep = plf::read_sweep_csv_file(opt.input);
    json doc;

    plf::DofFit fit;
    if (!opt.window.empty()) {
        const auto colon = opt.window.find(':');
        if (colon == std::string::npos)
            throw plf::input_error("--window must have the form T_LO:T_HI");
        const double lo = std::strtod(opt.window.substr(0, colon).c_str(), nullptr);
        const double hi = std::strtod(opt.window.substr(colon + 1).c_str(), nullptr);
        fit = plf::fit_inplay_dof(sweep, lo, hi);
    } else {
        fit = plf::fit_inplay_dof(sweep);
    }
    doc["dof_fit"] = {{"o_min_estimate", fit.o_min_estimate},
                      {"slope", fit.slope},
                      {"t_lo", fit.t_lo},
                      {"t_hi", fit.t_hi},
                      {"residual_rms", fit.residual_rms},
                      {"n_rows", fit.n_rows}};

    try {
        const plf::CrossoverReport cr = plf::detect_crossover(sweep);
        doc["crossover"] = {{"detected", cr.detected},
                            {"t_star_estimate", cr.t_star_estimate},
                            {"slope_low", cr.slope_low},
                            {"slope_high", cr.slope_high},
                            {"intercept_high", cr.intercept_high},
                            {"p_value", cr.p_value}};
    } catch (const plf::Error& e) {
        doc["crossover"] = {{"skipped", e.what()}};
    }

    write_text(opt.output, doc.dump(2));
    return 0;
}

int cmd_modes(const CommonOpts& opt) {
    const plf::VolumeModel vm = plf::volume_model_from_json_file(opt.input);
    const Vec grid = opt.betas.empty() ? default_beta_grid() : opt.betas;
    const std::string prefix = opt.output == "-" ? "plfilter_modes" : opt.output;

    TableWriter table({"beta", "T", "logZ", "mean_O"}, opt.format == "json");
    for (double b : grid) {
        const auto ev = plf::volume_model_Z(vm, b);
        table.add_row({b, 1.0 / b, ev.log_z, ev.mean});
    }
    write_text(prefix + ".sweep." + (opt.format == "json" ? "json" : "csv"), table.str());

    if (const auto* two = std::get_if<plf::TwoMinimaModel>(&vm)) {
        json doc;
        const auto t_cross = plf::mode_crossover_temperature(*two);
        if (t_cross) doc["t_cross"] = *t_cross;
        else doc["t_cross"] = nullptr;
        write_text(prefix + ".crossing.json", doc.dump(2));
    }
    return 0;
}

int cmd_geodesic(const CommonOpts& opt, std::size_t n, double beta, double o1, double o2,
                 const Vec& alphas) {
    const plf::FilteredSpace fs(n, beta);
    Vec grid = alphas;
    if (grid.empty()) {
        for (int i = 0; i < 19; ++i) grid.push_back(1.57079632679489661923 * 0.05 * double(i));
    }
    TableWriter table({"alpha", "dx_perp"}, opt.format == "json");
    for (double a : grid)
        table.add_row({a, plf::geodesic_displacement(fs, plf::GeodesicSpec(o1, o2, a))});
    write_text(opt.output, table.str());
    return 0;
}

int cmd_oracle(const CommonOpts& opt) {
    const plf::ProblemSpec p = plf::parse_problem_file(opt.input);
    const Vec grid = opt.betas.empty() ? Vec{0.1, 1.0, 10.0} : opt.betas;
    TableWriter table({"beta", "T", "Z", "logZ"}, opt.format == "json");
    for (double b : grid) {
        const double z = plf::brute_force_Z(p, b, opt.resolution);
        table.add_row({b, b > 0.0 ? 1.0 / b : std::numeric_limits<double>::infinity(), z,
                       z > 0.0 ? std::log(z) : -std::numeric_limits<double>::infinity()});
    }
    write_text(opt.output, table.str());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Pareto-Laplace transforms of optimization problems"};
    app.require_subcommand(1);
    app.footer(
        "Exit codes: 0 ok, 1 usage, 2 bad input, 3 infeasible region, 4 unbounded region,\n"
        "5 degenerate region, 6 sampler start failure, 7 insufficient data,\n"
        "8 unsupported dimension, 9 numerical failure.\n"
        "PLFILTER_THREADS caps sampler chain parallelism.");

    CommonOpts opt;
    std::size_t geo_n = 2;
    double geo_beta = 1.0, geo_o1 = 0.0, geo_o2 = 1.0;
    Vec geo_alphas;

    auto add_common = [&](CLI::App* sub, bool needs_input) {
        auto* in = sub->add_option("--input,-i", opt.input, "input file");
        if (needs_input) in->required();
        sub->add_option("--output,-o", opt.output, "output file or prefix (- for stdout)");
        sub->add_option("--beta", opt.betas, "filter strength(s)");
        sub->add_option("--schedule", opt.schedule, "ascending beta schedule");
        sub->add_option("--seed", opt.seed, "master RNG seed");
        sub->add_option("--chains", opt.chains, "number of Metropolis chains");
        sub->add_option("--steps", opt.steps, "steps per chain (per schedule entry)");
        sub->add_option("--burnin", opt.burn_in, "burn-in steps per chain");
        sub->add_option("--bins", opt.bins, "histogram bins");
        sub->add_option("--resolution", opt.resolution, "grid points per axis for oracle quadrature");
        sub->add_option("--format", opt.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--window", opt.window, "T_LO:T_HI fit window for analyze");
    };

    auto* transform = app.add_subcommand("transform", "closed-form mode sum and moment sweep");
    add_common(transform, true);
    auto* sample = app.add_subcommand("sample", "Metropolis moment sweep over a beta schedule");
    add_common(sample, true);
    sample->add_flag("--anneal", opt.anneal, "report only the best-found point and value");
    auto* landau = app.add_subcommand("landau", "Landau free-energy histogram over a characteristic");
    add_common(landau, true);
    landau->add_option("--c-expr", opt.c_expr, "characteristic expression in x1..xn (default: objective)");
    auto* analyze = app.add_subcommand("analyze", "slope/crossover analysis of a sweep CSV");
    add_common(analyze, true);
    auto* modes = app.add_subcommand("modes", "analytic volume-model transforms and crossover");
    add_common(modes, true);
    auto* geodesic = app.add_subcommand("geodesic", "geodesic transverse displacement table");
    add_common(geodesic, false);
    geodesic->add_option("--n", geo_n, "solution space dimension N (>= 2)");
    geodesic->add_option("--geo-beta", geo_beta, "filter strength");
    geodesic->add_option("--o1", geo_o1, "lower objective endpoint");
    geodesic->add_option("--o2", geo_o2, "upper objective endpoint");
    geodesic->add_option("--alpha", geo_alphas, "inclination angle(s) in radians");
    auto* oracle = app.add_subcommand("oracle", "brute-force partition function table");
    add_common(oracle, true);

    CLI11_PARSE(app, argc, argv);

    try {
        if (transform->parsed()) return cmd_transform(opt);
        if (sample->parsed()) return cmd_sample(opt);
        if (landau->parsed()) return cmd_landau(opt);
        if (analyze->parsed()) return cmd_analyze(opt);
        if (modes->parsed()) return cmd_modes(opt);
        if (geodesic->parsed()) return cmd_geodesic(opt, geo_n, geo_beta, geo_o1, geo_o2, geo_alphas);
        if (oracle->parsed()) return cmd_oracle(opt);
    } catch (const plf::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.exit_code();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return static_cast<int>(plf::ErrorCode::numerical);
    }
    return 1;
}
