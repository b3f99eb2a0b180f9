#include "plfilter/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "json.hpp"
#include "plfilter/errors.hpp"
#include "plfilter/expression.hpp"

namespace plf {

using nlohmann::json;

namespace {

json parse_json(const std::string& text, const char* what) {
    json doc = json::parse(text, nullptr, false);
    if (doc.is_discarded()) throw input_error(std::string(what) + ": not well-formed JSON");
    return doc;
}

double require_number(const json& doc, const std::string& field) {
    if (!doc.contains(field)) throw input_error("missing required field `" + field + "`");
    if (!doc[field].is_number()) throw input_error("field `" + field + "` must be a number");
    return doc[field].get<double>();
}

Vec number_array(const json& node, const std::string& field) {
    if (!node.is_array()) throw input_error("field `" + field + "` must be an array of numbers");
    Vec out;
    out.reserve(node.size());
    for (const auto& v : node) {
        if (v.is_null()) {
            out.push_back(std::numeric_limits<double>::quiet_NaN());
        } else if (v.is_number()) {
            out.push_back(v.get<double>());
        } else {
            throw input_error("field `" + field + "` must contain numbers");
        }
    }
    return out;
}

Objective parse_objective(const json& node, std::size_t dimension) {
    if (!node.is_object()) throw input_error("field `objective` must be an object");
    if (node.contains("linear")) {
        const auto& lin = node["linear"];
        if (!lin.contains("c")) throw input_error("missing required field `objective.linear.c`");
        Vec c = number_array(lin["c"], "objective.linear.c");
        const double d0 = lin.contains("d0") ? lin["d0"].get<double>() : 0.0;
        if (c.size() != dimension)
            throw input_error("field `objective.linear.c` length must equal `dimension`");
        return Objective(LinearObjective(std::move(c), d0));
    }
    if (node.contains("quadratic")) {
        const auto& q = node["quadratic"];
        if (!q.contains("A")) throw input_error("missing required field `objective.quadratic.A`");
        if (!q.contains("b")) throw input_error("missing required field `objective.quadratic.b`");
        if (!q["A"].is_array() || q["A"].size() != dimension)
            throw input_error("field `objective.quadratic.A` must be an n x n array");
        Matrix a(dimension, dimension);
        for (std::size_t i = 0; i < dimension; ++i) {
            Vec row = number_array(q["A"][i], "objective.quadratic.A");
            if (row.size() != dimension)
                throw input_error("field `objective.quadratic.A` must be an n x n array");
            for (std::size_t j = 0; j < dimension; ++j) a(i, j) = row[j];
        }
        Vec b = number_array(q["b"], "objective.quadratic.b");
        if (b.size() != dimension)
            throw input_error("field `objective.quadratic.b` length must equal `dimension`");
        return Objective(QuadraticObjective(std::move(a), std::move(b)));
    }
    if (node.contains("expression")) {
        if (!node["expression"].is_string())
            throw input_error("field `objective.expression` must be a string");
        BlackBoxObjective bb;
        bb.label = node["expression"].get<std::string>();
        bb.dim = dimension;
        bb.evaluator = compile_expression(bb.label, dimension);
        return Objective(std::move(bb));
    }
    throw input_error("field `objective` must contain `linear`, `quadratic`, or `expression`");
}

} // namespace

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

ProblemSpec parse_problem_text(const std::string& text) {
    const json doc = parse_json(text, "problem file");
    if (!doc.is_object()) throw input_error("problem file: top level must be an object");

    ProblemSpec p;
    const double dim = require_number(doc, "dimension");
    if (dim < 1.0 || dim != std::floor(dim))
        throw input_error("field `dimension` must be a positive integer");
    p.dimension = std::size_t(dim);

    if (!doc.contains("kind")) throw input_error("missing required field `kind`");
    const std::string kind = doc["kind"].get<std::string>();
    if (kind == "linear") p.kind = ProblemKind::linear;
    else if (kind == "quadratic") p.kind = ProblemKind::quadratic;
    else if (kind == "blackbox") p.kind = ProblemKind::blackbox;
    else if (kind == "discrete") p.kind = ProblemKind::discrete;
    else throw input_error("field `kind` must be linear, quadratic, blackbox, or discrete");

    if (!doc.contains("objective")) throw input_error("missing required field `objective`");
    if (doc["objective"].is_array()) {
        for (const auto& node : doc["objective"]) p.objectives.push_back(parse_objective(node, p.dimension));
        if (p.objectives.empty()) throw input_error("field `objective` must not be an empty array");
    } else {
        p.objectives.push_back(parse_objective(doc["objective"], p.dimension));
    }

    if (doc.contains("constraints")) {
        if (!doc["constraints"].is_array()) throw input_error("field `constraints` must be an array");
        for (const auto& node : doc["constraints"]) {
            if (!node.contains("h")) throw input_error("missing required field `constraints[].h`");
            if (!node.contains("d")) throw input_error("missing required field `constraints[].d`");
            HalfSpace hs;
            hs.h = number_array(node["h"], "constraints[].h");
            hs.d = node["d"].get<double>();
            if (hs.h.size() != p.dimension)
                throw input_error("field `constraints[].h` length must equal `dimension`");
            p.constraints.rows.push_back(std::move(hs));
        }
    }

    if (doc.contains("box")) {
        const auto& box = doc["box"];
        if (!box.is_object() || !box.contains("lo") || !box.contains("hi"))
            throw input_error("field `box` must be an object with `lo` and `hi` arrays");
        BoxBounds bb;
        bb.lo = number_array(box["lo"], "box.lo");
        bb.hi = number_array(box["hi"], "box.hi");
        if (bb.lo.size() != p.dimension || bb.hi.size() != p.dimension)
            throw input_error("fields `box.lo`/`box.hi` length must equal `dimension`");
        for (double& v : bb.lo)
            if (std::isnan(v)) v = -std::numeric_limits<double>::infinity();
        for (double& v : bb.hi)
            if (std::isnan(v)) v = std::numeric_limits<double>::infinity();
        p.constraints.box = std::move(bb);
    }

    if (doc.contains("discrete_points")) {
        if (!doc["discrete_points"].is_array())
            throw input_error("field `discrete_points` must be an array of points");
        for (const auto& node : doc["discrete_points"]) {
            Vec pt = number_array(node, "discrete_points[]");
            if (pt.size() != p.dimension)
                throw input_error("field `discrete_points[]` length must equal `dimension`");
            p.discrete_points.push_back(std::move(pt));
        }
    }

    if (doc.contains("pressure")) p.pressure = number_array(doc["pressure"], "pressure");

    p.validate();
    return p;
}

ProblemSpec parse_problem_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open problem file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_problem_text(buf.str());
}

std::string mode_sum_to_json(const ModeSum& ms) {
    json doc;
    doc["modes"] = json::array();
    for (const auto& m : ms.modes) {
        json node;
        node["gamma"] = m.gamma;
        node["coeffs"] = m.coeffs;
        doc["modes"].push_back(std::move(node));
    }
    return doc.dump(2);
}

ModeSum mode_sum_from_json_text(const std::string& text) {
    const json doc = parse_json(text, "mode sum");
    if (!doc.contains("modes") || !doc["modes"].is_array())
        throw input_error("mode sum: missing `modes` array");
    ModeSum ms;
    for (const auto& node : doc["modes"]) {
        Mode m;
        m.gamma = require_number(node, "gamma");
        if (!node.contains("coeffs")) throw input_error("mode sum: missing `coeffs`");
        m.coeffs = number_array(node["coeffs"], "coeffs");
        ms.modes.push_back(std::move(m));
    }
    if (ms.modes.empty()) throw input_error("mode sum: empty `modes` array");
    return ms;
}

std::string slice_volume_to_json(const SliceVolumeFunction& sv) {
    json doc;
    doc["breakpoints"] = sv.breakpoints;
    doc["pieces"] = sv.pieces;
    if (sv.merged_breakpoints) doc["merged_breakpoints"] = true;
    return doc.dump(2);
}

VolumeModel volume_model_from_json_text(const std::string& text) {
    const json doc = parse_json(text, "volume model");
    if (!doc.contains("kind")) throw input_error("missing required field `kind`");
    const std::string kind = doc["kind"].get<std::string>();
    if (kind == "power_law") {
        return PowerLawModel{require_number(doc, "gamma"), require_number(doc, "n_ip"),
                             require_number(doc, "nu"), require_number(doc, "o_min")};
    }
    if (kind == "expansion") {
        return ExpansionModel{require_number(doc, "gamma"),  require_number(doc, "n_ip"),
                              require_number(doc, "nu"),     require_number(doc, "o_min"),
                              require_number(doc, "t_star"), require_number(doc, "delta_n")};
    }
    if (kind == "two_minima") {
        return TwoMinimaModel{require_number(doc, "gamma_g"), require_number(doc, "gamma_l"),
                              require_number(doc, "n_g"),     require_number(doc, "n_l"),
                              require_number(doc, "nu"),      require_number(doc, "o_g"),
                              require_number(doc, "o_l")};
    }
    if (kind == "piecewise") {
        return PiecewiseModel{require_number(doc, "gamma_lo"), require_number(doc, "gamma_hi"),
                              require_number(doc, "n_lo"),     require_number(doc, "n_hi"),
                              require_number(doc, "nu_lo"),    require_number(doc, "nu_hi"),
                              require_number(doc, "o_min"),    require_number(doc, "o_star")};
    }
    throw input_error("field `kind` must be power_law, expansion, two_minima, or piecewise");
}

VolumeModel volume_model_from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open volume model file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return volume_model_from_json_text(buf.str());
}

void write_sweep_csv(std::ostream& os, const SweepData& sweep) {
    os << "beta,T,mean_O,stderr_O,var_O";
    const std::size_t m = sweep.n_objectives;
    if (m > 1)
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j) os << ",cov_" << i << j;
    os << "\n";
    for (const auto& r : sweep.rows) {
        os << format_number(r.beta) << ',' << format_number(r.temperature) << ','
           << format_number(r.mean_o) << ',' << format_number(r.stderr_o) << ','
           << format_number(r.var_o);
        if (m > 1)
            for (std::size_t i = 0; i < m; ++i)
                for (std::size_t j = 0; j < m; ++j) os << ',' << format_number(r.covariance(i, j));
        os << "\n";
    }
}

SweepData read_sweep_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open sweep file: " + path);
    std::string header;
    if (!std::getline(in, header)) throw input_error("sweep file: empty");

    std::vector<std::string> names;
    {
        std::stringstream hs(header);
        std::string cell;
        while (std::getline(hs, cell, ',')) names.push_back(cell);
    }
    auto column = [&](const std::string& name) -> int {
        for (std::size_t i = 0; i < names.size(); ++i)
            if (names[i] == name) return int(i);
        return -1;
    };
    const int c_beta = column("beta");
    const int c_temp = column("T");
    const int c_mean = column("mean_O");
    const int c_err = column("stderr_O");
    const int c_var = column("var_O");
    if (c_mean < 0 || (c_beta < 0 && c_temp < 0))
        throw input_error("sweep file: need `mean_O` and one of `beta`/`T` columns");

    SweepData sweep;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<double> cells;
        std::stringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(std::strtod(cell.c_str(), nullptr));
        SweepRow row;
        if (c_beta >= 0 && std::size_t(c_beta) < cells.size()) row.beta = cells[std::size_t(c_beta)];
        if (c_temp >= 0 && std::size_t(c_temp) < cells.size()) row.temperature = cells[std::size_t(c_temp)];
        if (row.beta > 0.0 && row.temperature == 0.0) row.temperature = 1.0 / row.beta;
        if (row.temperature > 0.0 && row.beta == 0.0) row.beta = 1.0 / row.temperature;
        if (std::size_t(c_mean) < cells.size()) row.mean_o = cells[std::size_t(c_mean)];
        if (c_err >= 0 && std::size_t(c_err) < cells.size()) row.stderr_o = cells[std::size_t(c_err)];
        if (c_var >= 0 && std::size_t(c_var) < cells.size()) row.var_o = cells[std::size_t(c_var)];
        sweep.rows.push_back(std::move(row));
    }
    if (sweep.rows.empty()) throw input_error("sweep file: no data rows");
    return sweep;
}

void write_landau_csv(std::ostream& os, const LandauProfile& prof) {
    os << "bin_lo,bin_hi,count,betaF\n";
    for (std::size_t k = 0; k + 1 < prof.edges.size(); ++k) {
        os << format_number(prof.edges[k]) << ',' << format_number(prof.edges[k + 1]) << ','
           << prof.counts[k] << ',';
        if (std::isfinite(prof.beta_f[k])) os << format_number(prof.beta_f[k]);
        else os << "inf";
        os << "\n";
    }
}

} // namespace plf
