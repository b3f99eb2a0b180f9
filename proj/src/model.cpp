#include "plfilter/model.hpp"

#include <cmath>
#include <limits>

#include "plfilter/errors.hpp"

namespace plf {

namespace {
constexpr double kSymTol = 1e-12;
}

LinearObjective::LinearObjective(Vec coeffs, double offset) : c(std::move(coeffs)), d0(offset) {
    if (c.empty()) throw input_error("linear objective: empty coefficient vector");
    if (norm(c) <= 0.0) throw input_error("linear objective: |c| must be positive");
}

double LinearObjective::operator()(const Vec& x) const {
    if (x.size() != c.size()) throw input_error("linear objective: dimension mismatch");
    return dot(c, x) + d0;
}

QuadraticObjective::QuadraticObjective(Matrix a_in, Vec b_in) : a(std::move(a_in)), b(std::move(b_in)) {
    const std::size_t n = b.size();
    if (n == 0 || a.rows != n || a.cols != n)
        throw input_error("quadratic objective: A must be n x n matching b");
    double scale = 0.0;
    for (double v : a.data) scale = std::max(scale, std::abs(v));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (std::abs(a(i, j) - a(j, i)) > kSymTol * std::max(1.0, scale))
                throw input_error("quadratic objective: A not symmetric");
    auto l = cholesky(a);
    if (!l) throw input_error("quadratic objective: A not positive definite");
    chol = std::move(*l);
    log_det_a = 0.0;
    for (std::size_t i = 0; i < n; ++i) log_det_a += 2.0 * std::log(chol(i, i));
    minimizer = cholesky_solve(chol, b);
    o_min = -0.5 * dot(b, minimizer);
}

double QuadraticObjective::operator()(const Vec& x) const {
    if (x.size() != b.size()) throw input_error("quadratic objective: dimension mismatch");
    double q = 0.0;
    for (std::size_t i = 0; i < a.rows; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < a.cols; ++j) s += a(i, j) * x[j];
        q += x[i] * s;
    }
    return 0.5 * q - dot(b, x);
}

std::size_t Objective::dimension() const {
    return std::visit([](const auto& o) { return o.dimension(); }, impl_);
}

double Objective::operator()(const Vec& x) const {
    return std::visit([&x](const auto& o) { return o(x); }, impl_);
}

std::vector<HalfSpace> ConstraintSet::all_rows(std::size_t dim) const {
    std::vector<HalfSpace> out = rows;
    if (box) {
        for (std::size_t i = 0; i < dim; ++i) {
            if (i < box->lo.size() && std::isfinite(box->lo[i])) {
                HalfSpace hs;
                hs.h.assign(dim, 0.0);
                hs.h[i] = -1.0;
                hs.d = box->lo[i];
                out.push_back(std::move(hs));
            }
            if (i < box->hi.size() && std::isfinite(box->hi[i])) {
                HalfSpace hs;
                hs.h.assign(dim, 0.0);
                hs.h[i] = 1.0;
                hs.d = -box->hi[i];
                out.push_back(std::move(hs));
            }
        }
    }
    return out;
}

void ProblemSpec::validate() const {
    if (dimension == 0) throw input_error("problem: dimension must be >= 1");
    if (objectives.empty()) throw input_error("problem: at least one objective required");
    for (const auto& o : objectives)
        if (o.dimension() != dimension)
            throw input_error("problem: objective dimension inconsistent with problem dimension");
    for (const auto& r : constraints.rows) {
        if (r.h.size() != dimension)
            throw input_error("problem: constraint row dimension inconsistent");
        if (norm(r.h) <= 0.0) throw input_error("problem: constraint normal must be nonzero");
    }
    if (constraints.box) {
        if (constraints.box->lo.size() != dimension || constraints.box->hi.size() != dimension)
            throw input_error("problem: box bounds dimension inconsistent");
        for (std::size_t i = 0; i < dimension; ++i)
            if (constraints.box->lo[i] > constraints.box->hi[i])
                throw input_error("problem: box lower bound exceeds upper bound");
    }
    if (kind == ProblemKind::discrete) {
        if (discrete_points.empty())
            throw input_error("problem: kind=discrete requires nonempty discrete_points");
        for (const auto& p : discrete_points)
            if (p.size() != dimension) throw input_error("problem: discrete point dimension inconsistent");
    }
    if (kind == ProblemKind::linear)
        for (const auto& o : objectives)
            if (!o.is_linear()) throw input_error("problem: kind=linear requires linear objectives");
    if (kind == ProblemKind::quadratic)
        for (const auto& o : objectives)
            if (!o.is_quadratic()) throw input_error("problem: kind=quadratic requires quadratic objectives");
    if (pressure && pressure->size() != objectives.size())
        throw input_error("problem: pressure length must match number of objectives");
}

PressureVector::PressureVector(Vec w) : weights(std::move(w)) {
    if (weights.empty()) throw input_error("pressure vector: empty");
    bool any = false;
    for (double v : weights) {
        if (v < 0.0) throw input_error("pressure vector: weights must be nonnegative");
        if (v > 0.0) any = true;
    }
    if (!any) throw input_error("pressure vector: at least one weight must be positive");
}

double evaluate_objective(const Objective& obj, const Vec& x) {
    if (x.size() != obj.dimension()) throw input_error("evaluate_objective: dimension mismatch");
    return obj(x);
}

Objective combine_objectives(const std::vector<Objective>& objs, const PressureVector& p) {
    if (objs.size() != p.weights.size())
        throw input_error("combine_objectives: objective/pressure length mismatch");
    if (objs.empty()) throw input_error("combine_objectives: empty objective list");
    BlackBoxObjective out;
    out.dim = objs.front().dimension();
    for (const auto& o : objs)
        if (o.dimension() != out.dim) throw input_error("combine_objectives: dimension mismatch");
    out.label = "weighted sum";
    out.evaluator = [objs, w = p.weights](const Vec& x) {
        double s = 0.0;
        for (std::size_t i = 0; i < objs.size(); ++i)
            if (w[i] != 0.0) s += w[i] * objs[i](x);
        return s;
    };
    return Objective(std::move(out));
}

int indicator(const ConstraintSet& cs, const Vec& x) {
    for (const auto& r : cs.rows) {
        if (r.h.size() != x.size()) throw input_error("indicator: dimension mismatch");
        if (dot(r.h, x) + r.d > kFeasTol) return 0;
    }
    if (cs.box) {
        for (std::size_t i = 0; i < x.size() && i < cs.box->lo.size(); ++i)
            if (x[i] < cs.box->lo[i] - kFeasTol) return 0;
        for (std::size_t i = 0; i < x.size() && i < cs.box->hi.size(); ++i)
            if (x[i] > cs.box->hi[i] + kFeasTol) return 0;
    }
    return 1;
}

} // namespace plf
