#ifndef PLFILTER_MODEL_HPP
#define PLFILTER_MODEL_HPP

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "plfilter/linalg.hpp"

namespace plf {

/// Feasibility tolerance in constraint units.
constexpr double kFeasTol = 1e-9;

/// O(x) = c.x + d0. Minimized by convention; negate for maximization.
struct LinearObjective {
    Vec c;
    double d0 = 0.0;

    LinearObjective() = default;
    LinearObjective(Vec coeffs, double offset);

    std::size_t dimension() const { return c.size(); }
    double operator()(const Vec& x) const;
};

/// O(x) = 1/2 x.A x - b.x with A symmetric positive definite.
/// The Cholesky factor, log det A, and the minimizer are cached at
/// construction; construction throws if A is asymmetric or not PD.
struct QuadraticObjective {
    Matrix a;
    Vec b;
    Matrix chol;       // lower factor of A
    double log_det_a = 0.0;
    Vec minimizer;     // A^{-1} b
    double o_min = 0.0; // -1/2 b.A^{-1}b

    QuadraticObjective() = default;
    QuadraticObjective(Matrix a_in, Vec b_in);

    std::size_t dimension() const { return b.size(); }
    double operator()(const Vec& x) const;
};

/// Arbitrary deterministic evaluator; dimension must be declared since it
/// cannot be inferred from the callable.
struct BlackBoxObjective {
    std::function<double(const Vec&)> evaluator;
    std::string label;
    std::size_t dim = 0;

    std::size_t dimension() const { return dim; }
    double operator()(const Vec& x) const { return evaluator(x); }
};

class Objective {
public:
    Objective() = default;
    Objective(LinearObjective o) : impl_(std::move(o)) {}
    Objective(QuadraticObjective o) : impl_(std::move(o)) {}
    Objective(BlackBoxObjective o) : impl_(std::move(o)) {}

    std::size_t dimension() const;
    bool is_linear() const { return std::holds_alternative<LinearObjective>(impl_); }
    bool is_quadratic() const { return std::holds_alternative<QuadraticObjective>(impl_); }

    const LinearObjective& linear() const { return std::get<LinearObjective>(impl_); }
    const QuadraticObjective& quadratic() const { return std::get<QuadraticObjective>(impl_); }

    double operator()(const Vec& x) const;

private:
    std::variant<LinearObjective, QuadraticObjective, BlackBoxObjective> impl_;
};

/// One half-space h.x + d <= 0.
struct HalfSpace {
    Vec h;
    double d = 0.0;
};

struct BoxBounds {
    Vec lo; // entries may be -inf
    Vec hi; // entries may be +inf
};

struct ConstraintSet {
    std::vector<HalfSpace> rows;
    std::optional<BoxBounds> box;

    /// All constraints as half-space rows, box bounds included (finite
    /// bounds only). `dim` is needed when rows alone do not fix it.
    std::vector<HalfSpace> all_rows(std::size_t dim) const;

    bool empty() const { return rows.empty() && !box; }
};

enum class ProblemKind { linear, quadratic, blackbox, discrete };

struct ProblemSpec {
    std::size_t dimension = 0;
    ProblemKind kind = ProblemKind::blackbox;
    std::vector<Objective> objectives; // M >= 1
    ConstraintSet constraints;
    std::vector<Vec> discrete_points;  // kind == discrete only
    std::optional<Vec> pressure;       // optional per-objective weights

    void validate() const;
    std::size_t n_objectives() const { return objectives.size(); }
};

/// Nonnegative weights turning M component objectives into one overall
/// objective O = sum_i P_i O_i.
struct PressureVector {
    Vec weights;

    PressureVector() = default;
    explicit PressureVector(Vec w);
};

double evaluate_objective(const Objective& obj, const Vec& x);

Objective combine_objectives(const std::vector<Objective>& objs, const PressureVector& p);

/// 1 iff every constraint holds within kFeasTol; vacuously 1 when empty.
int indicator(const ConstraintSet& cs, const Vec& x);

} // namespace plf

#endif // PLFILTER_MODEL_HPP
