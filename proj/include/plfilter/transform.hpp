#ifndef PLFILTER_TRANSFORM_HPP
#define PLFILTER_TRANSFORM_HPP

#include <variant>
#include <vector>

#include "plfilter/model.hpp"
#include "plfilter/polytope.hpp"

namespace plf {

/// One decay mode: contributes e^{-beta*gamma} * sum_k coeffs[k] * beta^{-k}.
/// coeffs[0] is the beta-independent weight (used by discrete mode sums;
/// zero for LP modes).
struct Mode {
    double gamma = 0.0;
    Vec coeffs;
};

/// Closed-form Z(beta) as a sum of exponentially decaying modes, one per
/// breakpoint of the transverse volume function.
struct ModeSum {
    std::vector<Mode> modes;

    double eval(double beta) const;
    double log_eval(double beta) const;
    void validate() const;
};

ModeSum lp_partition_function(const SliceVolumeFunction& sv);

/// Exact mode sum for an explicit finite solution set: one unit-weight mode
/// per distinct objective value.
ModeSum discrete_partition_function(const std::vector<Vec>& points, const Objective& obj);

double eval_Z(const ModeSum& ms, double beta);
double log_Z(const ModeSum& ms, double beta);

/// <O> = -d ln Z / d beta, from closed-form mode derivatives.
double mean_objective(const ModeSum& ms, double beta);
/// Var(O) = d^2 ln Z / d beta^2, from closed-form mode derivatives.
double variance(const ModeSum& ms, double beta);

/// Closed-form Gaussian transform of a positive definite quadratic program.
struct QpTransform {
    double log_z = 0.0;
    double o_min = 0.0;
    double mean = 0.0;
    double var = 0.0;
};

QpTransform qp_partition_function(const QuadraticObjective& q, double beta);

/// Transverse volume of the quadratic program at objective level o;
/// zero for o <= the minimum.
double qp_slice_volume(const QuadraticObjective& q, double o);

// ---- analytic volume models ----

/// Omega(O) = gamma * (O - o_min)^{n_ip/nu - 1}
struct PowerLawModel {
    double gamma, n_ip, nu, o_min;
};

/// Power law with a sub-leading correction switching on at scale t_star:
/// Omega = gamma * (O-o_min)^{n_ip/nu-1} * (1 + ((O-o_min)/t_star)^{delta_n})
struct ExpansionModel {
    double gamma, n_ip, nu, o_min, t_star, delta_n;
};

/// Two power-law minima, global (g) and local (l), o_g < o_l.
struct TwoMinimaModel {
    double gamma_g, gamma_l, n_g, n_l, nu, o_g, o_l;
};

/// Power law up to o_star, then a plateau plus a second power law.
struct PiecewiseModel {
    double gamma_lo, gamma_hi, n_lo, n_hi, nu_lo, nu_hi, o_min, o_star;
};

using VolumeModel = std::variant<PowerLawModel, ExpansionModel, TwoMinimaModel, PiecewiseModel>;

struct VolumeModelEval {
    double z = 0.0;
    double log_z = 0.0;
    double mean = 0.0;
};

VolumeModelEval volume_model_Z(const VolumeModel& vm, double beta);

/// Shift all mode locations: Z gains a factor e^{-beta*dO}, <O> shifts by dO.
ModeSum apply_shift(const ModeSum& ms, double delta_o);

/// Objective rescaling: the result evaluates to (1/alpha) * Z(beta/alpha)
/// of the original (gamma -> gamma/alpha, order-k coefficient scaled by
/// alpha^{k-1}).
ModeSum apply_rescale(const ModeSum& ms, double alpha);

/// Moments of the filtered space at one beta.
struct MomentReport {
    double beta = 0.0;
    double temperature = 0.0;
    double mean_o = 0.0;
    double std_o = 0.0;
    double var_o = 0.0;
    double stderr_mean = 0.0; // batch-means error (sampled reports only)
    double stderr_var = 0.0;
    Vec component_means;      // per objective, M > 1
    Matrix covariance;        // M x M, M > 1
    std::size_t sample_count = 0;
};

} // namespace plf

#endif // PLFILTER_TRANSFORM_HPP
