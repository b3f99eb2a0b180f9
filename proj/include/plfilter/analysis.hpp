#ifndef PLFILTER_ANALYSIS_HPP
#define PLFILTER_ANALYSIS_HPP

#include <optional>

#include "plfilter/sampler.hpp"
#include "plfilter/transform.hpp"

namespace plf {

/// Weighted linear fit of <O> against T: intercept estimates the minimum
/// objective, slope estimates N_IP / nu.
struct DofFit {
    double o_min_estimate = 0.0;
    double slope = 0.0;
    double t_lo = 0.0;
    double t_hi = 0.0;
    double residual_rms = 0.0;
    std::size_t n_rows = 0;
};

struct CrossoverReport {
    bool detected = false; // false = NoCrossover (single slope fits)
    double t_star_estimate = 0.0;
    double slope_low = 0.0;
    double slope_high = 0.0;
    double intercept_high = 0.0; // high-T asymptote intercept
    double p_value = 1.0;        // F-test against the single-line fit
};

/// Fit rows with temperature inside [t_lo, t_hi]; at least 4 required.
/// Weights are inverse squared standard errors when present, else uniform.
DofFit fit_inplay_dof(const SweepData& sweep, double t_lo, double t_hi);
DofFit fit_inplay_dof(const SweepData& sweep);

/// Continuous two-segment linear fit of <O> vs T with a breakpoint grid
/// search (50 log-spaced candidates). Requires a factor-10 span in T.
CrossoverReport detect_crossover(const SweepData& sweep);

/// Temperature at which the local minimum's mode catches up with the global
/// one. Exactly o_l - o_g for symmetric parameters; otherwise the bracketed
/// root of the mode-balance equation. Empty when no root exists below
/// 1e3 * (o_l - o_g) (NoCrossing).
std::optional<double> mode_crossover_temperature(const TwoMinimaModel& vm);

/// Transverse volume growth rate near a minimum of scaling index nu:
/// 2 pi^{N/2} / (nu Gamma(N/2)) * O^{N/nu - 1}.
double near_optimal_scaling(double n_ip, double nu, double o);

} // namespace plf

#endif // PLFILTER_ANALYSIS_HPP
