#ifndef PLFILTER_SAMPLER_HPP
#define PLFILTER_SAMPLER_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "plfilter/model.hpp"
#include "plfilter/transform.hpp"

namespace plf {

struct ChainConfig {
    long n_steps = 60000;  // per chain (and per schedule entry in sweeps)
    long burn_in = 10000;
    double proposal_scale = 0.5;
    double target_acceptance = 0.3;
    std::uint64_t seed = 12345;
    int n_chains = 2;
    std::optional<Vec> start; // feasible start point; searched for if absent

    void validate() const;
};

/// Retained post-burn-in samples, all chains concatenated in chain order.
struct SampleBatch {
    std::vector<Vec> points;
    std::vector<Vec> objective_values; // one entry per objective per sample
    double acceptance_rate = 0.0;
    Vec beta; // per-objective filter strength

    std::size_t size() const { return points.size(); }
    std::size_t n_objectives() const { return beta.size(); }
};

struct SweepRow {
    double beta = 0.0;
    double temperature = 0.0;
    double mean_o = 0.0;
    double stderr_o = 0.0;
    double var_o = 0.0;
    double stderr_var = 0.0;
    Vec component_means; // M > 1 only
    Matrix covariance;   // M > 1 only
};

struct SweepData {
    std::vector<SweepRow> rows;
    Vec best_point;     // lowest overall objective seen anywhere in the sweep
    double best_value = 0.0;
    std::size_t n_objectives = 1;
};

/// Binned Landau free energy over a design characteristic.
struct LandauProfile {
    Vec edges;                       // bins + 1 ascending
    std::vector<std::size_t> counts; // per bin
    Vec beta_f;                      // min-normalized; +inf marks empty bins
    bool degenerate = false;         // all samples landed in one bin
};

/// Metropolis chain targeting exp(-sum_i beta_i O_i(x)) * G(x). Proposals
/// are isotropic Gaussian steps (uniform re-draws for discrete problems);
/// the step scale adapts toward target_acceptance during burn-in only.
SampleBatch metropolis_chain(const ProblemSpec& p, const Vec& beta, const ChainConfig& cfg);
SampleBatch metropolis_chain(const ProblemSpec& p, double beta, const ChainConfig& cfg);

MomentReport estimate_moments(const SampleBatch& b);

/// Annealing sweep over an ascending beta schedule; chains warm-start from
/// the previous entry's end state. Per entry, each chain spends cfg.n_steps
/// steps of which the first cfg.burn_in are discarded (and re-adapted).
SweepData beta_sweep(const ProblemSpec& p, const Vec& schedule, const ChainConfig& cfg);

LandauProfile landau_histogram(const SampleBatch& b, const std::function<double(const Vec&)>& characteristic,
                               int bins);

/// Direct evaluation of Z: midpoint-rule quadrature over a bounding box for
/// continuous problems with n <= 3 (resolution points per axis), exact
/// enumeration for discrete ones. Linear problems are reported in the
/// objective-aligned frame convention (the plain box integral times |c|),
/// matching the closed-form mode sums.
double brute_force_Z(const ProblemSpec& p, double beta, long resolution);

/// Contribution of an objective band [o_lo, o_lo + delta_o] of mean
/// transverse volume omega_bar: the exact integral, equal to
/// delta_o * omega_bar * e^{-beta O*} for an O* inside the band.
double band_contribution(double o_lo, double delta_o, double omega_bar, double beta);

/// Relative filtered weight of two equal-volume regions, e^{(o2 - o1)/T}.
double mode_ratio(double o1, double o2, double temperature);

} // namespace plf

#endif // PLFILTER_SAMPLER_HPP
