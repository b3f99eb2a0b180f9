#include "plfilter/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <thread>

#include "plfilter/errors.hpp"
#include "plfilter/polytope.hpp"

namespace plf {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Deterministic per-chain random stream (splitmix64 core, Box-Muller normals).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    double uniform() { return double(next_u64() >> 11) * 0x1.0p-53; }

    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.28318530717958647692 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    std::size_t index(std::size_t n) { return std::size_t(next_u64() % n); }

private:
    std::uint64_t state_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

Vec resolve_beta_vector(const ProblemSpec& p, double beta) {
    Vec betas(p.n_objectives(), beta);
    if (p.pressure)
        for (std::size_t i = 0; i < betas.size(); ++i) betas[i] *= (*p.pressure)[i];
    return betas;
}

Vec objective_values_at(const ProblemSpec& p, const Vec& x) {
    Vec v(p.n_objectives());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = p.objectives[i](x);
    return v;
}

double energy_of(const Vec& betas, const Vec& values) {
    double e = 0.0;
    for (std::size_t i = 0; i < betas.size(); ++i) e += betas[i] * values[i];
    return e;
}

bool box_is_finite(const ProblemSpec& p) {
    if (!p.constraints.box) return false;
    const auto& b = *p.constraints.box;
    if (b.lo.size() < p.dimension || b.hi.size() < p.dimension) return false;
    for (std::size_t i = 0; i < p.dimension; ++i)
        if (!std::isfinite(b.lo[i]) || !std::isfinite(b.hi[i])) return false;
    return true;
}

Vec find_start(const ProblemSpec& p, Rng& rng) {
    if (p.kind == ProblemKind::discrete) {
        for (const auto& pt : p.discrete_points)
            if (indicator(p.constraints, pt)) return pt;
        throw start_failure_error("metropolis: no feasible discrete point");
    }
    if (box_is_finite(p)) {
        const auto& b = *p.constraints.box;
        for (int attempt = 0; attempt < 200000; ++attempt) {
            Vec x(p.dimension);
            for (std::size_t i = 0; i < p.dimension; ++i)
                x[i] = b.lo[i] + (b.hi[i] - b.lo[i]) * rng.uniform();
            if (indicator(p.constraints, x)) return x;
        }
        throw start_failure_error("metropolis: rejection sampling from box failed");
    }
    if (p.kind == ProblemKind::quadratic) {
        const Vec x = p.objectives.front().quadratic().minimizer;
        if (indicator(p.constraints, x)) return x;
    }
    if (p.constraints.rows.size() >= p.dimension) {
        // Centroid of the feasible polytope's vertices is interior.
        try {
            Vec c(p.dimension, 0.0);
            c[0] = 1.0;
            const auto verts = enumerate_vertices(p.constraints, LinearObjective(c, 0.0));
            Vec mean(p.dimension, 0.0);
            for (const auto& v : verts) mean = add(mean, v.point);
            mean = scaled(mean, 1.0 / double(verts.size()));
            if (indicator(p.constraints, mean)) return mean;
        } catch (const Error&) {
            // fall through to the origin attempt
        }
    }
    Vec origin(p.dimension, 0.0);
    if (indicator(p.constraints, origin)) return origin;
    throw start_failure_error("metropolis: no feasible start point found");
}

struct ChainResult {
    std::vector<Vec> points;
    std::vector<Vec> values;
    double acceptance = 0.0;
    Vec end_state;
    Vec best_point;
    double best_value = std::numeric_limits<double>::infinity();
};

// One Metropolis chain at fixed beta vector. Scale adaptation runs during
// the burn-in steps only, then the scale is frozen.
ChainResult run_chain(const ProblemSpec& p, const Vec& betas, const ChainConfig& cfg, Rng& rng,
                      Vec state, double& scale) {
    ChainResult res;
    const long retained = cfg.n_steps - cfg.burn_in;
    res.points.reserve(retained);
    res.values.reserve(retained);

    Vec values = objective_values_at(p, state);
    double energy = energy_of(betas, values);
    double total_value = 0.0;
    for (double v : values) total_value += v;
    res.best_point = state;
    res.best_value = total_value;

    long accepted_post = 0;
    double log_scale = std::log(scale);

    for (long t = 0; t < cfg.n_steps; ++t) {
        const bool in_burn_in = t < cfg.burn_in;
        bool accepted = false;

        if (p.kind == ProblemKind::discrete) {
            const Vec& cand = p.discrete_points[rng.index(p.discrete_points.size())];
            if (indicator(p.constraints, cand)) {
                const Vec cand_values = objective_values_at(p, cand);
                const double cand_energy = energy_of(betas, cand_values);
                if (cand_energy <= energy || rng.uniform() < std::exp(energy - cand_energy)) {
                    state = cand;
                    values = cand_values;
                    energy = cand_energy;
                    accepted = true;
                }
            }
        } else {
            const double sigma = std::exp(log_scale);
            Vec cand(state);
            for (double& xi : cand) xi += sigma * rng.normal();
            if (indicator(p.constraints, cand)) {
                const Vec cand_values = objective_values_at(p, cand);
                const double cand_energy = energy_of(betas, cand_values);
                if (std::isfinite(cand_energy) &&
                    (cand_energy <= energy || rng.uniform() < std::exp(energy - cand_energy))) {
                    state = std::move(cand);
                    values = cand_values;
                    energy = cand_energy;
                    accepted = true;
                }
            }
            if (in_burn_in) {
                const double gain = 1.0 / std::pow(double(t + 1), 0.6);
                log_scale += gain * ((accepted ? 1.0 : 0.0) - cfg.target_acceptance);
            }
        }

        double tv = 0.0;
        for (double v : values) tv += v;
        if (tv < res.best_value) {
            res.best_value = tv;
            res.best_point = state;
        }
        if (!in_burn_in) {
            if (accepted) ++accepted_post;
            res.points.push_back(state);
            res.values.push_back(values);
        }
    }

    scale = std::exp(log_scale);
    res.acceptance = retained > 0 ? double(accepted_post) / double(retained) : 0.0;
    res.end_state = std::move(state);
    return res;
}

// Exact feasible volume fraction of the axis-aligned cell centered at
// `center` with edge lengths `step`, clipped against the constraint rows.
// Computed in unit-cell coordinates so the clipped volume is the fraction.
double cell_fraction_inside(const std::vector<HalfSpace>& rows, const Vec& center, const Vec& step) {
    const std::size_t n = center.size();
    std::vector<HalfSpace> local;
    local.reserve(rows.size() + 2 * n);
    for (const auto& r : rows) {
        HalfSpace hs;
        hs.h.resize(n);
        for (std::size_t i = 0; i < n; ++i) hs.h[i] = r.h[i] * step[i];
        hs.d = r.d + dot(r.h, center);
        local.push_back(std::move(hs));
    }
    for (std::size_t i = 0; i < n; ++i) {
        HalfSpace up, dn;
        up.h.assign(n, 0.0);
        dn.h.assign(n, 0.0);
        up.h[i] = 1.0;
        up.d = -0.5;
        dn.h[i] = -1.0;
        dn.d = -0.5;
        local.push_back(std::move(up));
        local.push_back(std::move(dn));
    }
    return hpolytope_volume(local, n);
}

unsigned thread_cap() {
    if (const char* env = std::getenv("PLFILTER_THREADS")) {
        const long v = std::atol(env);
        if (v >= 1) return unsigned(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

// Run fn(chain_index) for every chain, at most thread_cap() at a time.
// Results are written into per-chain slots, so execution order is moot.
// Worker exceptions are captured and rethrown on the calling thread.
void for_each_chain(int n_chains, const std::function<void(int)>& fn) {
    const unsigned threads = std::min<unsigned>(thread_cap(), unsigned(n_chains));
    if (threads <= 1) {
        for (int c = 0; c < n_chains; ++c) fn(c);
        return;
    }
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(n_chains));
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned w = 0; w < threads; ++w)
        pool.emplace_back([&, w]() {
            for (int c = int(w); c < n_chains; c += int(threads)) {
                try {
                    fn(c);
                } catch (...) {
                    errors[std::size_t(c)] = std::current_exception();
                }
            }
        });
    for (auto& t : pool) t.join();
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
}

} // namespace

void ChainConfig::validate() const {
    if (burn_in < 0 || n_steps <= burn_in)
        throw input_error("chain config: need n_steps > burn_in >= 0");
    if (proposal_scale <= 0.0) throw input_error("chain config: proposal_scale must be positive");
    if (target_acceptance <= 0.0 || target_acceptance >= 1.0)
        throw input_error("chain config: target_acceptance must lie in (0,1)");
    if (n_chains < 1) throw input_error("chain config: need at least one chain");
}

SampleBatch metropolis_chain(const ProblemSpec& p, const Vec& beta, const ChainConfig& cfg) {
    p.validate();
    cfg.validate();
    if (beta.size() != p.n_objectives())
        throw input_error("metropolis: beta vector length must match objective count");
    for (double b : beta)
        if (b < 0.0) throw input_error("metropolis: beta must be nonnegative");
    if (cfg.start) {
        if (cfg.start->size() != p.dimension) throw input_error("metropolis: start dimension mismatch");
        if (!indicator(p.constraints, *cfg.start))
            throw start_failure_error("metropolis: provided start point infeasible");
    }

    std::vector<ChainResult> results(cfg.n_chains);
    for_each_chain(cfg.n_chains, [&](int c) {
        Rng rng(splitmix64(cfg.seed ^ (0xA5C152F9ULL * std::uint64_t(c + 1))));
        Vec start = cfg.start ? *cfg.start : find_start(p, rng);
        double scale = cfg.proposal_scale;
        results[c] = run_chain(p, beta, cfg, rng, std::move(start), scale);
    });

    SampleBatch batch;
    batch.beta = beta;
    double acc = 0.0;
    for (const auto& r : results) {
        batch.points.insert(batch.points.end(), r.points.begin(), r.points.end());
        batch.objective_values.insert(batch.objective_values.end(), r.values.begin(), r.values.end());
        acc += r.acceptance;
    }
    batch.acceptance_rate = acc / double(cfg.n_chains);
    return batch;
}

SampleBatch metropolis_chain(const ProblemSpec& p, double beta, const ChainConfig& cfg) {
    return metropolis_chain(p, resolve_beta_vector(p, beta), cfg);
}

MomentReport estimate_moments(const SampleBatch& b) {
    const std::size_t s = b.size();
    if (s < 20) throw insufficient_data_error("estimate_moments: fewer than 20 retained samples");
    const std::size_t m = b.n_objectives();

    // Overall objective per sample: the single objective, or the plain sum
    // of components for multi-objective batches.
    Vec totals(s, 0.0);
    for (std::size_t i = 0; i < s; ++i)
        for (std::size_t j = 0; j < m; ++j) totals[i] += b.objective_values[i][j];

    MomentReport rep;
    rep.sample_count = s;
    rep.beta = b.beta.empty() ? 0.0 : b.beta.front();
    rep.temperature = rep.beta > 0.0 ? 1.0 / rep.beta : std::numeric_limits<double>::infinity();

    double mean = 0.0;
    for (double v : totals) mean += v;
    mean /= double(s);
    double var = 0.0;
    for (double v : totals) var += (v - mean) * (v - mean);
    var /= double(s - 1);
    rep.mean_o = mean;
    rep.var_o = var;
    rep.std_o = std::sqrt(var);

    // Batch means over 20 consecutive blocks.
    const std::size_t nblocks = 20;
    Vec block_means(nblocks, 0.0), block_vars(nblocks, 0.0);
    for (std::size_t blk = 0; blk < nblocks; ++blk) {
        const std::size_t lo = blk * s / nblocks;
        const std::size_t hi = (blk + 1) * s / nblocks;
        double bm = 0.0;
        for (std::size_t i = lo; i < hi; ++i) bm += totals[i];
        bm /= double(hi - lo);
        double bv = 0.0;
        for (std::size_t i = lo; i < hi; ++i) bv += (totals[i] - bm) * (totals[i] - bm);
        bv /= double(hi - lo > 1 ? hi - lo - 1 : 1);
        block_means[blk] = bm;
        block_vars[blk] = bv;
    }
    auto stderr_of = [nblocks](const Vec& blocks) {
        double g = 0.0;
        for (double v : blocks) g += v;
        g /= double(nblocks);
        double ss = 0.0;
        for (double v : blocks) ss += (v - g) * (v - g);
        return std::sqrt(ss / double(nblocks * (nblocks - 1)));
    };
    rep.stderr_mean = stderr_of(block_means);
    rep.stderr_var = stderr_of(block_vars);

    if (m > 1) {
        rep.component_means.assign(m, 0.0);
        for (const auto& row : b.objective_values)
            for (std::size_t j = 0; j < m; ++j) rep.component_means[j] += row[j];
        for (double& v : rep.component_means) v /= double(s);
        rep.covariance = Matrix(m, m);
        for (const auto& row : b.objective_values)
            for (std::size_t i = 0; i < m; ++i)
                for (std::size_t j = 0; j < m; ++j)
                    rep.covariance(i, j) += (row[i] - rep.component_means[i]) *
                                            (row[j] - rep.component_means[j]);
        for (double& v : rep.covariance.data) v /= double(s - 1);
    }
    return rep;
}

SweepData beta_sweep(const ProblemSpec& p, const Vec& schedule, const ChainConfig& cfg) {
    p.validate();
    cfg.validate();
    if (schedule.empty()) throw input_error("beta_sweep: empty schedule");
    for (std::size_t i = 0; i < schedule.size(); ++i) {
        if (schedule[i] <= 0.0) throw input_error("beta_sweep: schedule entries must be positive");
        if (i > 0 && schedule[i] <= schedule[i - 1])
            throw input_error("beta_sweep: schedule must be strictly ascending");
    }
    if (cfg.start && !indicator(p.constraints, *cfg.start))
        throw start_failure_error("beta_sweep: provided start point infeasible");

    const std::size_t m = p.n_objectives();
    // results[chain][schedule entry]
    std::vector<std::vector<ChainResult>> results(cfg.n_chains);
    for_each_chain(cfg.n_chains, [&](int c) {
        Rng rng(splitmix64(cfg.seed ^ (0xA5C152F9ULL * std::uint64_t(c + 1))));
        Vec state = cfg.start ? *cfg.start : find_start(p, rng);
        double scale = cfg.proposal_scale;
        auto& per_beta = results[c];
        per_beta.reserve(schedule.size());
        for (double beta : schedule) {
            per_beta.push_back(run_chain(p, resolve_beta_vector(p, beta), cfg, rng, state, scale));
            state = per_beta.back().end_state;
        }
    });

    SweepData sweep;
    sweep.n_objectives = m;
    sweep.best_value = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < schedule.size(); ++k) {
        SampleBatch batch;
        batch.beta = resolve_beta_vector(p, schedule[k]);
        double acc = 0.0;
        for (int c = 0; c < cfg.n_chains; ++c) {
            const ChainResult& r = results[c][k];
            batch.points.insert(batch.points.end(), r.points.begin(), r.points.end());
            batch.objective_values.insert(batch.objective_values.end(), r.values.begin(), r.values.end());
            acc += r.acceptance;
            if (r.best_value < sweep.best_value) {
                sweep.best_value = r.best_value;
                sweep.best_point = r.best_point;
            }
        }
        batch.acceptance_rate = acc / double(cfg.n_chains);

        const MomentReport rep = estimate_moments(batch);
        SweepRow row;
        row.beta = schedule[k];
        row.temperature = 1.0 / schedule[k];
        row.mean_o = rep.mean_o;
        row.stderr_o = rep.stderr_mean;
        row.var_o = rep.var_o;
        row.stderr_var = rep.stderr_var;
        row.component_means = rep.component_means;
        row.covariance = rep.covariance;
        sweep.rows.push_back(std::move(row));
    }
    return sweep;
}

LandauProfile landau_histogram(const SampleBatch& b,
                               const std::function<double(const Vec&)>& characteristic, int bins) {
    if (b.size() == 0) throw input_error("landau_histogram: empty sample batch");
    if (bins < 2) throw input_error("landau_histogram: need at least 2 bins");

    Vec c(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) c[i] = characteristic(b.points[i]);
    double lo = *std::min_element(c.begin(), c.end());
    double hi = *std::max_element(c.begin(), c.end());
    if (hi - lo <= 1e-12 * std::max(1.0, std::abs(hi))) {
        lo -= 0.5;
        hi += 0.5;
    }

    LandauProfile prof;
    prof.edges.resize(bins + 1);
    for (int k = 0; k <= bins; ++k)
        prof.edges[k] = lo + (hi - lo) * double(k) / double(bins);
    prof.counts.assign(bins, 0);
    for (double v : c) {
        int k = int(double(bins) * (v - lo) / (hi - lo));
        k = std::clamp(k, 0, bins - 1);
        ++prof.counts[std::size_t(k)];
    }

    const double total = double(b.size());
    const double width = (hi - lo) / double(bins);
    prof.beta_f.assign(bins, std::numeric_limits<double>::infinity());
    double fmin = std::numeric_limits<double>::infinity();
    for (int k = 0; k < bins; ++k) {
        if (prof.counts[std::size_t(k)] == 0) continue;
        prof.beta_f[std::size_t(k)] = -std::log(double(prof.counts[std::size_t(k)]) / (total * width));
        fmin = std::min(fmin, prof.beta_f[std::size_t(k)]);
    }
    std::size_t nonempty = 0;
    for (int k = 0; k < bins; ++k) {
        if (!std::isfinite(prof.beta_f[std::size_t(k)])) continue;
        prof.beta_f[std::size_t(k)] -= fmin;
        ++nonempty;
    }
    prof.degenerate = nonempty <= 1;
    return prof;
}

double brute_force_Z(const ProblemSpec& p, double beta, long resolution) {
    p.validate();
    if (beta < 0.0) throw input_error("brute_force_Z: beta must be nonnegative");

    const PressureVector pressure(p.pressure ? *p.pressure : Vec(p.n_objectives(), 1.0));
    if (p.kind == ProblemKind::discrete) {
        double z = 0.0;
        for (const auto& pt : p.discrete_points) {
            if (!indicator(p.constraints, pt)) continue;
            double e = 0.0;
            for (std::size_t i = 0; i < p.n_objectives(); ++i)
                e += pressure.weights[i] * p.objectives[i](pt);
            z += std::exp(-beta * e);
        }
        return z;
    }

    if (p.dimension > 3)
        throw unsupported_dimension_error("brute_force_Z: grid quadrature limited to n <= 3");
    if (resolution < 10) throw input_error("brute_force_Z: resolution must be >= 10");

    // Bounding box: explicit box, else the vertex bounding box of the
    // constraint polytope, else a Gaussian-mass box for bare quadratics.
    Vec lo(p.dimension), hi(p.dimension);
    if (box_is_finite(p)) {
        for (std::size_t i = 0; i < p.dimension; ++i) {
            lo[i] = p.constraints.box->lo[i];
            hi[i] = p.constraints.box->hi[i];
        }
    } else if (p.constraints.rows.size() >= p.dimension) {
        Vec c(p.dimension, 0.0);
        c[0] = 1.0;
        const auto verts = enumerate_vertices(p.constraints, LinearObjective(c, 0.0));
        for (std::size_t i = 0; i < p.dimension; ++i) {
            lo[i] = hi[i] = verts.front().point[i];
            for (const auto& v : verts) {
                lo[i] = std::min(lo[i], v.point[i]);
                hi[i] = std::max(hi[i], v.point[i]);
            }
        }
    } else if (p.kind == ProblemKind::quadratic && p.n_objectives() == 1) {
        if (beta <= 0.0) throw input_error("brute_force_Z: beta must be positive for unbounded domains");
        const auto& q = p.objectives.front().quadratic();
        double trace_inv = 0.0;
        for (std::size_t i = 0; i < p.dimension; ++i) {
            Vec e(p.dimension, 0.0);
            e[i] = 1.0;
            trace_inv += cholesky_solve(q.chol, e)[i];
        }
        const double w = 12.0 * std::sqrt(trace_inv / beta);
        for (std::size_t i = 0; i < p.dimension; ++i) {
            lo[i] = q.minimizer[i] - w;
            hi[i] = q.minimizer[i] + w;
        }
    } else {
        throw input_error("brute_force_Z: a bounding box is required for this problem");
    }

    const Objective combined = p.n_objectives() == 1
                                   ? p.objectives.front()
                                   : combine_objectives(p.objectives, pressure);

    // Paper convention split: linear problems measure the transverse volume
    // in the objective-aligned frame, which multiplies the raw box integral
    // by the objective gradient norm.
    double gradient_factor = 1.0;
    if (p.kind == ProblemKind::linear) {
        Vec ctot(p.dimension, 0.0);
        for (std::size_t i = 0; i < p.n_objectives(); ++i)
            ctot = add(ctot, scaled(p.objectives[i].linear().c, pressure.weights[i]));
        gradient_factor = norm(ctot);
    }

    Vec step(p.dimension);
    double cell = 1.0;
    for (std::size_t i = 0; i < p.dimension; ++i) {
        step[i] = (hi[i] - lo[i]) / double(resolution);
        cell *= step[i];
    }
    const double half_diag = 0.5 * norm(step);

    // The feasible set is polyhedral, so cells cut by its boundary get their
    // exact feasible fraction (cell clipped against the constraint rows)
    // instead of the all-or-nothing center indicator. Interior and exterior
    // cells are classified by the center's distance to every row.
    const std::vector<HalfSpace> rows = p.constraints.all_rows(p.dimension);
    std::vector<double> row_norms;
    row_norms.reserve(rows.size());
    for (const auto& r : rows) row_norms.push_back(norm(r.h));

    double z = 0.0;
    Vec x(p.dimension);
    std::vector<long> idx(p.dimension, 0);
    for (;;) {
        for (std::size_t i = 0; i < p.dimension; ++i)
            x[i] = lo[i] + step[i] * (double(idx[i]) + 0.5);

        bool outside = false;
        bool boundary = false;
        for (std::size_t j = 0; j < rows.size() && !outside; ++j) {
            const double slack = dot(rows[j].h, x) + rows[j].d; // <= 0 feasible
            if (slack > half_diag * row_norms[j]) outside = true;
            else if (slack > -half_diag * row_norms[j]) boundary = true;
        }
        double weight = 0.0;
        if (!outside) {
            if (!boundary) {
                weight = 1.0;
            } else {
                weight = cell_fraction_inside(rows, x, step);
            }
        }
        if (weight > 0.0) z += weight * std::exp(-beta * combined(x));

        std::size_t carry = 0;
        while (carry < p.dimension && ++idx[carry] == resolution) {
            idx[carry] = 0;
            ++carry;
        }
        if (carry == p.dimension) break;
    }
    return gradient_factor * z * cell;
}

double band_contribution(double o_lo, double delta_o, double omega_bar, double beta) {
    if (delta_o <= 0.0) throw input_error("band_contribution: delta_o must be positive");
    if (beta < 0.0) throw input_error("band_contribution: beta must be nonnegative");
    if (beta == 0.0) return delta_o * omega_bar;
    return omega_bar * std::exp(-beta * o_lo) * (-std::expm1(-beta * delta_o)) / beta;
}

double mode_ratio(double o1, double o2, double temperature) {
    if (temperature <= 0.0) throw input_error("mode_ratio: temperature must be positive");
    return std::exp((o2 - o1) / temperature);
}

} // namespace plf
