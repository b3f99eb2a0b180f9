#include "plfilter/transform.hpp"

#include <algorithm>
#include <cmath>

#include "plfilter/errors.hpp"
#include "plfilter/special_functions.hpp"

namespace plf {

namespace {

constexpr double kTwoPi = 6.28318530717958647692;

// j-th derivative of sum_i a_i O^i evaluated at o.
double poly_derivative_at(const Vec& a, std::size_t j, double o) {
    double v = 0.0;
    for (std::size_t i = a.size(); i-- > j;) {
        double f = 1.0;
        for (std::size_t k = 0; k < j; ++k) f *= double(i - k);
        v += f * a[i] * std::pow(o, double(i - j));
    }
    return v;
}

struct ScaledSums {
    double w0 = 0.0; // Z * e^{+beta*gamma_1}
    double w1 = 0.0; // Z' * e^{+beta*gamma_1}
    double w2 = 0.0; // Z'' * e^{+beta*gamma_1}
};

// All three beta-derivative sums with the leading mode factored out, so
// large beta * gamma products cannot overflow.
ScaledSums scaled_sums(const ModeSum& ms, double beta) {
    if (beta <= 0.0) throw input_error("mode sum evaluation: beta must be positive");
    if (ms.modes.empty()) throw input_error("mode sum evaluation: no modes");
    const double g1 = ms.modes.front().gamma;
    ScaledSums out;
    for (const auto& m : ms.modes) {
        double s = 0.0, sp = 0.0, spp = 0.0;
        double bpow = 1.0; // beta^{-k}
        for (std::size_t k = 0; k < m.coeffs.size(); ++k) {
            const double c = m.coeffs[k];
            s += c * bpow;
            sp += -double(k) * c * bpow / beta;
            spp += double(k) * double(k + 1) * c * bpow / (beta * beta);
            bpow /= beta;
        }
        const double e = std::exp(-beta * (m.gamma - g1));
        out.w0 += e * s;
        out.w1 += e * (sp - m.gamma * s);
        out.w2 += e * (spp - 2.0 * m.gamma * sp + m.gamma * m.gamma * s);
    }
    return out;
}

void check_positive(double v, const char* name) {
    if (!(v > 0.0)) throw input_error(std::string(name) + " must be positive");
}

} // namespace

double ModeSum::eval(double beta) const {
    const ScaledSums s = scaled_sums(*this, beta);
    return std::exp(-beta * modes.front().gamma) * s.w0;
}

double ModeSum::log_eval(double beta) const {
    const ScaledSums s = scaled_sums(*this, beta);
    if (!(s.w0 > 0.0)) throw numerical_error("log_Z: nonpositive partition function");
    return -beta * modes.front().gamma + std::log(s.w0);
}

void ModeSum::validate() const {
    if (modes.empty()) throw input_error("mode sum: no modes");
    for (std::size_t i = 0; i + 1 < modes.size(); ++i)
        if (!(modes[i].gamma < modes[i + 1].gamma))
            throw input_error("mode sum: gamma values must be strictly increasing");
    for (int i = 0; i < 20; ++i) {
        const double beta = std::pow(10.0, -2.0 + 4.0 * double(i) / 19.0);
        if (!(scaled_sums(*this, beta).w0 > 0.0))
            throw numerical_error("mode sum: nonpositive Z on validation grid");
    }
}

ModeSum lp_partition_function(const SliceVolumeFunction& sv) {
    const std::size_t nbp = sv.breakpoints.size();
    if (nbp < 2 || sv.pieces.size() != nbp - 1)
        throw input_error("lp_partition_function: malformed slice volume function");
    const std::size_t n = sv.pieces.front().size();

    ModeSum ms;
    ms.modes.resize(nbp);
    for (std::size_t e = 0; e < nbp; ++e) {
        ms.modes[e].gamma = sv.breakpoints[e];
        ms.modes[e].coeffs.assign(n + 1, 0.0);
    }
    // Mode coefficients are derivative stacks of the piece polynomials:
    // first and last from the outer pieces alone, interior ones from the
    // difference across the breakpoint.
    for (std::size_t j = 0; j < n; ++j) {
        ms.modes.front().coeffs[j + 1] = poly_derivative_at(sv.pieces.front(), j, sv.breakpoints.front());
        ms.modes.back().coeffs[j + 1] = -poly_derivative_at(sv.pieces.back(), j, sv.breakpoints.back());
        for (std::size_t e = 1; e + 1 < nbp; ++e) {
            const double g = sv.breakpoints[e];
            ms.modes[e].coeffs[j + 1] =
                poly_derivative_at(sv.pieces[e], j, g) - poly_derivative_at(sv.pieces[e - 1], j, g);
        }
    }
    ms.validate();
    return ms;
}

ModeSum discrete_partition_function(const std::vector<Vec>& points, const Objective& obj) {
    if (points.empty()) throw input_error("discrete_partition_function: empty point list");
    Vec values;
    values.reserve(points.size());
    for (const auto& p : points) values.push_back(obj(p));
    std::sort(values.begin(), values.end());

    ModeSum ms;
    for (double v : values) {
        if (!ms.modes.empty() &&
            v - ms.modes.back().gamma <= 1e-12 * std::max(1.0, std::abs(v))) {
            ms.modes.back().coeffs[0] += 1.0;
        } else {
            ms.modes.push_back({v, {1.0}});
        }
    }
    return ms;
}

double eval_Z(const ModeSum& ms, double beta) { return ms.eval(beta); }

double log_Z(const ModeSum& ms, double beta) { return ms.log_eval(beta); }

double mean_objective(const ModeSum& ms, double beta) {
    const ScaledSums s = scaled_sums(ms, beta);
    if (!(s.w0 > 0.0)) throw numerical_error("mean_objective: nonpositive partition function");
    return -s.w1 / s.w0;
}

double variance(const ModeSum& ms, double beta) {
    const ScaledSums s = scaled_sums(ms, beta);
    if (!(s.w0 > 0.0)) throw numerical_error("variance: nonpositive partition function");
    const double m = s.w1 / s.w0;
    return std::max(0.0, s.w2 / s.w0 - m * m);
}

QpTransform qp_partition_function(const QuadraticObjective& q, double beta) {
    if (beta <= 0.0) throw input_error("qp_partition_function: beta must be positive");
    const double n = double(q.dimension());
    QpTransform out;
    out.o_min = q.o_min;
    out.log_z = 0.5 * n * std::log(kTwoPi / beta) - 0.5 * q.log_det_a - beta * q.o_min;
    out.mean = q.o_min + 0.5 * n / beta;
    out.var = 0.5 * n / (beta * beta);
    return out;
}

double qp_slice_volume(const QuadraticObjective& q, double o) {
    const double n = double(q.dimension());
    if (o <= q.o_min) return 0.0;
    return std::exp(0.5 * n * std::log(kTwoPi) - 0.5 * q.log_det_a - std::lgamma(0.5 * n) +
                    (0.5 * n - 1.0) * std::log(o - q.o_min));
}

namespace {

VolumeModelEval eval_model(const PowerLawModel& m, double beta) {
    check_positive(m.gamma, "power law gamma");
    check_positive(m.nu, "power law nu");
    if (m.n_ip < 1.0) throw input_error("power law n_ip must be >= 1");
    const double a = m.n_ip / m.nu;
    VolumeModelEval out;
    out.log_z = std::log(m.gamma) + std::lgamma(a) - beta * m.o_min - a * std::log(beta);
    out.z = std::exp(out.log_z);
    out.mean = m.o_min + a / beta;
    return out;
}

VolumeModelEval eval_model(const ExpansionModel& m, double beta) {
    check_positive(m.gamma, "expansion gamma");
    check_positive(m.nu, "expansion nu");
    check_positive(m.t_star, "expansion t_star");
    check_positive(m.delta_n, "expansion delta_n");
    if (m.n_ip < 1.0) throw input_error("expansion n_ip must be >= 1");
    const double a = m.n_ip / m.nu;
    // u = (Gamma(a+dn)/Gamma(a)) (T/T*)^dn, the sub-leading weight
    const double u = std::exp(std::lgamma(a + m.delta_n) - std::lgamma(a) -
                              m.delta_n * std::log(m.t_star * beta));
    VolumeModelEval out;
    out.log_z = std::log(m.gamma) + std::lgamma(a) - beta * m.o_min - a * std::log(beta) +
                std::log1p(u);
    out.z = std::exp(out.log_z);
    out.mean = m.o_min + a / beta + (m.delta_n / beta) * (u / (1.0 + u));
    return out;
}

VolumeModelEval eval_model(const TwoMinimaModel& m, double beta) {
    check_positive(m.gamma_g, "two minima gamma_g");
    check_positive(m.gamma_l, "two minima gamma_l");
    check_positive(m.nu, "two minima nu");
    if (m.n_g < 1.0 || m.n_l < 1.0) throw input_error("two minima n must be >= 1");
    if (!(m.o_g < m.o_l)) throw input_error("two minima require o_g < o_l");
    const double ag = m.n_g / m.nu;
    const double al = m.n_l / m.nu;
    const double lg = std::log(m.gamma_g) + std::lgamma(ag) - beta * m.o_g - ag * std::log(beta);
    const double ll = std::log(m.gamma_l) + std::lgamma(al) - beta * m.o_l - al * std::log(beta);
    const double lmax = std::max(lg, ll);
    const double wg = std::exp(lg - lmax);
    const double wl = std::exp(ll - lmax);
    VolumeModelEval out;
    out.log_z = lmax + std::log(wg + wl);
    out.z = std::exp(out.log_z);
    out.mean = (wg * (m.o_g + ag / beta) + wl * (m.o_l + al / beta)) / (wg + wl);
    return out;
}

VolumeModelEval eval_model(const PiecewiseModel& m, double beta) {
    check_positive(m.gamma_lo, "piecewise gamma_<");
    check_positive(m.gamma_hi, "piecewise gamma_>");
    check_positive(m.nu_lo, "piecewise nu_<");
    check_positive(m.nu_hi, "piecewise nu_>");
    if (m.n_lo < 1.0 || m.n_hi < 1.0) throw input_error("piecewise n must be >= 1");
    if (!(m.o_min < m.o_star)) throw input_error("piecewise requires o_min < o_star");
    const double s = m.n_lo / m.nu_lo;
    const double t = m.n_hi / m.nu_hi;
    const double delta = m.o_star - m.o_min;
    const double x = beta * delta;

    // Z * e^{beta*o_min}: head power law (lower incomplete gamma), plateau
    // tail, and second power law tail.
    const double head = m.gamma_lo * std::pow(beta, -s) * std::exp(std::lgamma(s)) *
                        reg_lower_gamma(s, x);
    const double plateau = m.gamma_lo * std::pow(delta, s - 1.0) * std::exp(-x) / beta;
    const double tail = m.gamma_hi * std::exp(std::lgamma(t)) * std::exp(-x) * std::pow(beta, -t);
    const double w = head + plateau + tail;
    if (!(w > 0.0)) throw numerical_error("piecewise volume model: vanishing Z");

    VolumeModelEval out;
    out.log_z = -beta * m.o_min + std::log(w);
    out.z = std::exp(out.log_z);
    out.mean = ((m.o_min + s / beta) * head + (m.o_min + 1.0 / beta) * plateau +
                (m.o_star + t / beta) * tail) /
               w;
    return out;
}

} // namespace

VolumeModelEval volume_model_Z(const VolumeModel& vm, double beta) {
    if (beta <= 0.0) throw input_error("volume_model_Z: beta must be positive");
    return std::visit([beta](const auto& m) { return eval_model(m, beta); }, vm);
}

ModeSum apply_shift(const ModeSum& ms, double delta_o) {
    ModeSum out = ms;
    for (auto& m : out.modes) m.gamma += delta_o;
    return out;
}

ModeSum apply_rescale(const ModeSum& ms, double alpha) {
    if (alpha <= 0.0) throw input_error("apply_rescale: alpha must be positive");
    ModeSum out = ms;
    for (auto& m : out.modes) {
        m.gamma /= alpha;
        double f = 1.0 / alpha; // alpha^{k-1}
        for (std::size_t k = 0; k < m.coeffs.size(); ++k) {
            m.coeffs[k] *= f;
            f *= alpha;
        }
    }
    return out;
}

} // namespace plf
