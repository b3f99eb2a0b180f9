#include "plfilter/geometry.hpp"

#include <cmath>

#include "plfilter/errors.hpp"

namespace plf {

FilteredSpace::FilteredSpace(std::size_t n_in, double beta_in) : n(n_in), beta(beta_in) {
    if (n < 2) throw input_error("filtered space: dimension must be >= 2");
    if (beta < 0.0) throw input_error("filtered space: beta must be nonnegative");
}

GeodesicSpec::GeodesicSpec(double o1_in, double o2_in, double alpha_in)
    : o1(o1_in), o2(o2_in), alpha(alpha_in) {
    if (!(o2 > o1)) throw input_error("geodesic: need o2 > o1");
    if (alpha < 0.0 || alpha >= 1.57079632679489661923)
        throw input_error("geodesic: alpha must lie in [0, pi/2)");
}

double line_element(const FilteredSpace& fs, double o, double d_o, double dx_perp_norm) {
    const double w = std::exp(-2.0 * fs.kappa() * o);
    return d_o * d_o + w * dx_perp_norm * dx_perp_norm;
}

double poincare_coordinate(const FilteredSpace& fs, double o) {
    if (fs.beta <= 0.0) throw input_error("poincare_coordinate: beta must be positive");
    return (double(fs.n) - 1.0) / fs.beta * std::exp(fs.kappa() * o);
}

double geodesic_displacement(const FilteredSpace& fs, const GeodesicSpec& g) {
    const double s = std::sin(g.alpha);
    const double c = std::cos(g.alpha);
    const double delta = g.o2 - g.o1;

    if (fs.beta == 0.0) return delta * std::tan(g.alpha);

    const double k = fs.kappa();
    // sqrt(1 - e^{-2k dO} s^2) - c, rationalized: the numerator
    // s^2 (1 - e^{-2k dO}) stays exact near alpha -> 0 and dO -> 0.
    const double m = -std::expm1(-2.0 * k * delta); // 1 - e^{-2k dO}
    const double root = std::sqrt(c * c + s * s * m);
    return std::exp(k * g.o2) / k * s * m / (root + c);
}

double path_length(const FilteredSpace& fs, const Vec& o_samples,
                   const std::vector<Vec>& x_perp_samples) {
    const std::size_t n = o_samples.size();
    if (n < 2 || x_perp_samples.size() != n)
        throw input_error("path_length: need >= 2 matching samples");

    // Normalize to ascending O; strict monotonicity required.
    bool ascending = o_samples[1] > o_samples[0];
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const bool up = o_samples[i + 1] > o_samples[i];
        if (o_samples[i + 1] == o_samples[i] || up != ascending)
            throw input_error("path_length: O samples must be strictly monotone");
    }

    const double k = fs.kappa();
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double oa = ascending ? o_samples[i] : o_samples[i + 1];
        const double ob = ascending ? o_samples[i + 1] : o_samples[i];
        const Vec& xa = x_perp_samples[i];
        const Vec& xb = x_perp_samples[i + 1];
        const double v = norm(sub(xb, xa)) / (ob - oa);

        const auto integrand = [&](double o) {
            const double e = std::exp(-2.0 * k * o);
            return std::sqrt(1.0 + e * v * v);
        };
        // composite trapezoid, doubling panels until converged
        long panels = 2;
        double prev = 0.5 * (ob - oa) * (integrand(oa) + integrand(ob));
        for (int it = 0; it < 24; ++it) {
            double sum = 0.5 * (integrand(oa) + integrand(ob));
            for (long j = 1; j < panels; ++j)
                sum += integrand(oa + (ob - oa) * double(j) / double(panels));
            const double cur = (ob - oa) * sum / double(panels);
            if (std::abs(cur - prev) <= 1e-8 * std::abs(cur)) {
                prev = cur;
                break;
            }
            prev = cur;
            panels *= 2;
        }
        total += prev;
    }
    return total;
}

} // namespace plf
