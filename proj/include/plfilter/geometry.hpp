#ifndef PLFILTER_GEOMETRY_HPP
#define PLFILTER_GEOMETRY_HPP

#include <vector>

#include "plfilter/linalg.hpp"

namespace plf {

/// Filtered solution space of dimension N at filter strength beta.
/// beta = 0 is accepted as the unfiltered (Euclidean) limit.
struct FilteredSpace {
    std::size_t n = 2;
    double beta = 1.0;

    FilteredSpace() = default;
    FilteredSpace(std::size_t n_in, double beta_in);

    /// Conformal rate beta / (N - 1) appearing in the metric.
    double kappa() const { return beta / double(n - 1); }
};

/// Geodesic between objective levels o1 < o2 launched at inclination alpha
/// (the straight-line angle in the unfiltered limit).
struct GeodesicSpec {
    double o1 = 0.0;
    double o2 = 1.0;
    double alpha = 0.0; // in [0, pi/2)

    GeodesicSpec() = default;
    GeodesicSpec(double o1_in, double o2_in, double alpha_in);
};

/// ds^2 = dO^2 + e^{-2 beta O / (N-1)} |dx_perp|^2.
double line_element(const FilteredSpace& fs, double o, double d_o, double dx_perp_norm);

/// Hyperbolic coordinate a = ((N-1)/beta) e^{beta O/(N-1)}; requires beta > 0.
double poincare_coordinate(const FilteredSpace& fs, double o);

/// Transverse displacement accumulated by the geodesic, in closed form.
double geodesic_displacement(const FilteredSpace& fs, const GeodesicSpec& g);

/// Length of a piecewise-linear sampled path (O monotone, >= 2 samples):
/// trapezoid refinement of the metric integral to 1e-8 relative.
double path_length(const FilteredSpace& fs, const Vec& o_samples, const std::vector<Vec>& x_perp_samples);

} // namespace plf

#endif // PLFILTER_GEOMETRY_HPP
