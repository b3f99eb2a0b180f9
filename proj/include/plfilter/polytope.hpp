#ifndef PLFILTER_POLYTOPE_HPP
#define PLFILTER_POLYTOPE_HPP

#include <utility>
#include <vector>

#include "plfilter/model.hpp"

namespace plf {

/// Orthonormal frame whose first row is the unit objective direction, so
/// the first rotated coordinate is (O - shift) / scale.
struct ObjectiveFrame {
    Matrix rotation; // n x n, rows orthonormal, row 0 = c / |c|
    double shift = 0.0; // d0
    double scale = 1.0; // |c|

    double objective_of(const Vec& x) const;
    /// (objective value, transverse coordinates) of a point.
    std::pair<double, Vec> to_frame(const Vec& x) const;
};

struct Vertex {
    Vec point;
    double objective_value = 0.0;
    std::vector<int> active_set; // indices into ConstraintSet::all_rows order
};

/// Piecewise polynomial transverse volume: on [breakpoints[k], breakpoints[k+1]]
/// the slice volume is sum_i pieces[k][i] * O^i.
struct SliceVolumeFunction {
    Vec breakpoints;
    std::vector<Vec> pieces;
    bool merged_breakpoints = false; // nearly coincident vertex values collapsed

    double value(double o) const;
    /// Integral of the volume function over its full support, i.e. the
    /// region volume measured in the objective-aligned frame.
    double integral() const;
};

/// All basic feasible solutions, duplicates merged, sorted by objective
/// value. Exhaustive over n-subsets of constraints; throws Unbounded when a
/// recession direction exists and EmptyRegion when no feasible vertex does.
std::vector<Vertex> enumerate_vertices(const ConstraintSet& cs, const LinearObjective& obj);

ObjectiveFrame build_frame(const LinearObjective& obj);

/// Exact piecewise-polynomial cross-section volume of the feasible polytope,
/// foliated by the linear objective. Requires a bounded full-dimensional
/// region with n >= 2.
SliceVolumeFunction slice_volume(const ConstraintSet& cs, const LinearObjective& obj);

/// Euclidean (n-1)-volume of the feasible slice {x : O(x) = o}; the exact
/// quantity interpolated by slice_volume, exposed for direct evaluation.
double slice_section_volume(const ConstraintSet& cs, const LinearObjective& obj, double o);

/// Volume of the bounded polytope {x : h.x + d <= 0 for each row} by
/// recursive facet coning. Returns 0 for empty or lower-dimensional sets.
double hpolytope_volume(const std::vector<HalfSpace>& rows, std::size_t dim);

} // namespace plf

#endif // PLFILTER_POLYTOPE_HPP
