#include "plfilter/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "plfilter/errors.hpp"

namespace plf {

namespace {

constexpr double kMergeTol = 1e-7;  // vertex merge distance
constexpr double kRayTol = 1e-9;    // recession direction slack

// Visit all k-subsets of {0..m-1}.
template <typename F>
void for_each_subset(std::size_t m, std::size_t k, F&& visit) {
    if (k > m) return;
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    for (;;) {
        visit(idx);
        std::size_t i = k;
        while (i-- > 0) {
            if (idx[i] != i + m - k) {
                ++idx[i];
                for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
                break;
            }
            if (i == 0) return;
        }
    }
}

double binomial(std::size_t m, std::size_t k) {
    double r = 1.0;
    for (std::size_t i = 0; i < k; ++i) r = r * double(m - i) / double(i + 1);
    return r;
}

bool inf_close(const Vec& a, const Vec& b, double tol) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (std::abs(a[i] - b[i]) > tol) return false;
    return true;
}

// Half-space a.z <= b with |a| normalized to 1 (rows with |a| ~ 0 handled
// by the caller).
struct Row {
    Vec a;
    double b = 0.0;
};

// True if the region {a.z <= b} admits a nonzero recession direction.
bool has_recession_direction(const std::vector<HalfSpace>& rows, std::size_t n) {
    Matrix h(rows.size(), n);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < n; ++j) h(i, j) = rows[i].h[j];
    if (rank(h) < n) return true; // whole null space recedes both ways

    auto admits = [&](const Vec& v) {
        for (const auto& r : rows)
            if (dot(r.h, v) > kRayTol * (1.0 + norm(r.h))) return false;
        return true;
    };

    if (n == 1) {
        return admits({1.0}) || admits({-1.0});
    }
    // Extreme rays of a pointed cone are tight on n-1 independent rows.
    bool found = false;
    for_each_subset(rows.size(), n - 1, [&](const std::vector<std::size_t>& idx) {
        if (found) return;
        Matrix sub(n - 1, n);
        for (std::size_t i = 0; i + 1 < n; ++i)
            for (std::size_t j = 0; j < n; ++j) sub(i, j) = rows[idx[i]].h[j];
        auto dir = nullspace_direction(sub);
        if (!dir) return;
        if (admits(*dir) || admits(scaled(*dir, -1.0))) found = true;
    });
    return found;
}

double feasibility_slack(const HalfSpace& r, const Vec& x) {
    return dot(r.h, x) + r.d;
}

double row_scale(const HalfSpace& r, const Vec& x) {
    double s = std::abs(r.d);
    for (std::size_t i = 0; i < x.size(); ++i) s = std::max(s, std::abs(r.h[i] * x[i]));
    return std::max(1.0, s);
}

// -------- generic H-polytope volume by recursive coning --------

std::vector<Row> normalize_rows(const std::vector<Row>& raw, bool& infeasible) {
    std::vector<Row> rows;
    infeasible = false;
    for (const auto& r : raw) {
        const double na = norm(r.a);
        if (na <= 1e-13) {
            if (r.b < -1e-10) infeasible = true;
            continue; // vacuous row
        }
        Row nr{scaled(r.a, 1.0 / na), r.b / na};
        bool dup = false;
        for (const auto& q : rows)
            if (std::abs(q.b - nr.b) <= 1e-10 && inf_close(q.a, nr.a, 1e-10)) {
                dup = true;
                break;
            }
        if (!dup) rows.push_back(std::move(nr));
    }
    return rows;
}

double convex_volume(std::size_t d, const std::vector<Row>& raw);

std::vector<Vec> hrep_vertices(std::size_t d, const std::vector<Row>& rows) {
    std::vector<Vec> verts;
    for_each_subset(rows.size(), d, [&](const std::vector<std::size_t>& idx) {
        Matrix m(d, d);
        Vec rhs(d);
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t j = 0; j < d; ++j) m(i, j) = rows[idx[i]].a[j];
            rhs[i] = rows[idx[i]].b;
        }
        auto x = solve_linear(m, rhs, 1e-10);
        if (!x) return;
        double xs = 1.0;
        for (double v : *x) xs = std::max(xs, std::abs(v));
        for (const auto& r : rows)
            if (dot(r.a, *x) - r.b > 1e-9 * xs) return;
        for (const auto& v : verts)
            if (inf_close(v, *x, 1e-9 * xs)) return;
        verts.push_back(std::move(*x));
    });
    return verts;
}

double convex_volume(std::size_t d, const std::vector<Row>& raw) {
    bool infeasible = false;
    std::vector<Row> rows = normalize_rows(raw, infeasible);
    if (infeasible) return 0.0;

    if (d == 0) return 1.0;
    if (d == 1) {
        double lo = -std::numeric_limits<double>::infinity();
        double hi = std::numeric_limits<double>::infinity();
        for (const auto& r : rows) {
            const double a = r.a[0];
            if (a > 0.0) hi = std::min(hi, r.b / a);
            else lo = std::max(lo, r.b / a);
        }
        if (!std::isfinite(lo) || !std::isfinite(hi))
            throw numerical_error("convex_volume: unbounded 1-d section");
        return std::max(0.0, hi - lo);
    }

    const std::vector<Vec> verts = hrep_vertices(d, rows);
    if (verts.size() < d + 1) return 0.0;

    Vec centroid(d, 0.0);
    for (const auto& v : verts) centroid = add(centroid, v);
    centroid = scaled(centroid, 1.0 / double(verts.size()));

    double pt_scale = 1.0;
    for (const auto& v : verts)
        for (double x : v) pt_scale = std::max(pt_scale, std::abs(x));

    double vol = 0.0;
    for (const auto& r : rows) {
        std::vector<Vec> tight;
        for (const auto& v : verts)
            if (std::abs(dot(r.a, v) - r.b) <= 1e-7 * pt_scale) tight.push_back(v);
        if (tight.size() < d) continue;

        Vec origin(d, 0.0);
        for (const auto& v : tight) origin = add(origin, v);
        origin = scaled(origin, 1.0 / double(tight.size()));

        const Matrix basis = hyperplane_basis(r.a); // d x (d-1)
        std::vector<Row> facet_rows;
        for (const auto& q : rows) {
            if (&q == &r) continue;
            Vec a2(d - 1, 0.0);
            for (std::size_t j = 0; j + 1 < d; ++j) {
                double s = 0.0;
                for (std::size_t i = 0; i < d; ++i) s += basis(i, j) * q.a[i];
                a2[j] = s;
            }
            facet_rows.push_back({std::move(a2), q.b - dot(q.a, origin)});
        }
        const double facet_vol = convex_volume(d - 1, facet_rows);
        if (facet_vol <= 0.0) continue;
        const double height = r.b - dot(r.a, centroid);
        if (height <= 0.0) continue;
        vol += facet_vol * height / double(d);
    }
    return vol;
}

// Rows of the transverse slice polytope {xperp : a.xperp <= b(o)}.
std::vector<Row> slice_rows(const ObjectiveFrame& frame, const std::vector<HalfSpace>& rows,
                            double o) {
    const std::size_t n = frame.rotation.rows;
    std::vector<Row> out;
    out.reserve(rows.size());
    const double y0 = (o - frame.shift) / frame.scale;
    for (const auto& r : rows) {
        const Vec g = matvec(frame.rotation, r.h);
        Vec a(n - 1);
        for (std::size_t i = 1; i < n; ++i) a[i - 1] = g[i];
        out.push_back({std::move(a), -r.d - g[0] * y0});
    }
    return out;
}

// Polynomial fit through n samples on [lo, hi], returned in the global
// monomial basis. Samples at Chebyshev nodes keep the Vandermonde solve
// well conditioned; the fit is done in the centered coordinate and expanded.
Vec fit_piece_polynomial(const std::vector<double>& os, const std::vector<double>& vols,
                         double mid, double half) {
    const std::size_t n = os.size();
    Matrix vm(n, n);
    Vec rhs(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = (os[i] - mid) / half;
        double p = 1.0;
        for (std::size_t j = 0; j < n; ++j) {
            vm(i, j) = p;
            p *= t;
        }
        rhs[i] = vols[i];
    }
    auto b = solve_linear(vm, rhs, 1e-14);
    if (!b) throw numerical_error("slice_volume: singular interpolation system");

    // Expand sum_j b_j ((O - mid)/half)^j into sum_i a_i O^i.
    Vec coeffs(n, 0.0);
    Vec pow_basis{1.0}; // ((O - mid)/half)^j as global-monomial coefficients
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < pow_basis.size(); ++i) coeffs[i] += (*b)[j] * pow_basis[i];
        if (j + 1 < n) {
            Vec next(pow_basis.size() + 1, 0.0);
            for (std::size_t i = 0; i < pow_basis.size(); ++i) {
                next[i + 1] += pow_basis[i] / half;
                next[i] -= pow_basis[i] * mid / half;
            }
            pow_basis = std::move(next);
        }
    }
    return coeffs;
}

double eval_poly(const Vec& coeffs, double o) {
    double v = 0.0;
    for (std::size_t i = coeffs.size(); i-- > 0;) v = v * o + coeffs[i];
    return v;
}

} // namespace

double ObjectiveFrame::objective_of(const Vec& x) const {
    double y0 = 0.0;
    for (std::size_t j = 0; j < rotation.cols; ++j) y0 += rotation(0, j) * x[j];
    return scale * y0 + shift;
}

std::pair<double, Vec> ObjectiveFrame::to_frame(const Vec& x) const {
    const Vec y = matvec(rotation, x);
    Vec perp(y.begin() + 1, y.end());
    return {scale * y[0] + shift, std::move(perp)};
}

double SliceVolumeFunction::value(double o) const {
    if (breakpoints.size() < 2) return 0.0;
    if (o < breakpoints.front() || o > breakpoints.back()) return 0.0;
    std::size_t k = 0;
    while (k + 2 < breakpoints.size() && o > breakpoints[k + 1]) ++k;
    return eval_poly(pieces[k], o);
}

double SliceVolumeFunction::integral() const {
    double total = 0.0;
    for (std::size_t k = 0; k + 1 < breakpoints.size(); ++k) {
        const Vec& a = pieces[k];
        double acc = 0.0;
        // antiderivative difference, term by term
        for (std::size_t i = 0; i < a.size(); ++i) {
            const double p = double(i) + 1.0;
            acc += a[i] / p * (std::pow(breakpoints[k + 1], p) - std::pow(breakpoints[k], p));
        }
        total += acc;
    }
    return total;
}

ObjectiveFrame build_frame(const LinearObjective& obj) {
    const double scale = norm(obj.c);
    if (scale <= 0.0) throw input_error("build_frame: zero objective vector");
    ObjectiveFrame frame;
    frame.rotation = row_aligned_orthonormal(scaled(obj.c, 1.0 / scale));
    frame.shift = obj.d0;
    frame.scale = scale;
    return frame;
}

std::vector<Vertex> enumerate_vertices(const ConstraintSet& cs, const LinearObjective& obj) {
    const std::size_t n = obj.dimension();
    if (n < 1) throw input_error("enumerate_vertices: dimension must be >= 1");
    const std::vector<HalfSpace> rows = cs.all_rows(n);
    if (rows.size() < n) throw input_error("enumerate_vertices: need at least n constraints");
    if (binomial(rows.size(), n) > 5e6)
        throw input_error("enumerate_vertices: constraint subsets exceed desk scale");

    if (has_recession_direction(rows, n))
        throw unbounded_error("enumerate_vertices: feasible region unbounded (or empty with free directions)");

    std::vector<Vertex> verts;
    for_each_subset(rows.size(), n, [&](const std::vector<std::size_t>& idx) {
        Matrix m(n, n);
        Vec rhs(n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) m(i, j) = rows[idx[i]].h[j];
            rhs[i] = -rows[idx[i]].d;
        }
        auto x = solve_linear(m, rhs, 1e-10);
        if (!x) return;
        for (const auto& r : rows)
            if (feasibility_slack(r, *x) > kFeasTol * row_scale(r, *x)) return;
        for (const auto& v : verts)
            if (inf_close(v.point, *x, kMergeTol)) return;
        Vertex vert;
        vert.objective_value = obj(*x);
        vert.point = std::move(*x);
        verts.push_back(std::move(vert));
    });

    if (verts.empty()) throw empty_region_error("enumerate_vertices: no feasible vertex");

    for (auto& v : verts)
        for (std::size_t j = 0; j < rows.size(); ++j)
            if (std::abs(feasibility_slack(rows[j], v.point)) <= kMergeTol * row_scale(rows[j], v.point))
                v.active_set.push_back(static_cast<int>(j));

    std::sort(verts.begin(), verts.end(), [](const Vertex& a, const Vertex& b) {
        if (a.objective_value != b.objective_value) return a.objective_value < b.objective_value;
        return a.point < b.point;
    });
    return verts;
}

double slice_section_volume(const ConstraintSet& cs, const LinearObjective& obj, double o) {
    const std::size_t n = obj.dimension();
    if (n < 2) throw input_error("slice_section_volume: dimension must be >= 2");
    const ObjectiveFrame frame = build_frame(obj);
    return convex_volume(n - 1, slice_rows(frame, cs.all_rows(n), o));
}

double hpolytope_volume(const std::vector<HalfSpace>& rows, std::size_t dim) {
    if (dim == 0) throw input_error("hpolytope_volume: dimension must be >= 1");
    std::vector<Row> raw;
    raw.reserve(rows.size());
    for (const auto& r : rows) raw.push_back({r.h, -r.d});
    return convex_volume(dim, raw);
}

SliceVolumeFunction slice_volume(const ConstraintSet& cs, const LinearObjective& obj) {
    const std::size_t n = obj.dimension();
    if (n < 2) throw input_error("slice_volume: dimension must be >= 2");

    const std::vector<Vertex> verts = enumerate_vertices(cs, obj);
    if (verts.size() < n + 1)
        throw degenerate_region_error("slice_volume: feasible region not full dimensional");

    Vec gammas;
    gammas.reserve(verts.size());
    for (const auto& v : verts) gammas.push_back(v.objective_value);
    const double span = gammas.back() - gammas.front();
    if (span <= 1e-12 * std::max(1.0, std::abs(gammas.back())))
        throw degenerate_region_error("slice_volume: objective constant on feasible region");

    SliceVolumeFunction sv;
    sv.breakpoints.push_back(gammas.front());
    for (double g : gammas) {
        if (g - sv.breakpoints.back() <= kMergeTol * span) {
            if (g != sv.breakpoints.back()) sv.merged_breakpoints = true;
            continue;
        }
        sv.breakpoints.push_back(g);
    }
    if (sv.breakpoints.size() < 2)
        throw degenerate_region_error("slice_volume: no breakpoint spread after merging");

    const ObjectiveFrame frame = build_frame(obj);
    const std::vector<HalfSpace> rows = cs.all_rows(n);

    const double pi = 3.14159265358979323846;
    double max_sample = 0.0;
    for (std::size_t k = 0; k + 1 < sv.breakpoints.size(); ++k) {
        const double lo = sv.breakpoints[k];
        const double hi = sv.breakpoints[k + 1];
        const double mid = 0.5 * (lo + hi);
        const double half = 0.5 * (hi - lo);
        std::vector<double> os(n), vols(n);
        for (std::size_t i = 0; i < n; ++i) {
            os[i] = mid + half * std::cos(pi * (2.0 * double(i) + 1.0) / (2.0 * double(n)));
            vols[i] = convex_volume(n - 1, slice_rows(frame, rows, os[i]));
            max_sample = std::max(max_sample, vols[i]);
        }
        sv.pieces.push_back(fit_piece_polynomial(os, vols, mid, half));
    }
    if (max_sample <= 0.0)
        throw degenerate_region_error("slice_volume: all cross sections have zero volume");

    // Continuity and nonnegativity sanity checks on the assembled pieces.
    for (std::size_t k = 0; k + 1 < sv.pieces.size(); ++k) {
        const double g = sv.breakpoints[k + 1];
        const double a = eval_poly(sv.pieces[k], g);
        const double b = eval_poly(sv.pieces[k + 1], g);
        if (std::abs(a - b) > 1e-8 * std::max({1e-300, std::abs(a), std::abs(b), max_sample}))
            throw numerical_error("slice_volume: discontinuity at interior breakpoint");
    }
    for (std::size_t k = 0; k < sv.pieces.size(); ++k) {
        for (int i = 0; i <= 8; ++i) {
            const double o = sv.breakpoints[k] +
                             (sv.breakpoints[k + 1] - sv.breakpoints[k]) * double(i) / 8.0;
            if (eval_poly(sv.pieces[k], o) < -1e-8 * max_sample)
                throw numerical_error("slice_volume: negative cross-section volume");
        }
    }
    return sv;
}

} // namespace plf
