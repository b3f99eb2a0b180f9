#include "plfilter/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "plfilter/errors.hpp"

namespace plf {

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::transposed() const {
    Matrix t(cols, rows);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) t(j, i) = (*this)(i, j);
    return t;
}

double dot(const Vec& a, const Vec& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm(const Vec& a) { return std::sqrt(dot(a, a)); }

Vec scaled(const Vec& a, double s) {
    Vec r(a);
    for (double& v : r) v *= s;
    return r;
}

Vec add(const Vec& a, const Vec& b) {
    Vec r(a);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
}

Vec sub(const Vec& a, const Vec& b) {
    Vec r(a);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
    return r;
}

Vec matvec(const Matrix& m, const Vec& x) {
    Vec r(m.rows, 0.0);
    for (std::size_t i = 0; i < m.rows; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < m.cols; ++j) s += m(i, j) * x[j];
        r[i] = s;
    }
    return r;
}

Matrix matmul(const Matrix& a, const Matrix& b) {
    Matrix r(a.rows, b.cols);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t k = 0; k < a.cols; ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            for (std::size_t j = 0; j < b.cols; ++j) r(i, j) += aik * b(k, j);
        }
    return r;
}

std::optional<Vec> solve_linear(Matrix a, Vec b, double tol) {
    const std::size_t n = a.rows;
    if (a.cols != n || b.size() != n) throw input_error("solve_linear: shape mismatch");

    double scale = 0.0;
    for (double v : a.data) scale = std::max(scale, std::abs(v));
    if (scale == 0.0) return std::nullopt;

    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t i = col + 1; i < n; ++i)
            if (std::abs(a(i, col)) > std::abs(a(piv, col))) piv = i;
        if (std::abs(a(piv, col)) <= tol * scale) return std::nullopt;
        if (piv != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(piv, j), a(col, j));
            std::swap(b[piv], b[col]);
        }
        for (std::size_t i = col + 1; i < n; ++i) {
            const double f = a(i, col) / a(col, col);
            if (f == 0.0) continue;
            for (std::size_t j = col; j < n; ++j) a(i, j) -= f * a(col, j);
            b[i] -= f * b[col];
        }
    }
    Vec x(n, 0.0);
    for (std::size_t ii = n; ii-- > 0;) {
        double s = b[ii];
        for (std::size_t j = ii + 1; j < n; ++j) s -= a(ii, j) * x[j];
        x[ii] = s / a(ii, ii);
    }
    return x;
}

std::size_t rank(Matrix a, double tol) {
    double scale = 0.0;
    for (double v : a.data) scale = std::max(scale, std::abs(v));
    if (scale == 0.0) return 0;

    std::size_t r = 0;
    for (std::size_t col = 0; col < a.cols && r < a.rows; ++col) {
        std::size_t piv = r;
        for (std::size_t i = r + 1; i < a.rows; ++i)
            if (std::abs(a(i, col)) > std::abs(a(piv, col))) piv = i;
        if (std::abs(a(piv, col)) <= tol * scale) continue;
        if (piv != r)
            for (std::size_t j = 0; j < a.cols; ++j) std::swap(a(piv, j), a(r, j));
        for (std::size_t i = r + 1; i < a.rows; ++i) {
            const double f = a(i, col) / a(r, col);
            if (f == 0.0) continue;
            for (std::size_t j = col; j < a.cols; ++j) a(i, j) -= f * a(r, j);
        }
        ++r;
    }
    return r;
}

std::optional<Vec> nullspace_direction(const Matrix& a, double tol) {
    const std::size_t n = a.cols;
    if (a.rows + 1 != n) throw input_error("nullspace_direction: need (n-1) x n matrix");
    if (rank(a, tol) != n - 1) return std::nullopt;

    // Append each candidate unit row until the square system is regular,
    // then solve for the vector mapped to e_n.
    for (std::size_t k = 0; k < n; ++k) {
        Matrix sq(n, n);
        for (std::size_t i = 0; i + 1 < n; ++i)
            for (std::size_t j = 0; j < n; ++j) sq(i, j) = a(i, j);
        sq(n - 1, k) = 1.0;
        Vec rhs(n, 0.0);
        rhs[n - 1] = 1.0;
        auto x = solve_linear(sq, rhs, tol);
        if (!x) continue;
        const double nx = norm(*x);
        if (nx <= 0.0) continue;
        return scaled(*x, 1.0 / nx);
    }
    return std::nullopt;
}

std::optional<Matrix> cholesky(const Matrix& a) {
    const std::size_t n = a.rows;
    if (a.cols != n) throw input_error("cholesky: matrix not square");
    Matrix l(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            double s = a(i, j);
            for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
            if (i == j) {
                if (s <= 0.0) return std::nullopt;
                l(i, i) = std::sqrt(s);
            } else {
                l(i, j) = s / l(j, j);
            }
        }
    }
    return l;
}

Vec cholesky_solve(const Matrix& l, const Vec& b) {
    const std::size_t n = l.rows;
    Vec y(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double s = b[i];
        for (std::size_t k = 0; k < i; ++k) s -= l(i, k) * y[k];
        y[i] = s / l(i, i);
    }
    Vec x(n, 0.0);
    for (std::size_t ii = n; ii-- > 0;) {
        double s = y[ii];
        for (std::size_t k = ii + 1; k < n; ++k) s -= l(k, ii) * x[k];
        x[ii] = s / l(ii, ii);
    }
    return x;
}

Matrix row_aligned_orthonormal(const Vec& unit) {
    const std::size_t n = unit.size();
    Matrix h = Matrix::identity(n);
    Vec w(unit);
    w[0] -= 1.0; // w = u - e1
    const double ww = dot(w, w);
    if (ww < 1e-30) return h; // already aligned with e1
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) h(i, j) -= 2.0 * w[i] * w[j] / ww;
    return h;
}

Matrix hyperplane_basis(const Vec& normal) {
    const std::size_t d = normal.size();
    const double nn = norm(normal);
    if (nn <= 0.0) throw input_error("hyperplane_basis: zero normal");
    Matrix h = row_aligned_orthonormal(scaled(normal, 1.0 / nn));
    // Rows 1..d-1 of the reflector are orthonormal and orthogonal to the
    // normal; return them as columns.
    Matrix basis(d, d - 1);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j + 1 < d; ++j) basis(i, j) = h(j + 1, i);
    return basis;
}

} // namespace plf
