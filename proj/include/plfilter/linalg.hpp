#ifndef PLFILTER_LINALG_HPP
#define PLFILTER_LINALG_HPP

#include <cstddef>
#include <optional>
#include <vector>

namespace plf {

using Vec = std::vector<double>;

/// Dense row-major matrix. Everything here is desk scale (n, m <= ~25),
/// so the implementations favor clarity and pivoted robustness over speed.
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c, double fill = 0.0)
        : rows(r), cols(c), data(r * c, fill) {}

    double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

    static Matrix identity(std::size_t n);
    Matrix transposed() const;
};

double dot(const Vec& a, const Vec& b);
double norm(const Vec& a);
Vec scaled(const Vec& a, double s);
Vec add(const Vec& a, const Vec& b);
Vec sub(const Vec& a, const Vec& b);
Vec matvec(const Matrix& m, const Vec& x);
Matrix matmul(const Matrix& a, const Matrix& b);

/// Solve A x = b by LU with partial pivoting. Empty result if A is singular
/// (pivot below tol relative to the largest row entry).
std::optional<Vec> solve_linear(Matrix a, Vec b, double tol = 1e-12);

/// Numerical rank by Gaussian elimination with full row pivoting.
std::size_t rank(Matrix a, double tol = 1e-10);

/// One-dimensional null space direction of an (n-1) x n matrix of rank n-1;
/// empty if the rank condition fails. Result has unit norm.
std::optional<Vec> nullspace_direction(const Matrix& a, double tol = 1e-10);

/// Lower-triangular Cholesky factor of a symmetric matrix; empty if the
/// matrix is not positive definite.
std::optional<Matrix> cholesky(const Matrix& a);

/// Solve A x = b given the Cholesky factor L (A = L L^T).
Vec cholesky_solve(const Matrix& l, const Vec& b);

/// Orthonormal n x n matrix whose first row equals the given unit vector
/// (Householder reflector; symmetric, so column 0 equals it too).
Matrix row_aligned_orthonormal(const Vec& unit);

/// Orthonormal basis of the hyperplane orthogonal to `normal`:
/// d x (d-1) matrix whose columns span {z : normal . z = 0}.
Matrix hyperplane_basis(const Vec& normal);

} // namespace plf

#endif // PLFILTER_LINALG_HPP
