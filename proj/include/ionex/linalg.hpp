#pragma once

// Dense symmetric linear algebra sized for the variational problem at hand
// (matrices <= ~100x100): Cholesky factorization plus a cyclic Jacobi
// eigensolver, combined into a generalized symmetric-definite solver for
// H c = E S c. Deliberately dependency-free; the problem sizes make the
// O(n^3) sweeps negligible.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "ionex/version.hpp"

namespace ionex {

class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double value = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, value) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<double> data_;
};

// Lower-triangular factor L with A = L L^T. Requires A symmetric positive
// definite; a non-positive pivot raises NonConvergenceError (for the solver
// pipeline this means the overlap matrix lost definiteness numerically).
inline Matrix cholesky_factor(const Matrix& a) {
    const std::size_t n = a.rows();
    if (a.cols() != n) throw std::invalid_argument("cholesky_factor: matrix must be square");
    Matrix l(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        double diag = a(j, j);
        for (std::size_t k = 0; k < j; ++k) diag -= l(j, k) * l(j, k);
        if (!(diag > 0.0) || !std::isfinite(diag))
            throw NonConvergenceError("cholesky_factor: matrix not positive definite at pivot " +
                                      std::to_string(j));
        const double ljj = std::sqrt(diag);
        l(j, j) = ljj;
        for (std::size_t i = j + 1; i < n; ++i) {
            double sum = a(i, j);
            for (std::size_t k = 0; k < j; ++k) sum -= l(i, k) * l(j, k);
            l(i, j) = sum / ljj;
        }
    }
    return l;
}

struct EigenDecomposition {
    std::vector<double> values;  // ascending
    Matrix vectors;              // column k pairs with values[k]; orthonormal
};

// Cyclic Jacobi diagonalization of a symmetric matrix. Sweeps continue until
// the off-diagonal Frobenius norm drops below tol * ||A||_F.
inline EigenDecomposition jacobi_eigensolve(Matrix a, double tol = 1e-12, int max_sweeps = 64) {
    const std::size_t n = a.rows();
    if (a.cols() != n) throw std::invalid_argument("jacobi_eigensolve: matrix must be square");
    if (!(tol > 0.0)) throw std::invalid_argument("jacobi_eigensolve: tol must be positive");

    Matrix v = Matrix::identity(n);

    double fro = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) fro += a(i, j) * a(i, j);
    fro = std::sqrt(fro);
    const double stop = tol * std::max(fro, 1e-300);

    auto off_norm = [&]() {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) s += a(i, j) * a(i, j);
        return std::sqrt(2.0 * s);
    };

    int sweep = 0;
    while (n > 1 && off_norm() > stop) {
        if (++sweep > max_sweeps)
            throw NonConvergenceError("jacobi_eigensolve: off-diagonal norm did not reach tolerance in " +
                                      std::to_string(max_sweeps) + " sweeps");
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (std::abs(apq) < 1e-300) {
                    a(p, q) = a(q, p) = 0.0;
                    continue;
                }
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t =
                    (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;

                a(p, p) -= t * apq;
                a(q, q) += t * apq;
                a(p, q) = a(q, p) = 0.0;
                for (std::size_t i = 0; i < n; ++i) {
                    if (i == p || i == q) continue;
                    const double aip = a(i, p), aiq = a(i, q);
                    a(i, p) = a(p, i) = c * aip - s * aiq;
                    a(i, q) = a(q, i) = s * aip + c * aiq;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    const double vip = v(i, p), viq = v(i, q);
                    v(i, p) = c * vip - s * viq;
                    v(i, q) = s * vip + c * viq;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t x, std::size_t y) { return a(x, x) < a(y, y); });

    EigenDecomposition result;
    result.values.resize(n);
    result.vectors = Matrix(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        result.values[k] = a(order[k], order[k]);
        for (std::size_t i = 0; i < n; ++i) result.vectors(i, k) = v(i, order[k]);
    }
    return result;
}

struct GeneralizedEigenPair {
    double value = 0.0;
    std::vector<double> vector;  // normalized so vector^T S vector = 1
};

// Lowest eigenpair of H c = E S c with S symmetric positive definite:
// factor S = L L^T, reduce to the standard problem C y = E y with
// C = L^{-1} H L^{-T}, diagonalize by Jacobi, back-transform c = L^{-T} y.
inline GeneralizedEigenPair generalized_lowest(const Matrix& h, const Matrix& s,
                                               double tol = 1e-12) {
    const std::size_t n = h.rows();
    if (h.cols() != n || s.rows() != n || s.cols() != n)
        throw std::invalid_argument("generalized_lowest: H and S must be square and same size");

    const Matrix l = cholesky_factor(s);

    // B = L^{-1} H  (forward substitution down each column of H)
    Matrix b(n, n);
    for (std::size_t col = 0; col < n; ++col) {
        for (std::size_t i = 0; i < n; ++i) {
            double sum = h(i, col);
            for (std::size_t k = 0; k < i; ++k) sum -= l(i, k) * b(k, col);
            b(i, col) = sum / l(i, i);
        }
    }
    // C = B L^{-T}  (for each row r of C, solve L c_r = b_r)
    Matrix cmat(n, n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t i = 0; i < n; ++i) {
            double sum = b(r, i);
            for (std::size_t k = 0; k < i; ++k) sum -= l(i, k) * cmat(r, k);
            cmat(r, i) = sum / l(i, i);
        }
    }
    // Symmetrize away the rounding asymmetry before Jacobi.
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double m = 0.5 * (cmat(i, j) + cmat(j, i));
            cmat(i, j) = cmat(j, i) = m;
        }

    const EigenDecomposition eig = jacobi_eigensolve(cmat, tol);

    GeneralizedEigenPair pair;
    pair.value = eig.values.front();
    // c = L^{-T} y  (back substitution)
    pair.vector.assign(n, 0.0);
    for (std::size_t ii = n; ii-- > 0;) {
        double sum = eig.vectors(ii, 0);
        for (std::size_t k = ii + 1; k < n; ++k) sum -= l(k, ii) * pair.vector[k];
        pair.vector[ii] = sum / l(ii, ii);
    }
    return pair;
}

}  // namespace ionex
