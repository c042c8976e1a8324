#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace gstd {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using ComplexMatrix = Eigen::MatrixXcd;
using Complex = std::complex<double>;

/// Singular values (or PSD eigenvalues) below this fraction of the largest are zero.
inline constexpr double kRankTolerance = 1e-8;

/// Number of singular values of `m` above kRankTolerance times the largest.
int numerical_rank(const Matrix& m, double rel_tol = kRankTolerance);

/// Rank of a symmetric PSD matrix, counting eigenvalues above rel_tol * max.
int psd_rank(const Matrix& sym, double rel_tol = kRankTolerance);

/// Ascending eigenvalues of a symmetric matrix.
Vector symmetric_eigenvalues(const Matrix& sym);

/// Orthonormal basis (columns) of the range of `m`.
Matrix range_basis(const Matrix& m, double rel_tol = kRankTolerance);

/// Orthonormal basis (columns) of the orthogonal complement of range(m).
Matrix complement_basis(const Matrix& m, double rel_tol = kRankTolerance);

/// 2-norm condition number; infinity for singular input.
double condition_number(const Matrix& m);
double condition_number(const ComplexMatrix& m);

/// Integer power of a square matrix by repeated squaring.
Matrix matrix_power(const Matrix& m, long long p);

/// Largest principal angle (radians) between span(a) and span(b); columns need not be orthonormal.
double max_principal_angle(const Matrix& a, const Matrix& b);

/// Sum of values in a stable (pairwise) order.
double pairwise_sum(const std::vector<double>& values);

}  // namespace gstd
