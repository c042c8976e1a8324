#include "gstd/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace gstd {

int numerical_rank(const Matrix& m, double rel_tol) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Matrix> svd(m);
  const Vector& s = svd.singularValues();
  if (s.size() == 0 || s(0) <= 0.0) return 0;
  const double cut = rel_tol * s(0);
  return static_cast<int>((s.array() > cut).count());
}

int psd_rank(const Matrix& sym, double rel_tol) {
  if (sym.size() == 0) return 0;
  Vector ev = symmetric_eigenvalues(sym);
  const double top = ev.maxCoeff();
  if (top <= 0.0) return 0;
  return static_cast<int>((ev.array() > rel_tol * top).count());
}

Vector symmetric_eigenvalues(const Matrix& sym) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(sym, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

Matrix range_basis(const Matrix& m, double rel_tol) {
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullU);
  const Vector& s = svd.singularValues();
  int r = 0;
  if (s.size() > 0 && s(0) > 0.0) r = static_cast<int>((s.array() > rel_tol * s(0)).count());
  return svd.matrixU().leftCols(r);
}

Matrix complement_basis(const Matrix& m, double rel_tol) {
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullU);
  const Vector& s = svd.singularValues();
  int r = 0;
  if (s.size() > 0 && s(0) > 0.0) r = static_cast<int>((s.array() > rel_tol * s(0)).count());
  return svd.matrixU().rightCols(m.rows() - r);
}

double condition_number(const Matrix& m) {
  Eigen::JacobiSVD<Matrix> svd(m);
  const Vector& s = svd.singularValues();
  if (s.size() == 0) return std::numeric_limits<double>::infinity();
  const double smin = s(s.size() - 1);
  if (smin <= 0.0) return std::numeric_limits<double>::infinity();
  return s(0) / smin;
}

double condition_number(const ComplexMatrix& m) {
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  const Vector& s = svd.singularValues();
  if (s.size() == 0) return std::numeric_limits<double>::infinity();
  const double smin = s(s.size() - 1);
  if (smin <= 0.0) return std::numeric_limits<double>::infinity();
  return s(0) / smin;
}

Matrix matrix_power(const Matrix& m, long long p) {
  Matrix result = Matrix::Identity(m.rows(), m.cols());
  Matrix base = m;
  while (p > 0) {
    if (p & 1) result = result * base;
    p >>= 1;
    if (p > 0) base = base * base;
  }
  return result;
}

double max_principal_angle(const Matrix& a, const Matrix& b) {
  Matrix qa = range_basis(a);
  Matrix qb = range_basis(b);
  if (qa.cols() == 0 || qb.cols() == 0) return M_PI / 2;
  Eigen::JacobiSVD<Matrix> svd(qa.transpose() * qb);
  const Vector& s = svd.singularValues();
  // The smallest cosine belongs to the largest angle; only min(dim) angles exist.
  double cmin = s(s.size() - 1);
  cmin = std::clamp(cmin, -1.0, 1.0);
  return std::acos(cmin);
}

double pairwise_sum(const std::vector<double>& values) {
  if (values.empty()) return 0.0;
  std::vector<double> work(values);
  while (work.size() > 1) {
    std::vector<double> next;
    next.reserve((work.size() + 1) / 2);
    for (std::size_t i = 0; i + 1 < work.size(); i += 2) next.push_back(work[i] + work[i + 1]);
    if (work.size() % 2 == 1) next.push_back(work.back());
    work.swap(next);
  }
  return work[0];
}

}  // namespace gstd
