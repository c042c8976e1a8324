#include "gstd/pauli.hpp"

#include <cmath>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include "gstd/error.hpp"

namespace gstd {

namespace {

ComplexMatrix single_pauli(int which) {
  ComplexMatrix p(2, 2);
  const Complex i(0.0, 1.0);
  switch (which) {
    case 0: p << 1, 0, 0, 1; break;
    case 1: p << 0, 1, 1, 0; break;
    case 2: p << 0, -i, i, 0; break;
    default: p << 1, 0, 0, -1; break;
  }
  return p;
}

}  // namespace

ComplexMatrix pauli_string(int nqubits, int index) {
  ComplexMatrix out = ComplexMatrix::Identity(1, 1);
  for (int q = 0; q < nqubits; ++q) {
    const int shift = 2 * (nqubits - 1 - q);
    const int which = (index >> shift) & 3;
    ComplexMatrix next = Eigen::kroneckerProduct(out, single_pauli(which)).eval();
    out = next;
  }
  return out;
}

std::vector<ComplexMatrix> pauli_basis(int nqubits) {
  const int d = 1 << nqubits;
  const int n = d * d;
  std::vector<ComplexMatrix> basis;
  basis.reserve(n);
  const double s = 1.0 / std::sqrt(static_cast<double>(d));
  for (int a = 0; a < n; ++a) basis.push_back(pauli_string(nqubits, a) * s);
  return basis;
}

std::string pauli_name(int nqubits, int index) {
  static const char kNames[] = {'I', 'X', 'Y', 'Z'};
  std::string out;
  for (int q = 0; q < nqubits; ++q) out += kNames[(index >> (2 * (nqubits - 1 - q))) & 3];
  return out;
}

int qubits_for_dim(int superop_dim) {
  for (int n = 1; n <= 4; ++n) {
    if ((1 << (2 * n)) == superop_dim) return n;
  }
  throw Error(ErrorKind::DimensionMismatch,
              "superoperator dimension " + std::to_string(superop_dim) + " is not 4^n for n in 1..4");
}

Matrix ptm_from_unitary(const ComplexMatrix& u) {
  const int d = static_cast<int>(u.rows());
  int nq = 0;
  while ((1 << nq) < d) ++nq;
  const auto basis = pauli_basis(nq);
  const int n = d * d;
  Matrix r(n, n);
  const ComplexMatrix ud = u.adjoint();
  for (int b = 0; b < n; ++b) {
    const ComplexMatrix img = u * basis[b] * ud;
    for (int a = 0; a < n; ++a) r(a, b) = (basis[a] * img).trace().real();
  }
  return r;
}

ComplexMatrix pauli_rotation(int nqubits, int index, double theta) {
  const ComplexMatrix p = pauli_string(nqubits, index);
  const ComplexMatrix gen = Complex(0.0, -theta / 2.0) * p;
  return gen.exp();
}

std::vector<Matrix> hamiltonian_generators(int nqubits) {
  const auto basis = pauli_basis(nqubits);
  const int n = static_cast<int>(basis.size());
  const Complex mi(0.0, -1.0);
  std::vector<Matrix> gens;
  gens.reserve(n - 1);
  for (int k = 1; k < n; ++k) {
    const ComplexMatrix p = pauli_string(nqubits, k);
    Matrix h(n, n);
    for (int b = 0; b < n; ++b) {
      const ComplexMatrix img = mi * (p * basis[b] - basis[b] * p);
      for (int a = 0; a < n; ++a) h(a, b) = (basis[a] * img).trace().real();
    }
    gens.push_back(h);
  }
  return gens;
}

Matrix depolarizing_ptm(int superop_dim, double eta) {
  Matrix m = Matrix::Identity(superop_dim, superop_dim) * (1.0 - eta);
  m(0, 0) = 1.0;
  return m;
}

Vector state_to_pauli(const ComplexMatrix& rho) {
  const int d = static_cast<int>(rho.rows());
  int nq = 0;
  while ((1 << nq) < d) ++nq;
  const auto basis = pauli_basis(nq);
  Vector v(d * d);
  for (int a = 0; a < d * d; ++a) v(a) = (basis[a] * rho).trace().real();
  return v;
}

}  // namespace gstd
