#pragma once

#include <string>
#include <vector>

#include "gstd/linalg.hpp"

namespace gstd {

/// Unnormalized Pauli string on n qubits; `index` digits in base 4 (I,X,Y,Z), qubit 0 most significant.
ComplexMatrix pauli_string(int nqubits, int index);

/// Basis B_a = P_a / sqrt(d), a = 0..d^2-1.
std::vector<ComplexMatrix> pauli_basis(int nqubits);

/// Name such as "IX" for the index used by pauli_string.
std::string pauli_name(int nqubits, int index);

/// Number of qubits for a superoperator dimension d^2 (4 -> 1, 16 -> 2). Throws otherwise.
int qubits_for_dim(int superop_dim);

/// PTM R_ab = Tr(B_a U B_b U^dagger).
Matrix ptm_from_unitary(const ComplexMatrix& u);

/// exp(-i theta/2 P) for an unnormalized Pauli string.
ComplexMatrix pauli_rotation(int nqubits, int index, double theta);

/// PTM generators of rho -> -i[P_a, rho] for every non-identity Pauli string (d^2 - 1 of them).
std::vector<Matrix> hamiltonian_generators(int nqubits);

/// diag(1, 1-eta, ..., 1-eta).
Matrix depolarizing_ptm(int superop_dim, double eta);

/// Vectorized density matrix in the normalized Pauli basis.
Vector state_to_pauli(const ComplexMatrix& rho);

}  // namespace gstd
