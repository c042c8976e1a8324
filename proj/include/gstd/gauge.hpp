#pragma once

#include "gstd/gateset.hpp"

namespace gstd {

struct GaugeTangent {
  Matrix basis;  // N_p x (d^4 - d^2), one column per TP generator
  int rank = 0;
};

/// Parameter-space image of G -> KG - GK, rho -> K rho, E -> -E K for K = e_a e_b^T, a >= 1.
GaugeTangent gauge_tangent(const GateSet& gs);

/// N_p minus the gauge tangent rank.
int non_gauge_count(const GateSet& gs);

/// Orthonormal basis of the complement of the gauge span in parameter space.
Matrix non_gauge_basis(const GateSet& gs);

/// G -> M G M^-1, rho -> M rho, E -> E M^-1. Throws if cond(M) >= 1e8.
GateSet apply_gauge_transform(const GateSet& gs, const Matrix& m);

}  // namespace gstd
