#pragma once

#include <vector>

#include "gstd/circuit.hpp"
#include "gstd/gateset.hpp"

namespace gstd {

/// Product G_{k_n} ... G_{k_1} for the circuit's labels (first label acts first).
Matrix circuit_superop(const GateSet& gs, const Circuit& c);

/// p_j = <<E_j| G_{k_n} ... G_{k_1} |rho>>.
Vector circuit_probabilities(const GateSet& gs, const Circuit& c);

/// F_j |rho>> for every prep fiducial.
std::vector<Vector> effective_fiducial_states(const GateSet& gs, const std::vector<Circuit>& fids);

/// <<E_e| H_f for fiducial f = i / m and effect e = i mod m (grouped by fiducial).
std::vector<Vector> effective_fiducial_effects(const GateSet& gs, const std::vector<Circuit>& fids);

/// d p_j / d theta, shape m x N_p.
Matrix probability_jacobian(const GateSet& gs, const Circuit& c);

/// Second derivatives, one N_p x N_p matrix per outcome.
std::vector<Matrix> probability_hessian(const GateSet& gs, const Circuit& c);

}  // namespace gstd
