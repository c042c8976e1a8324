#pragma once

#include <string>
#include <vector>

#include "gstd/circuit.hpp"
#include "gstd/gateset.hpp"

namespace gstd {

/// Ideal single-qubit model: Gi, Gx = X(pi/2), Gy = Y(pi/2); prep |0>, Z-basis measurement.
GateSet xyi_model();

/// Ideal two-qubit model: Gxi, Gix, Gyi, Giy (pi/2 rotations) and Gcphase; prep |00>, Z-basis measurement.
GateSet xycphase_model();

/// Model by name: "xyi" or "xycphase".
GateSet builtin_model(const std::string& name);

/// {}, Gx, Gy, GxGx, GxGxGx, GyGyGy.
std::vector<Circuit> standard_fiducials_xyi();

/// Products of {}, X, Y, XX on each qubit (16 circuits).
std::vector<Circuit> standard_fiducials_xycphase();

/// Bare germ list: every gate label once.
std::vector<Circuit> bare_germs(const GateSet& gs);

/// Prep |0...0> and computational-basis effects for n qubits.
Vector zero_state(int nqubits);
std::vector<Vector> computational_effects(int nqubits);

}  // namespace gstd
