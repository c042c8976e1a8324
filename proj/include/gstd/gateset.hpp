#pragma once

#include <map>
#include <string>
#include <vector>

#include "gstd/circuit.hpp"
#include "gstd/linalg.hpp"

namespace gstd {

/// Contiguous slice of the parameter vector owned by one operation.
/// Labels: gate labels, "prep", "meas".
struct ParamBlock {
  std::string label;
  int offset = 0;
  int size = 0;
};

/// One free coordinate. For gates (row, col) of the PTM; for prep (entry, -1);
/// for effects (entry, effect index).
struct ParamCoord {
  std::string op;
  int row = 0;
  int col = 0;
};

struct ParameterMap {
  std::vector<ParamBlock> blocks;
  int size = 0;

  const ParamBlock& block(const std::string& label) const;
  bool has(const std::string& label) const;
  std::vector<ParamCoord> entries() const;
};

/// TP-parameterized gate set in the normalized Pauli basis.
///
/// Free parameters, in order: each gate (sorted label order) rows 1..d^2-1 row-major,
/// then prep entries 1..d^2-1, then effects 0..m-2 in full. The last effect is
/// sqrt(d) e_0 minus the others.
struct GateSet {
  int dim = 0;  // d^2
  std::map<std::string, Matrix> gates;
  Vector prep;
  std::vector<Vector> effects;

  int num_qubits() const;
  int hilbert_dim() const;
  int num_outcomes() const { return static_cast<int>(effects.size()); }
  std::vector<std::string> labels() const;

  const Matrix& gate(const std::string& label) const;
  bool has_gate(const std::string& label) const { return gates.count(label) != 0; }

  ParameterMap param_map() const;
  int num_params() const;
  int num_gate_params() const;

  Vector to_vector() const;
  GateSet from_vector(const Vector& theta) const;

  /// Throws on shape problems or TP violations beyond `tol`.
  void validate(double tol = 1e-12) const;

  /// Throws UnknownLabel if any label of `c` is missing.
  void check_circuit(const Circuit& c) const;
};

/// sqrt(d) e_0 as a covector (sum of all effects of a TP measurement).
Vector trace_covector(int dim);

std::string gateset_to_json(const GateSet& gs);
GateSet gateset_from_json(const std::string& text);
GateSet load_gateset(const std::string& path);
void save_gateset(const GateSet& gs, const std::string& path);

}  // namespace gstd
