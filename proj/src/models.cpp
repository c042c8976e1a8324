#include "gstd/models.hpp"

#include <cmath>

#include "gstd/error.hpp"
#include "gstd/pauli.hpp"

namespace gstd {

Vector zero_state(int nqubits) {
  const int d = 1 << nqubits;
  ComplexMatrix rho = ComplexMatrix::Zero(d, d);
  rho(0, 0) = 1.0;
  return state_to_pauli(rho);
}

std::vector<Vector> computational_effects(int nqubits) {
  const int d = 1 << nqubits;
  std::vector<Vector> out;
  for (int k = 0; k < d; ++k) {
    ComplexMatrix proj = ComplexMatrix::Zero(d, d);
    proj(k, k) = 1.0;
    out.push_back(state_to_pauli(proj));
  }
  return out;
}

GateSet xyi_model() {
  GateSet gs;
  gs.dim = 4;
  gs.gates["Gi"] = Matrix::Identity(4, 4);
  gs.gates["Gx"] = ptm_from_unitary(pauli_rotation(1, 1, M_PI / 2));
  gs.gates["Gy"] = ptm_from_unitary(pauli_rotation(1, 2, M_PI / 2));
  gs.prep = zero_state(1);
  gs.effects = computational_effects(1);
  return gs;
}

GateSet xycphase_model() {
  GateSet gs;
  gs.dim = 16;
  // Pauli index digits: qubit 0 is the high base-4 digit.
  gs.gates["Gxi"] = ptm_from_unitary(pauli_rotation(2, 1 * 4 + 0, M_PI / 2));
  gs.gates["Gix"] = ptm_from_unitary(pauli_rotation(2, 0 * 4 + 1, M_PI / 2));
  gs.gates["Gyi"] = ptm_from_unitary(pauli_rotation(2, 2 * 4 + 0, M_PI / 2));
  gs.gates["Giy"] = ptm_from_unitary(pauli_rotation(2, 0 * 4 + 2, M_PI / 2));
  ComplexMatrix cz = ComplexMatrix::Identity(4, 4);
  cz(3, 3) = -1.0;
  gs.gates["Gcphase"] = ptm_from_unitary(cz);
  gs.prep = zero_state(2);
  gs.effects = computational_effects(2);
  return gs;
}

GateSet builtin_model(const std::string& name) {
  if (name == "xyi") return xyi_model();
  if (name == "xycphase") return xycphase_model();
  throw Error(ErrorKind::InvalidArgument, "unknown built-in model '" + name + "'");
}

std::vector<Circuit> standard_fiducials_xyi() {
  return {Circuit{}, Circuit{"Gx"}, Circuit{"Gy"}, Circuit{"Gx", "Gx"}, Circuit{"Gx", "Gx", "Gx"},
          Circuit{"Gy", "Gy", "Gy"}};
}

std::vector<Circuit> standard_fiducials_xycphase() {
  const std::vector<std::vector<std::string>> local = {{}, {"x"}, {"y"}, {"x", "x"}};
  std::vector<Circuit> out;
  for (const auto& a : local) {
    for (const auto& b : local) {
      Circuit c;
      for (const auto& s : a) c.labels.push_back(s == "x" ? "Gxi" : "Gyi");
      for (const auto& s : b) c.labels.push_back(s == "x" ? "Gix" : "Giy");
      out.push_back(c);
    }
  }
  return out;
}

std::vector<Circuit> bare_germs(const GateSet& gs) {
  std::vector<Circuit> out;
  for (const auto& kv : gs.gates) out.push_back(Circuit{kv.first});
  return out;
}

}  // namespace gstd
