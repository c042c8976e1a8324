#pragma once

#include <limits>
#include <vector>

#include "gstd/circuit.hpp"
#include "gstd/gateset.hpp"

namespace gstd {

enum class FiducialKind { Prep, Meas };

/// G_ij = <<a_i|a_j>>.
Matrix gram_matrix(const std::vector<Vector>& vectors);

struct FiducialScore {
  int rank = 0;
  int required = 0;
  /// Smallest eigenvalue above the zero tolerance, or -infinity while rank < required.
  double score = -std::numeric_limits<double>::infinity();
  Vector spectrum;  // ascending nonzero-capable spectrum of the frame operator
  bool complete() const { return rank >= required; }
};

/// Preps need rank d^2. Measurements need d^2 - 1 after dropping the trace component of the
/// effective effects (total probability is fixed).
FiducialScore fiducial_score(const GateSet& gs, const std::vector<Circuit>& fids, FiducialKind kind);

/// Every label sequence of depth 0..max_depth, ordered by depth then lexicographically.
std::vector<Circuit> fiducial_candidates(const GateSet& gs, int max_depth);

/// Greedy add-one selection. Stops once the rank requirement holds and no candidate raises
/// the score by more than a relative 1e-9. Throws NotInformationallyComplete if the pool cannot.
std::vector<Circuit> select_fiducials(const GateSet& gs, const std::vector<Circuit>& pool, FiducialKind kind);

}  // namespace gstd
