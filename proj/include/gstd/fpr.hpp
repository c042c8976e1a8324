#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "gstd/circuit.hpp"
#include "gstd/gateset.hpp"
#include "gstd/germs.hpp"
#include "gstd/schedule.hpp"

namespace gstd {

/// (prep fiducial index j, measurement fiducial index i).
struct FidPair {
  int prep = 0;
  int meas = 0;
  auto operator<=>(const FidPair&) const = default;
};

/// Full grid in prep-major order.
std::vector<FidPair> all_pairs(int n_prep, int n_meas);

/// max(1, floor(gamma * n)), or max(1, ceil(gamma * n)) with ceil_mode.
int keep_count(double gamma, int n_pairs, bool ceil_mode = false);

/// Pairs kept by one plaquette. The stream depends only on (seed, germ, depth_index),
/// so designs at larger maximum depth keep the same choices for shared plaquettes.
std::vector<FidPair> random_plaquette_pairs(int n_prep, int n_meas, double gamma, std::uint64_t seed, int germ,
                                            int depth_index, bool ceil_mode = false);

/// Keyed by (germ index, depth index); only plaquettes with power >= 1.
using PlaquettePairs = std::map<std::pair<int, int>, std::vector<FidPair>>;
PlaquettePairs random_fpr(int n_prep, int n_meas, const std::vector<Circuit>& germs, const DepthSchedule& schedule,
                          double gamma, std::uint64_t seed, bool ceil_mode = false);

/// Rows: for each pair, one per outcome e: d <<E_e| H_i g(theta_K) F_j |rho>> / d theta_K.
/// Columns: real orthonormal coordinates of the germ's commutant (kite block entries).
Matrix kite_param_jacobian(const GateSet& gs, const Circuit& germ, const std::vector<Circuit>& prep_fids,
                           const std::vector<Circuit>& meas_fids, const std::vector<FidPair>& pairs,
                           double degeneracy_tol = kIdealDegeneracyTol);

struct PerGermFprOptions {
  double eps = 1.0 / 30.0;
  int sets_per_size = 100;
  std::uint64_t seed = 0;
  double degeneracy_tol = kIdealDegeneracyTol;
};

struct GermPairs {
  std::vector<FidPair> pairs;
  double ratio = 0.0;         // lambda_k(test) / lambda_k(full grid)
  int baseline_rank = 0;
  double baseline_lambda = 0.0;
  bool full_grid_fallback = false;
};

struct PerGermFprResult {
  double eps = 0.0;
  std::vector<GermPairs> germs;
};

PerGermFprResult per_germ_fpr(const GateSet& gs, const std::vector<Circuit>& prep_fids,
                              const std::vector<Circuit>& meas_fids, const std::vector<Circuit>& germs,
                              const PerGermFprOptions& opt);

/// k-th largest eigenvalue of the Gram of the kite Jacobian rows belonging to `pairs`.
double pair_set_lambda(const Matrix& full_jacobian, int outcomes, const std::vector<FidPair>& all,
                       const std::vector<FidPair>& pairs, int k);

}  // namespace gstd
