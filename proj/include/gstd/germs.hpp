#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gstd/circuit.hpp"
#include "gstd/gateset.hpp"

namespace gstd {

inline constexpr double kIdealDegeneracyTol = 1e-7;
inline constexpr double kPerturbedDegeneracyTol = 1e-10;

struct KiteBlock {
  int start = 0;
  int size = 0;
};

struct KiteStructure {
  std::vector<Complex> eigenvalues;  // one representative per block
  std::vector<KiteBlock> blocks;
  ComplexMatrix basis;          // columns span the generalized eigenspaces, block by block
  ComplexMatrix basis_inverse;
  int kite_params = 0;          // sum of size^2
  int dim() const { return static_cast<int>(basis.rows()); }
};

/// Clusters eigenvalues within `degeneracy_tol` (relative to max(1, spectral radius)) and
/// builds a basis of each generalized eigenspace as the null space of (A - mu I)^k.
KiteStructure kite_structure(const Matrix& op, double degeneracy_tol = kIdealDegeneracyTol);

/// S (mask o S^-1 D S) S^-1, real part.
Matrix twirl_project(const Matrix& slice, const KiteStructure& kite);

/// (1/p) sum_{i<p} A^i D A^-i.
Matrix finite_twirl(const Matrix& op, const Matrix& slice, int p);

/// Real orthonormal basis of the commutant (columns are column-major vec of d^2 x d^2 matrices).
Matrix commutant_basis(const KiteStructure& kite);

/// Matricized twirl of d(germ superop)/d theta: d^4 x N_p; non-gate columns are zero.
Matrix twirled_jacobian(const GateSet& gs, const Circuit& germ, double degeneracy_tol);

/// Row-stacks twirled_jacobian over the germs for one model.
Matrix germset_jacobian(const GateSet& gs, const std::vector<Circuit>& germs, double degeneracy_tol);

/// Gate parameter count minus the rank of the gauge tangent restricted to gate coordinates.
int amplifiable_count(const GateSet& gs);

/// Aperiodic necklace representatives (Lyndon words) over sorted labels, lengths 1..max_len.
std::vector<Circuit> germ_candidates(const std::vector<std::string>& labels, int max_len);

enum class GermMode { Robust, Standard, Bare };
enum class GermScore { Sum, Worst };

GermMode parse_germ_mode(const std::string& s);
GermScore parse_germ_score(const std::string& s);

struct GermSelectionOptions {
  GermMode mode = GermMode::Robust;
  GermScore score = GermScore::Sum;
  int num_perturbed = 5;
  double perturbation = 1e-3;
  std::uint64_t seed = 0;
  int max_germ_length = 6;
  // Optional regularizers added to the inverse-eigenvalue score. Off by default.
  double length_penalty = 0.0;
  double count_penalty = 0.0;
  bool pretest = true;
};

struct GermIteration {
  std::string added;
  int amplified = 0;  // worst over models
  double score = 0.0;
};

struct GermSelectionResult {
  std::vector<Circuit> germs;
  std::vector<int> target_per_model;
  std::vector<int> rank_per_model;
  std::vector<GermIteration> trajectory;
};

/// A model plus the eigenvalue clustering tolerance used for its germs.
struct GermModel {
  GateSet gs;
  double degeneracy_tol = kIdealDegeneracyTol;
};

/// Models used for a mode: the target only, or the target plus perturbed copies.
std::vector<GermModel> germ_selection_models(const GateSet& target, const GermSelectionOptions& opt);

/// Greedy germ selection. Throws NotAmplificationallyComplete when the pool cannot reach the
/// amplifiable target for some model.
GermSelectionResult select_germs(const std::vector<GermModel>& models, const std::vector<Circuit>& candidates,
                                 const GermSelectionOptions& opt);

/// Convenience wrapper dispatching on opt.mode (bare returns the gate labels).
GermSelectionResult select_germs(const GateSet& target, const GermSelectionOptions& opt);

/// Rank of the twirled Jacobian of `germs` over gate coordinates.
int amplified_rank(const GateSet& gs, const std::vector<Circuit>& germs, double degeneracy_tol);

}  // namespace gstd
