#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gstd/circuit.hpp"
#include "gstd/design.hpp"
#include "gstd/gateset.hpp"

namespace gstd {

inline constexpr double kProbabilityClip = 1e-10;

/// N_c sum_i (1/p_i) grad p_i grad p_i^T, with p_i clipped to [1e-10, 1].
Matrix circuit_fim(const GateSet& gs, const Circuit& c, double shots);

/// N_c sum_i [(1/p_i) grad p_i grad p_i^T - H_i]. Equal to circuit_fim for TP models.
Matrix circuit_fim_with_hessian(const GateSet& gs, const Circuit& c, double shots);

/// Sum of circuit_fim over a list (deterministic parallel reduction).
Matrix fim_sum(const GateSet& gs, const std::vector<Circuit>& circuits, double shots);

/// One FIM per depth bucket: circuits whose first appearance is at that depth.
std::vector<Matrix> bucket_fims(const GateSet& gs, const ExperimentDesign& design, double shots);

enum class SeriesKind { Cumulative, Incremental, Projected };

struct FisherSeries {
  SeriesKind kind = SeriesKind::Cumulative;
  std::string label;               // projection label for Projected
  std::vector<int> L;
  std::vector<Matrix> matrices;    // full N_p x N_p
  std::vector<Vector> spectra;     // ascending eigenvalues
  int gauge_null = 0;              // dimension of the gauge span at the evaluation point
};

FisherSeries cumulative_series(const GateSet& gs, const ExperimentDesign& design, double shots);
FisherSeries incremental_series(const GateSet& gs, const ExperimentDesign& design, double shots);
/// Incremental series projected onto one operation's parameter block.
FisherSeries projected_series(const GateSet& gs, const ExperimentDesign& design, double shots,
                              const std::string& label, bool cumulative = false);

Matrix design_fim(const GateSet& gs, const ExperimentDesign& design, double shots);

/// Coordinate projection onto a block of `pm` ("prep", "meas" or a gate label).
Matrix projected_fim(const Matrix& fim, const ParameterMap& pm, const std::string& label);

struct CertifyOptions {
  double shots = 1000.0;
  double slope_threshold = 0.8;
  double insensitive_rel = 1e-6;
  int expected_spam = -1;  // < 0: non-gauge count minus amplifiable count of the eval model
};

struct CertifyReport {
  std::vector<int> L;
  int num_params = 0;
  int non_gauge = 0;
  int expected_spam = 0;
  int growing = 0;
  int plateaued = 0;
  int insensitive = 0;
  double min_over_median = 0.0;
  bool well_constructed = false;
  std::vector<double> slopes;                   // one per non-gauge direction, ascending
  std::vector<std::vector<double>> trajectory;  // v^T I(L) v per direction, same order as slopes
  std::vector<Vector> spectra;                  // cumulative, restricted to the non-gauge complement
};

/// Evaluation point for certification: target with a seeded unitary perturbation on every gate
/// plus SPAM depolarized by `spam_depol`.
GateSet certification_point(const GateSet& target, double perturbation, double spam_depol, std::uint64_t seed);

/// Growth classification of cumulative FIM directions over the design's depth schedule.
CertifyReport certify_design(const GateSet& eval, const ExperimentDesign& design, const CertifyOptions& opt);

/// Same classification from precomputed cumulative FIMs.
CertifyReport classify_series(const GateSet& eval, const std::vector<int>& L, const std::vector<Matrix>& cumulative,
                              const CertifyOptions& opt);

/// CSV rows: L,index,value,classification (per classified direction).
std::string spectra_csv(const CertifyReport& report);
std::string series_csv(const FisherSeries& series);

}  // namespace gstd
