#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gstd/circuit.hpp"
#include "gstd/gateset.hpp"

namespace gstd {

enum class NoiseKind { CoherentOnly, CoherentDepolarizing };

struct NoiseSpec {
  NoiseKind kind = NoiseKind::CoherentDepolarizing;
  double sigma = 0.0;  // std dev of each Hamiltonian generator weight
  double eta = 0.0;    // depolarization rate per gate
  std::uint64_t seed = 0;

  void validate() const;
};

/// Each gate G -> D_eta exp(sum_a h_a H_a) G with h_a ~ N(0, sigma); SPAM unchanged.
GateSet sample_noisy_gateset(const GateSet& target, const NoiseSpec& spec);

/// Coherent-only perturbation (used for robust germ selection and certification points).
GateSet unitary_perturbation(const GateSet& target, double sigma, std::uint64_t seed);

/// Shrinks the Bloch part of the prep and of every effect by (1 - eta).
/// Keeps the TP constraints. Moves the evaluation point away from zero probabilities.
GateSet depolarize_spam(const GateSet& gs, double eta);

struct Dataset {
  std::vector<Circuit> circuits;
  std::vector<std::vector<std::int64_t>> counts;
  std::int64_t shots = 0;
  int outcomes = 0;
};

/// Multinomial(N_c, p_c) per circuit; circuit i uses its own RNG stream from (seed, i).
Dataset simulate_dataset(const GateSet& gs, const std::vector<Circuit>& circuits, std::int64_t shots,
                         std::uint64_t seed);

/// Sum over circuits of log multinomial pmf, probabilities clipped to [1e-10, 1].
double log_likelihood(const GateSet& gs, const Dataset& data);

std::string dataset_to_json(const Dataset& ds);
Dataset dataset_from_json(const std::string& text);

}  // namespace gstd
