#include "gstd/noise.hpp"

#include <cmath>
#include <json.hpp>
#include <random>
#include <unsupported/Eigen/MatrixFunctions>

#include "gstd/error.hpp"
#include "gstd/parallel.hpp"
#include "gstd/pauli.hpp"
#include "gstd/probabilities.hpp"

namespace gstd {

using nlohmann::json;

namespace {

constexpr double kClip = 1e-10;

}  // namespace

void NoiseSpec::validate() const {
  if (!(sigma >= 0.0)) throw Error(ErrorKind::InvalidArgument, "sigma must be nonnegative");
  if (!(eta >= 0.0 && eta < 1.0)) throw Error(ErrorKind::InvalidArgument, "eta must lie in [0, 1)");
}

GateSet sample_noisy_gateset(const GateSet& target, const NoiseSpec& spec) {
  spec.validate();
  const auto gens = hamiltonian_generators(target.num_qubits());
  std::mt19937_64 rng(spec.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const Matrix depol = spec.kind == NoiseKind::CoherentDepolarizing ? depolarizing_ptm(target.dim, spec.eta)
                                                                     : Matrix::Identity(target.dim, target.dim);
  GateSet out = target;
  for (auto& kv : out.gates) {
    Matrix gen = Matrix::Zero(target.dim, target.dim);
    for (const auto& h : gens) gen += (spec.sigma * normal(rng)) * h;
    if (spec.sigma == 0.0 && (spec.kind == NoiseKind::CoherentOnly || spec.eta == 0.0)) continue;
    kv.second = depol * gen.exp() * kv.second;
    // The generators leave the first row alone in exact arithmetic.
    kv.second.row(0).setZero();
    kv.second(0, 0) = 1.0;
  }
  return out;
}

GateSet unitary_perturbation(const GateSet& target, double sigma, std::uint64_t seed) {
  NoiseSpec spec;
  spec.kind = NoiseKind::CoherentOnly;
  spec.sigma = sigma;
  spec.seed = seed;
  return sample_noisy_gateset(target, spec);
}

GateSet depolarize_spam(const GateSet& gs, double eta) {
  GateSet out = gs;
  out.prep.tail(gs.dim - 1) *= (1.0 - eta);
  for (auto& e : out.effects) e.tail(gs.dim - 1) *= (1.0 - eta);
  return out;
}

Dataset simulate_dataset(const GateSet& gs, const std::vector<Circuit>& circuits, std::int64_t shots,
                         std::uint64_t seed) {
  if (shots < 0) throw Error(ErrorKind::InvalidArgument, "shot count must be nonnegative");
  Dataset ds;
  ds.circuits = circuits;
  ds.shots = shots;
  ds.outcomes = gs.num_outcomes();
  ds.counts.assign(circuits.size(), std::vector<std::int64_t>(gs.num_outcomes(), 0));
  for (const auto& c : circuits) gs.check_circuit(c);
  parallel_for(circuits.size(), [&](std::size_t i) {
    Vector p = circuit_probabilities(gs, circuits[i]);
    for (int j = 0; j < p.size(); ++j) {
      if (p(j) < -1e-9) {
        throw Error(ErrorKind::Numerical, "negative probability for circuit '" + circuits[i].str() + "'");
      }
      p(j) = std::max(p(j), 0.0);
    }
    std::seed_seq sseq{static_cast<std::uint32_t>(seed & 0xffffffffu), static_cast<std::uint32_t>(seed >> 32),
                       static_cast<std::uint32_t>(i & 0xffffffffu), static_cast<std::uint32_t>(i >> 32)};
    std::mt19937_64 rng(sseq);
    std::int64_t remaining = shots;
    double mass = p.sum();
    auto& out = ds.counts[i];
    for (int j = 0; j + 1 < p.size() && remaining > 0; ++j) {
      const double q = mass > 0.0 ? std::clamp(p(j) / mass, 0.0, 1.0) : 0.0;
      std::binomial_distribution<std::int64_t> binom(remaining, q);
      const std::int64_t k = binom(rng);
      out[j] = k;
      remaining -= k;
      mass -= p(j);
    }
    out[p.size() - 1] += remaining;
  });
  return ds;
}

double log_likelihood(const GateSet& gs, const Dataset& data) {
  double total = 0.0;
  for (std::size_t c = 0; c < data.circuits.size(); ++c) {
    const Vector p = circuit_probabilities(gs, data.circuits[c]);
    const auto& n = data.counts[c];
    if (static_cast<int>(n.size()) != p.size()) {
      throw Error(ErrorKind::DimensionMismatch, "dataset outcome count does not match gate set");
    }
    std::int64_t nc = 0;
    double term = 0.0;
    for (int j = 0; j < p.size(); ++j) {
      nc += n[j];
      term -= std::lgamma(static_cast<double>(n[j]) + 1.0);
      if (n[j] > 0) term += static_cast<double>(n[j]) * std::log(std::clamp(p(j), kClip, 1.0));
    }
    term += std::lgamma(static_cast<double>(nc) + 1.0);
    total += term;
  }
  return total;
}

std::string dataset_to_json(const Dataset& ds) {
  json j;
  j["shots"] = ds.shots;
  j["outcomes"] = ds.outcomes;
  json rows = json::array();
  for (std::size_t i = 0; i < ds.circuits.size(); ++i) {
    rows.push_back({{"circuit", ds.circuits[i].str()}, {"counts", ds.counts[i]}});
  }
  j["data"] = rows;
  return j.dump(1);
}

Dataset dataset_from_json(const std::string& text) {
  try {
    const json j = json::parse(text);
    Dataset ds;
    ds.shots = j.at("shots").get<std::int64_t>();
    ds.outcomes = j.at("outcomes").get<int>();
    for (const auto& row : j.at("data")) {
      ds.circuits.push_back(Circuit::parse(row.at("circuit").get<std::string>()));
      ds.counts.push_back(row.at("counts").get<std::vector<std::int64_t>>());
    }
    return ds;
  } catch (const json::exception& ex) {
    throw Error(ErrorKind::InvalidFile, std::string("dataset JSON is malformed: ") + ex.what());
  }
}

}  // namespace gstd
