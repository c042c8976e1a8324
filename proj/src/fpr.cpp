#include "gstd/fpr.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "gstd/error.hpp"
#include "gstd/parallel.hpp"
#include "gstd/probabilities.hpp"

namespace gstd {

std::vector<FidPair> all_pairs(int n_prep, int n_meas) {
  std::vector<FidPair> out;
  out.reserve(static_cast<std::size_t>(n_prep) * n_meas);
  for (int j = 0; j < n_prep; ++j) {
    for (int i = 0; i < n_meas; ++i) out.push_back({j, i});
  }
  return out;
}

int keep_count(double gamma, int n_pairs, bool ceil_mode) {
  if (!(gamma > 0.0 && gamma <= 1.0)) throw Error(ErrorKind::InvalidArgument, "retention fraction must lie in (0, 1]");
  if (n_pairs < 1) throw Error(ErrorKind::InvalidArgument, "no fiducial pairs to retain");
  // Guard against gamma*n landing a hair under an integer.
  const double x = gamma * n_pairs;
  const long long k = ceil_mode ? static_cast<long long>(std::ceil(x - 1e-9)) : static_cast<long long>(std::floor(x + 1e-9));
  return static_cast<int>(std::clamp<long long>(k, 1, n_pairs));
}

std::vector<FidPair> random_plaquette_pairs(int n_prep, int n_meas, double gamma, std::uint64_t seed, int germ,
                                            int depth_index, bool ceil_mode) {
  std::vector<FidPair> pool = all_pairs(n_prep, n_meas);
  const int keep = keep_count(gamma, static_cast<int>(pool.size()), ceil_mode);
  std::seed_seq sseq{static_cast<std::uint32_t>(seed & 0xffffffffu), static_cast<std::uint32_t>(seed >> 32),
                     static_cast<std::uint32_t>(germ), static_cast<std::uint32_t>(depth_index)};
  std::mt19937_64 rng(sseq);
  // partial Fisher-Yates
  for (int i = 0; i < keep; ++i) {
    std::uniform_int_distribution<int> pick(i, static_cast<int>(pool.size()) - 1);
    std::swap(pool[i], pool[pick(rng)]);
  }
  pool.resize(keep);
  std::sort(pool.begin(), pool.end());
  return pool;
}

PlaquettePairs random_fpr(int n_prep, int n_meas, const std::vector<Circuit>& germs, const DepthSchedule& schedule,
                          double gamma, std::uint64_t seed, bool ceil_mode) {
  schedule.validate();
  PlaquettePairs out;
  for (int k = 0; k < static_cast<int>(germs.size()); ++k) {
    for (int l = 0; l < schedule.size(); ++l) {
      if (germ_power(germs[k], schedule.maxdepths[l]) < 1) continue;
      out[{k, l}] = random_plaquette_pairs(n_prep, n_meas, gamma, seed, k, l, ceil_mode);
    }
  }
  return out;
}

Matrix kite_param_jacobian(const GateSet& gs, const Circuit& germ, const std::vector<Circuit>& prep_fids,
                           const std::vector<Circuit>& meas_fids, const std::vector<FidPair>& pairs,
                           double degeneracy_tol) {
  if (pairs.empty()) throw Error(ErrorKind::InvalidArgument, "fiducial pair list is empty");
  gs.check_circuit(germ);
  const KiteStructure kite = kite_structure(circuit_superop(gs, germ), degeneracy_tol);
  const Matrix basis = commutant_basis(kite);
  const auto states = effective_fiducial_states(gs, prep_fids);
  const auto effects = effective_fiducial_effects(gs, meas_fids);
  const int m = gs.num_outcomes();
  const int n = gs.dim;
  Matrix out(static_cast<int>(pairs.size()) * m, basis.cols());
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    const auto& fp = pairs[p];
    if (fp.prep < 0 || fp.prep >= static_cast<int>(states.size()) || fp.meas < 0 ||
        fp.meas >= static_cast<int>(meas_fids.size())) {
      throw Error(ErrorKind::InvalidArgument, "fiducial pair index out of range");
    }
    for (int e = 0; e < m; ++e) {
      const Matrix outer = effects[fp.meas * m + e] * states[fp.prep].transpose();
      const Eigen::Map<const Vector> v(outer.data(), n * n);
      out.row(static_cast<int>(p) * m + e) = v.transpose() * basis;
    }
  }
  return out;
}

double pair_set_lambda(const Matrix& full_jacobian, int outcomes, const std::vector<FidPair>& all,
                       const std::vector<FidPair>& pairs, int k) {
  Matrix sub(static_cast<int>(pairs.size()) * outcomes, full_jacobian.cols());
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    const auto it = std::lower_bound(all.begin(), all.end(), pairs[p]);
    const int row = static_cast<int>(it - all.begin()) * outcomes;
    sub.middleRows(static_cast<int>(p) * outcomes, outcomes) = full_jacobian.middleRows(row, outcomes);
  }
  const Vector ev = symmetric_eigenvalues(sub.transpose() * sub);
  if (k < 1 || k > ev.size()) return 0.0;
  return ev(ev.size() - k);
}

PerGermFprResult per_germ_fpr(const GateSet& gs, const std::vector<Circuit>& prep_fids,
                              const std::vector<Circuit>& meas_fids, const std::vector<Circuit>& germs,
                              const PerGermFprOptions& opt) {
  if (!(opt.eps > 0.0 && opt.eps <= 1.0)) throw Error(ErrorKind::InvalidArgument, "eps must lie in (0, 1]");
  if (prep_fids.empty() || meas_fids.empty()) throw Error(ErrorKind::InvalidArgument, "fiducial lists are empty");
  const std::vector<FidPair> all = all_pairs(static_cast<int>(prep_fids.size()), static_cast<int>(meas_fids.size()));
  const int npairs = static_cast<int>(all.size());
  const int m = gs.num_outcomes();
  PerGermFprResult res;
  res.eps = opt.eps;
  res.germs.resize(germs.size());
  parallel_for(germs.size(), [&](std::size_t g) {
    const Matrix jac = kite_param_jacobian(gs, germs[g], prep_fids, meas_fids, all, opt.degeneracy_tol);
    const Vector ev = symmetric_eigenvalues(jac.transpose() * jac);
    const int k = psd_rank(jac.transpose() * jac);
    GermPairs out;
    out.baseline_rank = k;
    out.baseline_lambda = k > 0 ? ev(ev.size() - k) : 0.0;
    const double need = opt.eps * out.baseline_lambda;

    std::seed_seq sseq{static_cast<std::uint32_t>(opt.seed & 0xffffffffu), static_cast<std::uint32_t>(opt.seed >> 32),
                       static_cast<std::uint32_t>(g)};
    std::mt19937_64 rng(sseq);
    std::vector<int> idx(npairs);
    bool found = false;
    const int start = std::max(1, (k + m - 1) / m);
    for (int size = start; size < npairs && !found; ++size) {
      for (int trial = 0; trial < opt.sets_per_size; ++trial) {
        std::iota(idx.begin(), idx.end(), 0);
        for (int i = 0; i < size; ++i) {
          std::uniform_int_distribution<int> pick(i, npairs - 1);
          std::swap(idx[i], idx[pick(rng)]);
        }
        std::vector<FidPair> test;
        for (int i = 0; i < size; ++i) test.push_back(all[idx[i]]);
        std::sort(test.begin(), test.end());
        const double lam = pair_set_lambda(jac, m, all, test, k);
        if (lam >= need && k > 0) {
          out.pairs = test;
          out.ratio = lam / out.baseline_lambda;
          found = true;
          break;
        }
      }
    }
    if (!found) {
      out.pairs = all;
      out.ratio = 1.0;
      out.full_grid_fallback = true;
    }
    res.germs[g] = std::move(out);
  });
  return res;
}

}  // namespace gstd
