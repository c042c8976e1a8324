#include "gstd/fiducials.hpp"

#include <algorithm>

#include "gstd/error.hpp"
#include "gstd/probabilities.hpp"

namespace gstd {

namespace {

constexpr double kImproveTol = 1e-9;

std::vector<Vector> frame_vectors(const GateSet& gs, const std::vector<Circuit>& fids, FiducialKind kind) {
  if (kind == FiducialKind::Prep) return effective_fiducial_states(gs, fids);
  std::vector<Vector> out;
  for (const auto& e : effective_fiducial_effects(gs, fids)) out.push_back(e.tail(gs.dim - 1));
  return out;
}

FiducialScore score_frame(const Matrix& frame, int required) {
  FiducialScore s;
  s.required = required;
  s.spectrum = symmetric_eigenvalues(frame);
  const double top = s.spectrum.size() ? s.spectrum.maxCoeff() : 0.0;
  if (top <= 0.0) return s;
  const double cut = kRankTolerance * top;
  s.rank = static_cast<int>((s.spectrum.array() > cut).count());
  if (s.rank >= required) {
    for (int i = 0; i < s.spectrum.size(); ++i) {
      if (s.spectrum(i) > cut) {
        s.score = s.spectrum(i);
        break;
      }
    }
  }
  return s;
}

Matrix frame_of(const std::vector<Vector>& vs, int dim) {
  Matrix f = Matrix::Zero(dim, dim);
  for (const auto& v : vs) f.noalias() += v * v.transpose();
  return f;
}

}  // namespace

Matrix gram_matrix(const std::vector<Vector>& vectors) {
  if (vectors.empty()) throw Error(ErrorKind::InvalidArgument, "gram matrix of an empty set");
  const int n = static_cast<int>(vectors.size());
  const auto dim = vectors[0].size();
  Matrix g(n, n);
  for (int i = 0; i < n; ++i) {
    if (vectors[i].size() != dim) throw Error(ErrorKind::DimensionMismatch, "vectors differ in length");
    for (int j = 0; j <= i; ++j) g(i, j) = g(j, i) = vectors[i].dot(vectors[j]);
  }
  return g;
}

FiducialScore fiducial_score(const GateSet& gs, const std::vector<Circuit>& fids, FiducialKind kind) {
  const int dim = kind == FiducialKind::Prep ? gs.dim : gs.dim - 1;
  if (fids.empty()) {
    FiducialScore s;
    s.required = dim;
    s.spectrum = Vector::Zero(dim);
    return s;
  }
  // The frame operator sum v v^T has the same nonzero spectrum as the Gram matrix.
  return score_frame(frame_of(frame_vectors(gs, fids, kind), dim), dim);
}

std::vector<Circuit> fiducial_candidates(const GateSet& gs, int max_depth) {
  const auto labels = gs.labels();
  std::vector<Circuit> out{Circuit{}};
  std::vector<Circuit> layer{Circuit{}};
  for (int depth = 1; depth <= max_depth; ++depth) {
    std::vector<Circuit> next;
    for (const auto& c : layer) {
      for (const auto& l : labels) next.push_back(c + Circuit{l});
    }
    std::sort(next.begin(), next.end());
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

std::vector<Circuit> select_fiducials(const GateSet& gs, const std::vector<Circuit>& pool_in, FiducialKind kind) {
  if (pool_in.empty()) throw Error(ErrorKind::InvalidArgument, "fiducial pool is empty");
  // Tie-break order: fewer gates, then label order.
  std::vector<Circuit> pool = pool_in;
  std::stable_sort(pool.begin(), pool.end(), [](const Circuit& a, const Circuit& b) {
    if (a.depth() != b.depth()) return a.depth() < b.depth();
    return a.labels < b.labels;
  });
  pool.erase(std::unique(pool.begin(), pool.end()), pool.end());

  const FiducialScore whole = fiducial_score(gs, pool, kind);
  if (!whole.complete()) {
    throw Error(ErrorKind::NotInformationallyComplete,
                std::string(kind == FiducialKind::Prep ? "prep" : "measurement") + " fiducial pool reaches rank " +
                    std::to_string(whole.rank) + " of " + std::to_string(whole.required));
  }

  const int dim = kind == FiducialKind::Prep ? gs.dim : gs.dim - 1;
  std::vector<std::vector<Vector>> vecs;
  for (const auto& c : pool) vecs.push_back(frame_vectors(gs, {c}, kind));

  std::vector<Circuit> chosen;
  std::vector<bool> used(pool.size(), false);
  Matrix frame = Matrix::Zero(dim, dim);
  FiducialScore current = score_frame(frame, dim);
  for (;;) {
    int best = -1;
    FiducialScore best_score;
    for (std::size_t i = 0; i < pool.size(); ++i) {
      if (used[i]) continue;
      const FiducialScore s = score_frame(frame + frame_of(vecs[i], dim), dim);
      bool better;
      if (best < 0) {
        better = true;
      } else if (s.rank != best_score.rank) {
        better = s.rank > best_score.rank;
      } else if (s.complete()) {
        better = s.score > best_score.score * (1.0 + kImproveTol);
      } else {
        // Before the rank is met, prefer the larger smallest-nonzero eigenvalue.
        auto lowest = [](const FiducialScore& f) {
          const double top = f.spectrum.maxCoeff();
          for (int k = 0; k < f.spectrum.size(); ++k) {
            if (f.spectrum(k) > kRankTolerance * top) return f.spectrum(k);
          }
          return 0.0;
        };
        better = lowest(s) > lowest(best_score) * (1.0 + kImproveTol);
      }
      if (better) {
        best = static_cast<int>(i);
        best_score = s;
      }
    }
    if (best < 0) break;
    if (current.complete()) {
      const bool improves = best_score.score > current.score * (1.0 + kImproveTol);
      if (!improves) break;
    }
    used[best] = true;
    chosen.push_back(pool[best]);
    frame += frame_of(vecs[best], dim);
    current = score_frame(frame, dim);
  }
  return chosen;
}

}  // namespace gstd
