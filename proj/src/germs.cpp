#include "gstd/germs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <random>

#include "gstd/error.hpp"
#include "gstd/gauge.hpp"
#include "gstd/models.hpp"
#include "gstd/noise.hpp"
#include "gstd/parallel.hpp"
#include "gstd/probabilities.hpp"

namespace gstd {

namespace {

bool complex_before(const Complex& a, const Complex& b) {
  if (a.real() != b.real()) return a.real() > b.real();
  return a.imag() > b.imag();
}

}  // namespace

KiteStructure kite_structure(const Matrix& op, double degeneracy_tol) {
  if (op.rows() != op.cols()) throw Error(ErrorKind::DimensionMismatch, "kite structure needs a square matrix");
  if (!op.allFinite()) throw Error(ErrorKind::Numerical, "operator has non-finite entries");
  const int n = static_cast<int>(op.rows());
  Eigen::EigenSolver<Matrix> es(op, false);
  if (es.info() != Eigen::Success) throw Error(ErrorKind::Numerical, "eigensolver failed");
  std::vector<Complex> ev(es.eigenvalues().data(), es.eigenvalues().data() + n);
  std::sort(ev.begin(), ev.end(), complex_before);

  double radius = 1.0;
  for (const auto& z : ev) radius = std::max(radius, std::abs(z));
  const double tol = degeneracy_tol * radius;

  // single-linkage clustering
  std::vector<int> cluster(n, -1);
  int nclusters = 0;
  for (int i = 0; i < n; ++i) {
    if (cluster[i] >= 0) continue;
    cluster[i] = nclusters;
    std::vector<int> stack{i};
    while (!stack.empty()) {
      const int a = stack.back();
      stack.pop_back();
      for (int b = 0; b < n; ++b) {
        if (cluster[b] < 0 && std::abs(ev[a] - ev[b]) < tol) {
          cluster[b] = nclusters;
          stack.push_back(b);
        }
      }
    }
    ++nclusters;
  }

  KiteStructure k;
  k.basis = ComplexMatrix(n, n);
  const ComplexMatrix a = op.cast<Complex>();
  int start = 0;
  for (int c = 0; c < nclusters; ++c) {
    Complex mu = 0.0;
    int size = 0;
    for (int i = 0; i < n; ++i) {
      if (cluster[i] == c) {
        mu += ev[i];
        ++size;
      }
    }
    mu /= static_cast<double>(size);
    ComplexMatrix shifted = a - mu * ComplexMatrix::Identity(n, n);
    ComplexMatrix power = ComplexMatrix::Identity(n, n);
    for (int s = 0; s < size; ++s) power = power * shifted;
    Eigen::JacobiSVD<ComplexMatrix> svd(power, Eigen::ComputeFullV);
    k.basis.middleCols(start, size) = svd.matrixV().rightCols(size);
    k.eigenvalues.push_back(mu);
    k.blocks.push_back({start, size});
    k.kite_params += size * size;
    start += size;
  }
  const double cond = condition_number(k.basis);
  if (!(cond < 1e10)) throw Error(ErrorKind::Numerical, "kite basis is ill-conditioned");
  k.basis_inverse = k.basis.inverse();
  return k;
}

Matrix twirl_project(const Matrix& slice, const KiteStructure& kite) {
  const int n = kite.dim();
  if (slice.rows() != n || slice.cols() != n) throw Error(ErrorKind::DimensionMismatch, "twirl slice has wrong shape");
  const ComplexMatrix inner = kite.basis_inverse * slice.cast<Complex>() * kite.basis;
  ComplexMatrix masked = ComplexMatrix::Zero(n, n);
  for (const auto& b : kite.blocks) masked.block(b.start, b.start, b.size, b.size) = inner.block(b.start, b.start, b.size, b.size);
  return (kite.basis * masked * kite.basis_inverse).real();
}

Matrix finite_twirl(const Matrix& op, const Matrix& slice, int p) {
  const Matrix inv = op.inverse();
  Matrix acc = Matrix::Zero(slice.rows(), slice.cols());
  Matrix fwd = Matrix::Identity(op.rows(), op.cols());
  Matrix back = Matrix::Identity(op.rows(), op.cols());
  for (int i = 0; i < p; ++i) {
    acc += fwd * slice * back;
    fwd = fwd * op;
    back = back * inv;
  }
  return acc / static_cast<double>(p);
}

Matrix commutant_basis(const KiteStructure& kite) {
  const int n = kite.dim();
  Matrix images(n * n, n * n);
  for (int c = 0; c < n; ++c) {
    for (int r = 0; r < n; ++r) {
      Matrix e = Matrix::Zero(n, n);
      e(r, c) = 1.0;
      const Matrix pe = twirl_project(e, kite);
      images.col(c * n + r) = Eigen::Map<const Vector>(pe.data(), n * n);
    }
  }
  return range_basis(images);
}

namespace {

// d(germ superop)/d(gate entry) for all gate parameters, twirled and vectorized into columns.
Matrix twirled_gate_jacobian(const GateSet& gs, const Circuit& germ, const KiteStructure& kite) {
  const int d2 = gs.dim;
  const int n = germ.depth();
  std::vector<const Matrix*> ops;
  for (const auto& l : germ.labels) ops.push_back(&gs.gate(l));
  std::vector<Matrix> pre(n + 1), suf(n);
  pre[0] = Matrix::Identity(d2, d2);
  for (int t = 0; t < n; ++t) pre[t + 1] = (*ops[t]) * pre[t];
  suf[n - 1] = Matrix::Identity(d2, d2);
  for (int t = n - 2; t >= 0; --t) suf[t] = suf[t + 1] * (*ops[t + 1]);

  std::map<std::string, int> off;
  int o = 0;
  for (const auto& kv : gs.gates) {
    off[kv.first] = o;
    o += (d2 - 1) * d2;
  }
  Matrix out = Matrix::Zero(d2 * d2, gs.num_gate_params());
  for (const auto& kv : gs.gates) {
    bool present = false;
    for (const auto& l : germ.labels) present = present || l == kv.first;
    if (!present) continue;
    for (int r = 1; r < d2; ++r) {
      for (int c = 0; c < d2; ++c) {
        Matrix deriv = Matrix::Zero(d2, d2);
        for (int t = 0; t < n; ++t) {
          if (germ.labels[t] != kv.first) continue;
          deriv.noalias() += suf[t].col(r) * pre[t].row(c);
        }
        const Matrix tw = twirl_project(deriv, kite);
        out.col(off[kv.first] + (r - 1) * d2 + c) = Eigen::Map<const Vector>(tw.data(), d2 * d2);
      }
    }
  }
  return out;
}

}  // namespace

Matrix twirled_jacobian(const GateSet& gs, const Circuit& germ, double degeneracy_tol) {
  gs.check_circuit(germ);
  if (germ.empty()) throw Error(ErrorKind::InvalidArgument, "germ must contain at least one gate");
  const KiteStructure kite = kite_structure(circuit_superop(gs, germ), degeneracy_tol);
  Matrix out = Matrix::Zero(gs.dim * gs.dim, gs.num_params());
  out.leftCols(gs.num_gate_params()) = twirled_gate_jacobian(gs, germ, kite);
  return out;
}

Matrix germset_jacobian(const GateSet& gs, const std::vector<Circuit>& germs, double degeneracy_tol) {
  const int rows = gs.dim * gs.dim;
  Matrix out(rows * static_cast<int>(germs.size()), gs.num_params());
  for (std::size_t i = 0; i < germs.size(); ++i) {
    out.middleRows(static_cast<int>(i) * rows, rows) = twirled_jacobian(gs, germs[i], degeneracy_tol);
  }
  return out;
}

int amplifiable_count(const GateSet& gs) {
  const GaugeTangent gt = gauge_tangent(gs);
  return gs.num_gate_params() - numerical_rank(gt.basis.topRows(gs.num_gate_params()));
}

int amplified_rank(const GateSet& gs, const std::vector<Circuit>& germs, double degeneracy_tol) {
  if (germs.empty()) return 0;
  const Matrix j = germset_jacobian(gs, germs, degeneracy_tol).leftCols(gs.num_gate_params());
  return psd_rank(j.transpose() * j);
}

std::vector<Circuit> germ_candidates(const std::vector<std::string>& labels_in, int max_len) {
  std::vector<std::string> labels = labels_in;
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  const int k = static_cast<int>(labels.size());
  std::vector<std::vector<int>> words;
  if (k == 0 || max_len < 1) return {};
  // Duval's algorithm: Lyndon words in lexicographic order.
  std::vector<int> w{-1};
  while (!w.empty()) {
    w.back() += 1;
    words.push_back(w);
    const std::size_t m = w.size();
    while (static_cast<int>(w.size()) < max_len) w.push_back(w[w.size() - m]);
    while (!w.empty() && w.back() == k - 1) w.pop_back();
  }
  std::stable_sort(words.begin(), words.end(),
                   [](const auto& a, const auto& b) { return a.size() < b.size(); });
  std::vector<Circuit> out;
  for (const auto& word : words) {
    Circuit c;
    for (int x : word) c.labels.push_back(labels[x]);
    out.push_back(c);
  }
  return out;
}

GermMode parse_germ_mode(const std::string& s) {
  if (s == "robust") return GermMode::Robust;
  if (s == "standard") return GermMode::Standard;
  if (s == "bare") return GermMode::Bare;
  throw Error(ErrorKind::InvalidArgument, "germ mode must be robust, standard or bare");
}

GermScore parse_germ_score(const std::string& s) {
  if (s == "sum") return GermScore::Sum;
  if (s == "min" || s == "worst") return GermScore::Worst;
  throw Error(ErrorKind::InvalidArgument, "germ score must be sum or min");
}

std::vector<GermModel> germ_selection_models(const GateSet& target, const GermSelectionOptions& opt) {
  std::vector<GermModel> models{{target, kIdealDegeneracyTol}};
  if (opt.mode == GermMode::Robust) {
    std::seed_seq sseq{static_cast<std::uint32_t>(opt.seed & 0xffffffffu), static_cast<std::uint32_t>(opt.seed >> 32)};
    std::vector<std::uint32_t> seeds(opt.num_perturbed);
    sseq.generate(seeds.begin(), seeds.end());
    for (int i = 0; i < opt.num_perturbed; ++i) {
      models.push_back({unitary_perturbation(target, opt.perturbation, seeds[i]), kPerturbedDegeneracyTol});
    }
  }
  return models;
}

namespace {

struct Composite {
  int deficit = 0;
  double score = 0.0;
  // lower is better
  bool operator<(const Composite& o) const {
    if (deficit != o.deficit) return deficit < o.deficit;
    return score < o.score;
  }
};

Composite evaluate(const Matrix& gram, int target, GermScore kind, double penalty) {
  Vector ev = symmetric_eigenvalues(gram);  // ascending
  const int n = static_cast<int>(ev.size());
  const double top = n ? ev(n - 1) : 0.0;
  int rank = 0;
  if (top > 0.0) rank = static_cast<int>((ev.array() > kRankTolerance * top).count());
  const int amplified = std::min(rank, target);
  Composite c;
  c.deficit = target - amplified;
  if (amplified == 0) {
    c.score = std::numeric_limits<double>::infinity();
    return c;
  }
  if (kind == GermScore::Sum) {
    for (int i = 0; i < amplified; ++i) c.score += 1.0 / ev(n - 1 - i);
  } else {
    c.score = 1.0 / ev(n - amplified);
  }
  c.score += penalty;
  return c;
}

}  // namespace

GermSelectionResult select_germs(const std::vector<GermModel>& models, const std::vector<Circuit>& candidates,
                                 const GermSelectionOptions& opt) {
  if (models.empty()) throw Error(ErrorKind::InvalidArgument, "germ selection needs at least one model");
  if (candidates.empty()) throw Error(ErrorKind::InvalidArgument, "germ candidate pool is empty");
  const std::size_t nm = models.size();
  const std::size_t nc = candidates.size();
  const int ng = models[0].gs.num_gate_params();

  GermSelectionResult res;
  for (const auto& m : models) res.target_per_model.push_back(amplifiable_count(m.gs));

  // Gram of each candidate's scaled twirled Jacobian, per model.
  std::vector<std::vector<Matrix>> gram(nm, std::vector<Matrix>(nc));
  parallel_for(nm * nc, [&](std::size_t idx) {
    const std::size_t mi = idx / nc;
    const std::size_t ci = idx % nc;
    const GateSet& gs = models[mi].gs;
    const Matrix j = twirled_jacobian(gs, candidates[ci], models[mi].degeneracy_tol).leftCols(ng) /
                     static_cast<double>(candidates[ci].depth());
    gram[mi][ci] = j.transpose() * j;
  });

  if (opt.pretest) {
    for (std::size_t mi = 0; mi < nm; ++mi) {
      Matrix all = Matrix::Zero(ng, ng);
      for (std::size_t ci = 0; ci < nc; ++ci) all += gram[mi][ci];
      const int r = std::min(psd_rank(all), res.target_per_model[mi]);
      if (r < res.target_per_model[mi]) {
        throw Error(ErrorKind::NotAmplificationallyComplete,
                    "candidate germs amplify " + std::to_string(r) + " of " +
                        std::to_string(res.target_per_model[mi]) + " parameters for model " + std::to_string(mi));
      }
    }
  }

  std::vector<Matrix> base(nm, Matrix::Zero(ng, ng));
  std::vector<bool> chosen(nc, false);
  int total_len = 0;
  Composite current{std::numeric_limits<int>::max(), 0.0};
  while (current.deficit > 0 && res.germs.size() < nc) {
    std::vector<Composite> worst(nc);
    parallel_for(nc, [&](std::size_t ci) {
      if (chosen[ci]) return;
      const double penalty = opt.length_penalty * (total_len + candidates[ci].depth()) +
                             opt.count_penalty * static_cast<double>(res.germs.size() + 1);
      Composite w{-1, -std::numeric_limits<double>::infinity()};
      for (std::size_t mi = 0; mi < nm; ++mi) {
        const Composite c = evaluate(base[mi] + gram[mi][ci], res.target_per_model[mi], opt.score, penalty);
        if (w < c) w = c;
      }
      worst[ci] = w;
    });
    std::size_t best = nc;
    for (std::size_t ci = 0; ci < nc; ++ci) {
      if (chosen[ci]) continue;
      if (best == nc || worst[ci] < worst[best]) best = ci;
    }
    chosen[best] = true;
    res.germs.push_back(candidates[best]);
    total_len += candidates[best].depth();
    for (std::size_t mi = 0; mi < nm; ++mi) base[mi] += gram[mi][best];
    current = worst[best];
    int amp = std::numeric_limits<int>::max();
    for (std::size_t mi = 0; mi < nm; ++mi) amp = std::min(amp, std::min(psd_rank(base[mi]), res.target_per_model[mi]));
    res.trajectory.push_back({candidates[best].str(), amp, current.score});
  }
  for (std::size_t mi = 0; mi < nm; ++mi) res.rank_per_model.push_back(psd_rank(base[mi]));
  if (current.deficit > 0) {
    throw Error(ErrorKind::NotAmplificationallyComplete,
                "germ selection stopped " + std::to_string(current.deficit) + " parameters short");
  }
  return res;
}

GermSelectionResult select_germs(const GateSet& target, const GermSelectionOptions& opt) {
  if (opt.mode == GermMode::Bare) {
    GermSelectionResult res;
    res.germs = bare_germs(target);
    res.target_per_model.push_back(amplifiable_count(target));
    res.rank_per_model.push_back(amplified_rank(target, res.germs, kIdealDegeneracyTol));
    return res;
  }
  const auto models = germ_selection_models(target, opt);
  return select_germs(models, germ_candidates(target.labels(), opt.max_germ_length), opt);
}

}  // namespace gstd
