#include "gstd/fisher.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "gstd/error.hpp"
#include "gstd/gauge.hpp"
#include "gstd/germs.hpp"
#include "gstd/noise.hpp"
#include "gstd/parallel.hpp"
#include "gstd/probabilities.hpp"

namespace gstd {

namespace {

void add_circuit_fim(const GateSet& gs, const Circuit& c, double shots, Matrix& acc) {
  if (shots == 0.0) return;
  const Matrix jac = probability_jacobian(gs, c);
  const Vector p = circuit_probabilities(gs, c);
  Matrix scaled = jac;
  for (int i = 0; i < p.size(); ++i) scaled.row(i) *= shots / std::clamp(p(i), kProbabilityClip, 1.0);
  acc.noalias() += jac.transpose() * scaled;
}

}  // namespace

Matrix circuit_fim(const GateSet& gs, const Circuit& c, double shots) {
  Matrix f = Matrix::Zero(gs.num_params(), gs.num_params());
  add_circuit_fim(gs, c, shots, f);
  return 0.5 * (f + f.transpose());
}

Matrix circuit_fim_with_hessian(const GateSet& gs, const Circuit& c, double shots) {
  const Matrix jac = probability_jacobian(gs, c);
  const Vector p = circuit_probabilities(gs, c);
  const auto hess = probability_hessian(gs, c);
  Matrix f = Matrix::Zero(gs.num_params(), gs.num_params());
  for (int i = 0; i < p.size(); ++i) {
    f += jac.row(i).transpose() * jac.row(i) / std::clamp(p(i), kProbabilityClip, 1.0) - hess[i];
  }
  return shots * f;
}

Matrix fim_sum(const GateSet& gs, const std::vector<Circuit>& circuits, double shots) {
  for (const auto& c : circuits) gs.check_circuit(c);
  const int np = gs.num_params();
  Matrix f = parallel_matrix_sum(circuits.size(), np, np,
                                 [&](std::size_t i, Matrix& acc) { add_circuit_fim(gs, circuits[i], shots, acc); });
  return 0.5 * (f + f.transpose());
}

std::vector<Matrix> bucket_fims(const GateSet& gs, const ExperimentDesign& design, double shots) {
  std::vector<std::vector<Circuit>> buckets(design.schedule.size());
  for (const auto& c : design.circuits) buckets[c.depth_index].push_back(c.circuit);
  std::vector<Matrix> out;
  for (const auto& b : buckets) out.push_back(fim_sum(gs, b, shots));
  return out;
}

namespace {

FisherSeries make_series(SeriesKind kind, const ExperimentDesign& design, std::vector<Matrix> mats,
                         const GateSet& gs) {
  FisherSeries s;
  s.kind = kind;
  s.L = design.schedule.maxdepths;
  s.matrices = std::move(mats);
  for (const auto& m : s.matrices) s.spectra.push_back(symmetric_eigenvalues(m));
  s.gauge_null = gauge_tangent(gs).rank;
  return s;
}

}  // namespace

FisherSeries incremental_series(const GateSet& gs, const ExperimentDesign& design, double shots) {
  return make_series(SeriesKind::Incremental, design, bucket_fims(gs, design, shots), gs);
}

FisherSeries cumulative_series(const GateSet& gs, const ExperimentDesign& design, double shots) {
  auto mats = bucket_fims(gs, design, shots);
  for (std::size_t l = 1; l < mats.size(); ++l) mats[l] += mats[l - 1];
  return make_series(SeriesKind::Cumulative, design, std::move(mats), gs);
}

FisherSeries projected_series(const GateSet& gs, const ExperimentDesign& design, double shots,
                              const std::string& label, bool cumulative) {
  const ParameterMap pm = gs.param_map();
  pm.block(label);
  auto mats = bucket_fims(gs, design, shots);
  if (cumulative) {
    for (std::size_t l = 1; l < mats.size(); ++l) mats[l] += mats[l - 1];
  }
  for (auto& m : mats) m = projected_fim(m, pm, label);
  FisherSeries s = make_series(SeriesKind::Projected, design, std::move(mats), gs);
  s.label = label;
  return s;
}

Matrix design_fim(const GateSet& gs, const ExperimentDesign& design, double shots) {
  return fim_sum(gs, design.circuit_list(), shots);
}

Matrix projected_fim(const Matrix& fim, const ParameterMap& pm, const std::string& label) {
  const ParamBlock& b = pm.block(label);
  if (fim.rows() != pm.size || fim.cols() != pm.size) {
    throw Error(ErrorKind::DimensionMismatch, "FIM shape does not match parameter map");
  }
  Matrix out = Matrix::Zero(fim.rows(), fim.cols());
  out.block(b.offset, b.offset, b.size, b.size) = fim.block(b.offset, b.offset, b.size, b.size);
  return out;
}

GateSet certification_point(const GateSet& target, double perturbation, double spam_depol, std::uint64_t seed) {
  return depolarize_spam(unitary_perturbation(target, perturbation, seed), spam_depol);
}

namespace {

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  if (n < 2) return 0.0;
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxx > 0.0 ? sxy / sxx : 0.0;
}

}  // namespace

CertifyReport classify_series(const GateSet& eval, const std::vector<int>& L, const std::vector<Matrix>& cumulative,
                              const CertifyOptions& opt) {
  if (L.size() != cumulative.size() || L.empty()) {
    throw Error(ErrorKind::InvalidArgument, "series and depth list disagree");
  }
  CertifyReport rep;
  rep.L = L;
  rep.num_params = eval.num_params();
  const Matrix q = non_gauge_basis(eval);
  rep.non_gauge = static_cast<int>(q.cols());
  rep.expected_spam = opt.expected_spam >= 0 ? opt.expected_spam : rep.non_gauge - amplifiable_count(eval);

  std::vector<Matrix> fs;
  for (const auto& c : cumulative) {
    Matrix r = q.transpose() * c * q;
    fs.push_back(0.5 * (r + r.transpose()));
    rep.spectra.push_back(symmetric_eigenvalues(fs.back()));
  }
  const int n = static_cast<int>(L.size());
  const int first = n - (n + 1) / 2;
  const int dim = rep.non_gauge;

  // Directions: generalized eigenvectors of (I(L_max), I(L_ref)).
  Matrix ref = fs[first];
  const double scale = std::max(fs[n - 1].trace() / std::max(dim, 1), 1e-300);
  double ridge = 0.0;
  for (int attempt = 0; attempt < 40; ++attempt) {
    Eigen::LLT<Matrix> llt(ref + ridge * Matrix::Identity(dim, dim));
    if (llt.info() == Eigen::Success) break;
    ridge = ridge == 0.0 ? 1e-14 * scale : ridge * 10.0;
  }
  Eigen::GeneralizedSelfAdjointEigenSolver<Matrix> ges(fs[n - 1], ref + ridge * Matrix::Identity(dim, dim));
  const Matrix vecs = ges.eigenvectors();

  std::vector<double> lx;
  for (int i = first; i < n; ++i) lx.push_back(std::log(static_cast<double>(L[i])));
  std::vector<std::pair<double, std::vector<double>>> dirs;
  for (int k = 0; k < dim; ++k) {
    const Vector v = vecs.col(k).normalized();
    std::vector<double> traj, ly;
    for (int i = 0; i < n; ++i) traj.push_back(v.dot(fs[i] * v));
    for (int i = first; i < n; ++i) ly.push_back(std::log(std::max(traj[i], 1e-300)));
    dirs.push_back({loglog_slope(lx, ly), traj});
  }
  std::sort(dirs.begin(), dirs.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  for (auto& d : dirs) {
    rep.slopes.push_back(d.first);
    rep.trajectory.push_back(std::move(d.second));
    if (d.first >= opt.slope_threshold) {
      rep.growing++;
    } else {
      rep.plateaued++;
    }
  }

  const Vector& last = rep.spectra.back();
  std::vector<double> vals(last.data(), last.data() + last.size());
  std::sort(vals.begin(), vals.end());
  double median = 0.0;
  if (!vals.empty()) {
    const std::size_t h = vals.size() / 2;
    median = vals.size() % 2 ? vals[h] : 0.5 * (vals[h - 1] + vals[h]);
  }
  for (double v : vals) {
    if (v < opt.insensitive_rel * median) rep.insensitive++;
  }
  rep.min_over_median = (median > 0.0 && !vals.empty()) ? vals.front() / median : 0.0;
  rep.well_constructed = rep.plateaued <= rep.expected_spam && rep.insensitive == 0;
  return rep;
}

CertifyReport certify_design(const GateSet& eval, const ExperimentDesign& design, const CertifyOptions& opt) {
  auto mats = bucket_fims(eval, design, opt.shots);
  for (std::size_t l = 1; l < mats.size(); ++l) mats[l] += mats[l - 1];
  return classify_series(eval, design.schedule.maxdepths, mats, opt);
}

std::string spectra_csv(const CertifyReport& report) {
  std::ostringstream out;
  out.precision(12);
  out << "L,index,value,classification\n";
  for (std::size_t l = 0; l < report.L.size(); ++l) {
    for (std::size_t k = 0; k < report.trajectory.size(); ++k) {
      const bool grow = k + report.growing >= report.trajectory.size();
      out << report.L[l] << ',' << k << ',' << report.trajectory[k][l] << ',' << (grow ? "growing" : "plateaued")
          << '\n';
    }
  }
  return out.str();
}

std::string series_csv(const FisherSeries& series) {
  std::ostringstream out;
  out.precision(12);
  out << "L,index,value\n";
  for (std::size_t l = 0; l < series.L.size(); ++l) {
    for (int k = 0; k < series.spectra[l].size(); ++k) out << series.L[l] << ',' << k << ',' << series.spectra[l](k) << '\n';
  }
  return out.str();
}

}  // namespace gstd
