#include "gstd/gauge.hpp"

#include "gstd/error.hpp"

namespace gstd {

GaugeTangent gauge_tangent(const GateSet& gs) {
  const int d2 = gs.dim;
  const int m = gs.num_outcomes();
  const int np = gs.num_params();
  GaugeTangent gt;
  gt.basis = Matrix::Zero(np, (d2 - 1) * d2);
  int col = 0;
  for (int a = 1; a < d2; ++a) {
    for (int b = 0; b < d2; ++b, ++col) {
      // K = e_a e_b^T, so KG has row a = G.row(b); GK has column b = G.col(a).
      int off = 0;
      for (const auto& kv : gs.gates) {
        Matrix dg = Matrix::Zero(d2, d2);
        dg.row(a) += kv.second.row(b);
        dg.col(b) -= kv.second.col(a);
        for (int r = 1; r < d2; ++r) {
          for (int c = 0; c < d2; ++c) gt.basis(off++, col) = dg(r, c);
        }
      }
      // K rho
      for (int r = 1; r < d2; ++r) gt.basis(off++, col) = (r == a) ? gs.prep(b) : 0.0;
      // -E K: only entry b changes, by -E(a)
      for (int e = 0; e + 1 < m; ++e) {
        for (int c = 0; c < d2; ++c) gt.basis(off++, col) = (c == b) ? -gs.effects[e](a) : 0.0;
      }
    }
  }
  gt.rank = numerical_rank(gt.basis);
  return gt;
}

int non_gauge_count(const GateSet& gs) { return gs.num_params() - gauge_tangent(gs).rank; }

Matrix non_gauge_basis(const GateSet& gs) { return complement_basis(gauge_tangent(gs).basis); }

GateSet apply_gauge_transform(const GateSet& gs, const Matrix& m) {
  if (m.rows() != gs.dim || m.cols() != gs.dim) {
    throw Error(ErrorKind::DimensionMismatch, "gauge matrix shape does not match gate set");
  }
  if (!(condition_number(m) < 1e8)) throw Error(ErrorKind::Numerical, "gauge matrix is singular or ill-conditioned");
  const Matrix minv = m.inverse();
  GateSet out = gs;
  for (auto& kv : out.gates) kv.second = m * kv.second * minv;
  out.prep = m * gs.prep;
  for (auto& e : out.effects) e = (e.transpose() * minv).transpose();
  return out;
}

}  // namespace gstd
