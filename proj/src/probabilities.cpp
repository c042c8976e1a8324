#include "gstd/probabilities.hpp"

#include <map>

#include "gstd/error.hpp"

namespace gstd {

namespace {

std::vector<const Matrix*> resolve(const GateSet& gs, const Circuit& c) {
  std::vector<const Matrix*> ops;
  ops.reserve(c.labels.size());
  for (const auto& l : c.labels) ops.push_back(&gs.gate(l));
  return ops;
}

Matrix effect_matrix(const GateSet& gs) {
  Matrix e(gs.num_outcomes(), gs.dim);
  for (int j = 0; j < gs.num_outcomes(); ++j) e.row(j) = gs.effects[j].transpose();
  return e;
}

// Offset of each gate's parameter block.
std::map<std::string, int> gate_offsets(const GateSet& gs) {
  std::map<std::string, int> off;
  int o = 0;
  for (const auto& kv : gs.gates) {
    off[kv.first] = o;
    o += (gs.dim - 1) * gs.dim;
  }
  return off;
}

}  // namespace

Matrix circuit_superop(const GateSet& gs, const Circuit& c) {
  Matrix m = Matrix::Identity(gs.dim, gs.dim);
  for (const auto& l : c.labels) m = gs.gate(l) * m;
  return m;
}

Vector circuit_probabilities(const GateSet& gs, const Circuit& c) {
  if (gs.prep.size() != gs.dim) throw Error(ErrorKind::DimensionMismatch, "prep length does not match gate set");
  Vector v = gs.prep;
  for (const Matrix* g : resolve(gs, c)) v = (*g) * v;
  Vector p(gs.num_outcomes());
  for (int j = 0; j < gs.num_outcomes(); ++j) p(j) = gs.effects[j].dot(v);
  return p;
}

std::vector<Vector> effective_fiducial_states(const GateSet& gs, const std::vector<Circuit>& fids) {
  std::vector<Vector> out;
  out.reserve(fids.size());
  for (const auto& f : fids) out.push_back(circuit_superop(gs, f) * gs.prep);
  return out;
}

std::vector<Vector> effective_fiducial_effects(const GateSet& gs, const std::vector<Circuit>& fids) {
  std::vector<Vector> out;
  const int m = gs.num_outcomes();
  out.reserve(fids.size() * m);
  for (std::size_t i = 0; i < fids.size() * m; ++i) {
    const Matrix h = circuit_superop(gs, fids[i / m]);
    out.push_back(h.transpose() * gs.effects[i % m]);
  }
  return out;
}

Matrix probability_jacobian(const GateSet& gs, const Circuit& c) {
  const auto ops = resolve(gs, c);
  const int n = static_cast<int>(ops.size());
  const int d2 = gs.dim;
  const int m = gs.num_outcomes();
  const auto off = gate_offsets(gs);
  const ParameterMap pm = gs.param_map();

  // R[t]: state entering gate t. S[t]: effects composed with gates t..n-1.
  std::vector<Vector> R(n + 1);
  R[0] = gs.prep;
  for (int t = 0; t < n; ++t) R[t + 1] = (*ops[t]) * R[t];
  std::vector<Matrix> S(n + 1);
  S[n] = effect_matrix(gs);
  for (int t = n - 1; t >= 0; --t) S[t] = S[t + 1] * (*ops[t]);

  Matrix jac = Matrix::Zero(m, pm.size);
  for (int t = 0; t < n; ++t) {
    const int o = off.at(c.labels[t]);
    for (int j = 0; j < m; ++j) {
      for (int r = 1; r < d2; ++r) {
        const double a = S[t + 1](j, r);
        if (a == 0.0) continue;
        const int base = o + (r - 1) * d2;
        jac.row(j).segment(base, d2) += a * R[t].transpose();
      }
    }
  }
  const int prep_off = pm.block("prep").offset;
  for (int j = 0; j < m; ++j) {
    for (int a = 1; a < d2; ++a) jac(j, prep_off + a - 1) = S[0](j, a);
  }
  const int meas_off = pm.block("meas").offset;
  for (int b = 0; b + 1 < m; ++b) {
    for (int a = 0; a < d2; ++a) {
      jac(b, meas_off + b * d2 + a) += R[n](a);
      jac(m - 1, meas_off + b * d2 + a) -= R[n](a);
    }
  }
  return jac;
}

std::vector<Matrix> probability_hessian(const GateSet& gs, const Circuit& c) {
  const auto ops = resolve(gs, c);
  const int n = static_cast<int>(ops.size());
  const int d2 = gs.dim;
  const int m = gs.num_outcomes();
  const auto off = gate_offsets(gs);
  const ParameterMap pm = gs.param_map();
  const int np = pm.size;
  const int prep_off = pm.block("prep").offset;
  const int meas_off = pm.block("meas").offset;

  std::vector<Vector> R(n + 1);
  R[0] = gs.prep;
  for (int t = 0; t < n; ++t) R[t + 1] = (*ops[t]) * R[t];
  std::vector<Matrix> S(n + 1);
  S[n] = effect_matrix(gs);
  for (int t = n - 1; t >= 0; --t) S[t] = S[t + 1] * (*ops[t]);
  // Pre[t] = G_{t-1}...G_0, Suf[t] = G_{n-1}...G_{t+1}.
  std::vector<Matrix> Pre(n + 1), Suf(n + 1);
  Pre[0] = Matrix::Identity(d2, d2);
  for (int t = 0; t < n; ++t) Pre[t + 1] = (*ops[t]) * Pre[t];
  if (n > 0) {
    Suf[n - 1] = Matrix::Identity(d2, d2);
    for (int t = n - 2; t >= 0; --t) Suf[t] = Suf[t + 1] * (*ops[t + 1]);
  }
  const Matrix total = Pre[n];

  std::vector<Matrix> hess(m, Matrix::Zero(np, np));
  auto add_sym = [&](int j, int p, int q, double v) {
    hess[j](p, q) += v;
    hess[j](q, p) += v;
  };

  for (int t = 0; t < n; ++t) {
    const int ot = off.at(c.labels[t]);
    // gate (s) - gate (t), s > t
    Matrix mid = Matrix::Identity(d2, d2);
    for (int s = t + 1; s < n; ++s) {
      const int os = off.at(c.labels[s]);
      for (int j = 0; j < m; ++j) {
        for (int rs = 1; rs < d2; ++rs) {
          const double a = S[s + 1](j, rs);
          if (a == 0.0) continue;
          for (int cs = 0; cs < d2; ++cs) {
            const int ps = os + (rs - 1) * d2 + cs;
            for (int rt = 1; rt < d2; ++rt) {
              const double am = a * mid(cs, rt);
              if (am == 0.0) continue;
              for (int ct = 0; ct < d2; ++ct) {
                const int pt = ot + (rt - 1) * d2 + ct;
                add_sym(j, ps, pt, am * R[t](ct));
              }
            }
          }
        }
      }
      mid = (*ops[s]) * mid;
    }
    // prep - gate
    for (int j = 0; j < m; ++j) {
      for (int r = 1; r < d2; ++r) {
        const double a = S[t + 1](j, r);
        if (a == 0.0) continue;
        for (int col = 0; col < d2; ++col) {
          const int pg = ot + (r - 1) * d2 + col;
          for (int pa = 1; pa < d2; ++pa) add_sym(j, pg, prep_off + pa - 1, a * Pre[t](col, pa));
        }
      }
    }
    // effect - gate
    for (int b = 0; b + 1 < m; ++b) {
      for (int ea = 0; ea < d2; ++ea) {
        const int pe = meas_off + b * d2 + ea;
        for (int r = 1; r < d2; ++r) {
          const double a = Suf[t](ea, r);
          if (a == 0.0) continue;
          for (int col = 0; col < d2; ++col) {
            const int pg = ot + (r - 1) * d2 + col;
            const double v = a * R[t](col);
            add_sym(b, pe, pg, v);
            add_sym(m - 1, pe, pg, -v);
          }
        }
      }
    }
  }
  // effect - prep
  for (int b = 0; b + 1 < m; ++b) {
    for (int ea = 0; ea < d2; ++ea) {
      const int pe = meas_off + b * d2 + ea;
      for (int pa = 1; pa < d2; ++pa) {
        const double v = total(ea, pa);
        add_sym(b, pe, prep_off + pa - 1, v);
        add_sym(m - 1, pe, prep_off + pa - 1, -v);
      }
    }
  }
  return hess;
}

}  // namespace gstd
