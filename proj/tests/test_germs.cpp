#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "gstd/error.hpp"
#include "gstd/gauge.hpp"
#include "gstd/germs.hpp"
#include "gstd/models.hpp"
#include "gstd/noise.hpp"
#include "gstd/pauli.hpp"
#include "gstd/probabilities.hpp"

using namespace gstd;

namespace {

Matrix random_matrix(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n01;
  return Matrix::NullaryExpr(n, n, [&]() { return n01(rng); });
}

std::vector<int> block_sizes(const KiteStructure& k) {
  std::vector<int> s;
  for (const auto& b : k.blocks) s.push_back(b.size);
  std::sort(s.begin(), s.end());
  return s;
}

// Brute force: a word is a Lyndon word iff it is strictly smaller than each proper rotation.
int lyndon_oracle(int letters, int max_len) {
  int count = 0;
  for (int n = 1; n <= max_len; ++n) {
    int total = 1;
    for (int i = 0; i < n; ++i) total *= letters;
    for (int code = 0; code < total; ++code) {
      std::vector<int> w(n);
      for (int i = 0, c = code; i < n; ++i, c /= letters) w[n - 1 - i] = c % letters;
      bool ok = true;
      for (int r = 1; r < n && ok; ++r) {
        std::vector<int> rot(w.begin() + r, w.end());
        rot.insert(rot.end(), w.begin(), w.begin() + r);
        ok = w < rot;
      }
      count += ok;
    }
  }
  return count;
}

}  // namespace

TEST_CASE("kite structure of ideal XYI germs") {
  const GateSet gs = xyi_model();
  const KiteStructure idle = kite_structure(gs.gate("Gi"));
  CHECK(block_sizes(idle) == std::vector<int>{4});
  CHECK(idle.kite_params == 16);

  // Gx has eigenvalues 1, 1, i, -i.
  const KiteStructure gx = kite_structure(gs.gate("Gx"));
  CHECK(block_sizes(gx) == std::vector<int>{1, 1, 2});
  CHECK(gx.kite_params == 6);

  // A unitary PTM keeps eigenvalue 1 twice (trace and rotation axis); the rest is e^{+-i phi}.
  const GateSet pert = unitary_perturbation(gs, 1e-3, 3);
  const Matrix gxgy = circuit_superop(pert, Circuit{"Gx", "Gy"});
  const KiteStructure kp = kite_structure(gxgy, kPerturbedDegeneracyTol);
  CHECK(block_sizes(kp) == std::vector<int>{1, 1, 2});
  CHECK(kp.kite_params == 6);
  for (const auto& k : {idle, gx}) CHECK(condition_number(k.basis) < 1e10);
}

TEST_CASE("twirl projection is an idempotent projection onto the commutant") {
  const GateSet gs = xyi_model();
  for (const Circuit& germ : {Circuit{"Gx"}, Circuit{"Gx", "Gy"}, Circuit{"Gi"}, Circuit{"Gx", "Gx", "Gy"}}) {
    const Matrix a = circuit_superop(gs, germ);
    const KiteStructure k = kite_structure(a);
    const Matrix d = random_matrix(4, 11);
    const Matrix p = twirl_project(d, k);
    CHECK((twirl_project(p, k) - p).norm() < 1e-10);
    CHECK((a * p - p * a).norm() < 1e-10);
    CHECK((twirl_project(a, k) - a).norm() < 1e-10);

    const Matrix cb = commutant_basis(k);
    CHECK(cb.cols() == k.kite_params);
    CHECK((cb.transpose() * cb - Matrix::Identity(cb.cols(), cb.cols())).norm() < 1e-9);
    for (int c = 0; c < cb.cols(); ++c) {
      const Matrix m = Eigen::Map<const Matrix>(cb.col(c).data(), 4, 4);
      CHECK((a * m - m * a).norm() < 1e-9);
    }
  }
}

TEST_CASE("finite twirl converges to the projection") {
  const GateSet gs = xyi_model();
  const Matrix d = random_matrix(4, 2);
  // Gx has order 4, so p = 512 averages each phase exactly.
  const Matrix gx = gs.gate("Gx");
  CHECK((finite_twirl(gx, d, 512) - twirl_project(d, kite_structure(gx))).cwiseAbs().maxCoeff() < 1e-10);

  // Irrational angle: geometric-sum bound 2 |D| / (p |1 - e^{i delta}|) over the smallest phase gap.
  const Matrix r = ptm_from_unitary(pauli_rotation(1, 1, 0.7));
  const Matrix proj = twirl_project(d, kite_structure(r));
  const double gap = 2.0 * std::sin(0.35);
  for (int p : {64, 512, 4096}) {
    const double err = (finite_twirl(r, d, p) - proj).norm();
    CHECK(err <= 2.0 * d.norm() / (p * gap));
  }
}

TEST_CASE("germ candidates are the Lyndon words") {
  const auto c = germ_candidates({"Gi", "Gx", "Gy"}, 6);
  CHECK(static_cast<int>(c.size()) == lyndon_oracle(3, 6));
  CHECK(c.size() == 196);
  CHECK(c.front() == Circuit{"Gi"});
  for (std::size_t i = 1; i < c.size(); ++i) CHECK(c[i - 1].depth() <= c[i].depth());
  CHECK(std::count(c.begin(), c.end(), Circuit{"Gx", "Gy"}) == 1);
  CHECK(std::count(c.begin(), c.end(), Circuit{"Gy", "Gx"}) == 0);
  CHECK(std::count(c.begin(), c.end(), Circuit{"Gx", "Gx"}) == 0);
  CHECK(germ_candidates({"A", "B"}, 4).size() == static_cast<std::size_t>(lyndon_oracle(2, 4)));
}

TEST_CASE("amplifiable parameter count") {
  // Gate parameters minus the gate part of the gauge. Of the generators, only diag(0, 1, 1, 1)
  // commutes with every gate, so the gauge loses one dimension on gate coordinates.
  CHECK(amplifiable_count(xyi_model()) == 36 - 11);
  CHECK(amplifiable_count(xycphase_model()) == 1200 - 239);

  // An idle germ amplifies every one of its own 12 gate parameters.
  const GateSet gs = xyi_model();
  CHECK(amplified_rank(gs, {Circuit{"Gi"}}, kIdealDegeneracyTol) == 12);
  const Matrix j = twirled_jacobian(gs, Circuit{"Gi"}, kIdealDegeneracyTol);
  CHECK(j.rows() == 16);
  CHECK(j.cols() == gs.num_params());
  CHECK(j.rightCols(gs.num_params() - gs.num_gate_params()).norm() == 0.0);
}

TEST_CASE("bare germs are not amplificationally complete") {
  const GateSet gs = xyi_model();
  const int bare = amplified_rank(gs, bare_germs(gs), kIdealDegeneracyTol);
  CHECK(bare < 25);
  GermSelectionOptions opt;
  opt.mode = GermMode::Standard;
  try {
    select_germs(germ_selection_models(gs, opt), bare_germs(gs), opt);
    FAIL("expected NotAmplificationallyComplete");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotAmplificationallyComplete);
  }
  GermSelectionOptions b;
  b.mode = GermMode::Bare;
  CHECK(select_germs(gs, b).germs == bare_germs(gs));
}

TEST_CASE("standard and robust germ selection reach the amplifiable target") {
  const GateSet gs = xyi_model();
  GermSelectionOptions opt;
  opt.mode = GermMode::Standard;
  const auto std_res = select_germs(gs, opt);
  CHECK(amplified_rank(gs, std_res.germs, kIdealDegeneracyTol) == 25);
  for (const auto& g : std_res.germs) CHECK(g.depth() <= 6);
  CHECK(!std_res.trajectory.empty());
  for (std::size_t i = 1; i < std_res.trajectory.size(); ++i) {
    CHECK(std_res.trajectory[i].amplified >= std_res.trajectory[i - 1].amplified);
  }
  CHECK(std_res.trajectory.back().amplified == 25);

  opt.mode = GermMode::Robust;
  opt.seed = 1;
  const auto robust = select_germs(gs, opt);
  CHECK(robust.target_per_model.size() == 6);
  for (std::size_t m = 0; m < robust.rank_per_model.size(); ++m) {
    CHECK(robust.rank_per_model[m] == robust.target_per_model[m]);
  }
  CHECK(robust.germs.size() >= std_res.germs.size());
  // Each perturbed model is amplified to its own target by the robust set.
  const auto models = germ_selection_models(gs, opt);
  for (const auto& m : models) CHECK(amplified_rank(m.gs, robust.germs, m.degeneracy_tol) == amplifiable_count(m.gs));

  const auto again = select_germs(gs, opt);
  CHECK(again.germs == robust.germs);
  opt.score = GermScore::Worst;
  CHECK(amplified_rank(gs, select_germs(gs, opt).germs, kIdealDegeneracyTol) == 25);
}

TEST_CASE("germ option parsing") {
  CHECK(parse_germ_mode("robust") == GermMode::Robust);
  CHECK(parse_germ_mode("bare") == GermMode::Bare);
  CHECK(parse_germ_score("min") == GermScore::Worst);
  CHECK(parse_germ_score("sum") == GermScore::Sum);
  CHECK_THROWS_AS(parse_germ_mode("fancy"), Error);
  CHECK_THROWS_AS(parse_germ_score("max"), Error);
}
