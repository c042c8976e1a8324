#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "gstd/design.hpp"
#include "gstd/error.hpp"
#include "gstd/fpr.hpp"
#include "gstd/germs.hpp"
#include "gstd/models.hpp"
#include "gstd/probabilities.hpp"

using namespace gstd;

namespace {

const std::vector<Circuit> kStdGerms = {Circuit{"Gi"}, Circuit{"Gx"}, Circuit{"Gy"}, Circuit{"Gx", "Gy"},
                                        Circuit{"Gx", "Gy", "Gy"}, Circuit{"Gx", "Gx", "Gy"}};

// Distinct label sequences of a full design, from the definition alone.
std::set<std::vector<std::string>> full_design_oracle(const std::vector<Circuit>& f, const std::vector<Circuit>& germs,
                                                      const std::vector<int>& depths,
                                                      const std::vector<std::string>& labels) {
  std::set<std::vector<std::string>> out;
  auto add = [&](const Circuit& a, const Circuit& mid, const Circuit& b) {
    std::vector<std::string> s = a.labels;
    s.insert(s.end(), mid.labels.begin(), mid.labels.end());
    s.insert(s.end(), b.labels.begin(), b.labels.end());
    out.insert(s);
  };
  for (const auto& a : f)
    for (const auto& b : f) {
      add(a, Circuit{}, b);
      for (const auto& l : labels) add(a, Circuit{l}, b);
    }
  for (const auto& g : germs) {
    for (int L : depths) {
      const int p = L / g.depth();
      if (p < 1) continue;
      Circuit body;
      for (int r = 0; r < p; ++r) body = body + g;
      for (const auto& a : f)
        for (const auto& b : f) add(a, body, b);
    }
  }
  return out;
}

}  // namespace

TEST_CASE("random FPR keep counts") {
  CHECK(keep_count(0.125, 36) == 4);
  CHECK(keep_count(0.03, 36) == 1);
  CHECK(keep_count(0.125, 36, true) == 5);
  CHECK(keep_count(1.0, 36) == 36);
  CHECK(keep_count(0.001, 36) == 1);
  CHECK_THROWS_AS(keep_count(0.0, 36), Error);
  CHECK(keep_count(0.25, 36) == 9);
  CHECK_THROWS_AS(keep_count(1.5, 36), Error);
}

TEST_CASE("random plaquette pairs are distinct, sorted and seed-determined") {
  const auto a = random_plaquette_pairs(6, 6, 0.125, 7, 2, 3);
  CHECK(a.size() == 4);
  CHECK(std::is_sorted(a.begin(), a.end()));
  CHECK(std::set<FidPair>(a.begin(), a.end()).size() == a.size());
  for (const auto& p : a) {
    CHECK(p.prep >= 0);
    CHECK(p.prep < 6);
    CHECK(p.meas >= 0);
    CHECK(p.meas < 6);
  }
  CHECK(random_plaquette_pairs(6, 6, 0.125, 7, 2, 3) == a);
  // Different plaquettes draw from different streams.
  int differ = 0;
  for (int g = 0; g < 6; ++g) differ += random_plaquette_pairs(6, 6, 0.125, 7, g, 0) != random_plaquette_pairs(6, 6, 0.125, 8, g, 0);
  CHECK(differ > 0);

  const auto small = random_fpr(6, 6, kStdGerms, DepthSchedule::powers_of_two(64), 0.125, 7);
  const auto large = random_fpr(6, 6, kStdGerms, DepthSchedule::powers_of_two(1024), 0.125, 7);
  for (const auto& [key, pairs] : small) {
    REQUIRE(large.count(key));
    CHECK(large.at(key) == pairs);
  }
  CHECK(large.size() > small.size());
}

TEST_CASE("kite jacobian matches a perturbed-germ oracle") {
  const GateSet gs = xyi_model();
  const auto f = standard_fiducials_xyi();
  const Circuit germ{"Gx", "Gy"};
  const auto pairs = all_pairs(6, 6);
  const Matrix jac = kite_param_jacobian(gs, germ, f, f, pairs);
  const KiteStructure kite = kite_structure(circuit_superop(gs, germ));
  const Matrix basis = commutant_basis(kite);
  REQUIRE(jac.cols() == basis.cols());
  REQUIRE(jac.rows() == 72);

  // Replace the germ by one gate "Gg" and move it along each commutant direction.
  for (int c = 0; c < basis.cols(); ++c) {
    const Matrix dir = Eigen::Map<const Matrix>(basis.col(c).data(), 4, 4);
    GateSet plus = gs, minus = gs;
    const double h = 1e-6;
    plus.gates["Gg"] = circuit_superop(gs, germ) + h * dir;
    minus.gates["Gg"] = circuit_superop(gs, germ) - h * dir;
    for (std::size_t p = 0; p < pairs.size(); p += 5) {
      const Circuit circ = f[pairs[p].prep] + Circuit{"Gg"} + f[pairs[p].meas];
      const Vector fd = (circuit_probabilities(plus, circ) - circuit_probabilities(minus, circ)) / (2 * h);
      for (int e = 0; e < 2; ++e) CHECK(std::abs(jac(static_cast<int>(p) * 2 + e, c) - fd(e)) < 1e-8);
    }
  }
}

TEST_CASE("per-germ FPR meets the eigenvalue-ratio threshold") {
  const GateSet gs = xyi_model();
  const auto f = standard_fiducials_xyi();
  PerGermFprOptions opt;
  opt.seed = 7;
  const auto res = per_germ_fpr(gs, f, f, kStdGerms, opt);
  REQUIRE(res.germs.size() == kStdGerms.size());
  const auto all = all_pairs(6, 6);
  for (std::size_t g = 0; g < kStdGerms.size(); ++g) {
    const auto& gp = res.germs[g];
    CHECK(gp.ratio >= opt.eps);
    CHECK(gp.pairs.size() * 2 >= static_cast<std::size_t>(gp.baseline_rank));
    CHECK(std::is_sorted(gp.pairs.begin(), gp.pairs.end()));
    const Matrix jac = kite_param_jacobian(gs, kStdGerms[g], f, f, all);
    CHECK(gp.baseline_rank == numerical_rank(jac));
    const double lam = pair_set_lambda(jac, 2, all, gp.pairs, gp.baseline_rank);
    CHECK(std::abs(lam / gp.baseline_lambda - gp.ratio) < 1e-9);
    if (!gp.full_grid_fallback) CHECK(gp.pairs.size() < all.size());
  }
  // Idle germ: the kite is the whole 4x4 block and the full grid sees all 16 directions.
  CHECK(res.germs[0].baseline_rank == 16);
  CHECK(per_germ_fpr(gs, f, f, kStdGerms, opt).germs[3].pairs == res.germs[3].pairs);
  opt.eps = 1.0;
  for (const auto& gp : per_germ_fpr(gs, f, f, kStdGerms, opt).germs) CHECK(gp.ratio >= 1.0 - 1e-12);
}

TEST_CASE("full design matches the set-based oracle") {
  const auto f = standard_fiducials_xyi();
  const auto labels = xyi_model().labels();
  const auto sched = DepthSchedule::powers_of_two(64);
  const ExperimentDesign d = build_design(f, f, kStdGerms, sched, FprPolicy{}, labels);
  const auto oracle = full_design_oracle(f, kStdGerms, sched.maxdepths, labels);
  CHECK(circuit_count(d) == static_cast<int>(oracle.size()));
  std::set<std::vector<std::string>> got;
  for (const auto& c : d.circuits) got.insert(c.circuit.labels);
  CHECK(got == oracle);
  CHECK(count_by_depth(d).rbegin()->second == circuit_count(d));

  // LGST layer first, in bucket 0. F_j G H_i can coincide with another F_j' H_i'.
  std::set<std::vector<std::string>> lgst;
  for (const auto& a : f)
    for (const auto& b : f) {
      lgst.insert((a + b).labels);
      for (const auto& l : labels) lgst.insert((a + Circuit{l} + b).labels);
    }
  for (std::size_t i = 0; i < d.circuits.size(); ++i) {
    const bool in_lgst = i < lgst.size();
    CHECK(in_lgst == (d.circuits[i].plaquettes.front() == -1));
    CHECK(in_lgst == (lgst.count(d.circuits[i].circuit.labels) == 1));
    if (in_lgst) CHECK(d.circuits[i].depth_index == 0);
  }
  for (const auto& c : d.circuits) {
    if (!c.circuit.structure) continue;
    const auto& s = *c.circuit.structure;
    CHECK((f[s.prep_fiducial] + kStdGerms[s.germ].repeated(s.power) + f[s.meas_fiducial]) == c.circuit);
  }
  // Gx Gy Gy at L = 1 has power 0 and is skipped; at L = 2 also power 0.
  for (const auto& p : d.plaquettes) {
    CHECK(p.power >= 1);
    CHECK(p.power == germ_power(kStdGerms[p.germ], p.L));
  }
}

TEST_CASE("repeated germ powers are not duplicated across depths") {
  const auto f = standard_fiducials_xyi();
  const DepthSchedule sched{{1, 2, 3, 4}};
  const ExperimentDesign d = build_design(f, f, {Circuit{"Gx", "Gy", "Gy"}}, sched, FprPolicy{}, {"Gi", "Gx", "Gy"});
  std::vector<int> powers;
  for (const auto& p : d.plaquettes) powers.push_back(p.power);
  CHECK(powers == std::vector<int>{1});
  CHECK(d.plaquettes[0].L == 3);
}

TEST_CASE("designs nest in the maximum depth") {
  const auto f = standard_fiducials_xyi();
  const auto labels = xyi_model().labels();
  for (FprKind kind : {FprKind::Full, FprKind::Random}) {
    FprPolicy pol;
    pol.kind = kind;
    pol.gamma = 0.125;
    pol.seed = 3;
    const auto small = build_design(f, f, kStdGerms, DepthSchedule::powers_of_two(32), pol, labels);
    const auto large = build_design(f, f, kStdGerms, DepthSchedule::powers_of_two(512), pol, labels);
    std::set<std::vector<std::string>> big;
    for (const auto& c : large.circuits) big.insert(c.circuit.labels);
    for (const auto& c : small.circuits) CHECK(big.count(c.circuit.labels) == 1);
    const auto cs = count_by_depth(small), cl = count_by_depth(large);
    for (const auto& [L, n] : cs) CHECK(cl.at(L) == n);
  }
}

TEST_CASE("random and per-germ policies shape the plaquettes") {
  const auto f = standard_fiducials_xyi();
  const auto labels = xyi_model().labels();
  FprPolicy pol;
  pol.kind = FprKind::Random;
  pol.gamma = 0.03;
  pol.seed = 11;
  const auto d = build_design(f, f, kStdGerms, DepthSchedule::powers_of_two(256), pol, labels);
  for (const auto& p : d.plaquettes) CHECK(p.pairs.size() == 1);

  FprPolicy pg;
  pg.kind = FprKind::PerGerm;
  pg.per_germ = {{{0, 0}}};
  CHECK_THROWS_AS(build_design(f, f, kStdGerms, DepthSchedule::powers_of_two(8), pg, labels), Error);
  pg.per_germ.assign(kStdGerms.size(), {{0, 1}, {2, 3}});
  const auto d2 = build_design(f, f, kStdGerms, DepthSchedule::powers_of_two(8), pg, labels);
  for (const auto& p : d2.plaquettes) CHECK(p.pairs == std::vector<FidPair>{{0, 1}, {2, 3}});
  pg.per_germ[0] = {{0, 9}};
  CHECK_THROWS_AS(build_design(f, f, kStdGerms, DepthSchedule::powers_of_two(8), pg, labels), Error);
  CHECK(parse_fpr_kind("per-germ") == FprKind::PerGerm);
  CHECK(fpr_kind_name(FprKind::Random) == "random");
  CHECK_THROWS_AS(parse_fpr_kind("some"), Error);
}

TEST_CASE("design JSON round trip is exact") {
  const auto f = standard_fiducials_xyi();
  FprPolicy pol;
  pol.kind = FprKind::Random;
  pol.gamma = 0.125;
  pol.seed = 5;
  auto d = build_design(f, f, kStdGerms, DepthSchedule::powers_of_two(16), pol, xyi_model().labels());
  d.gateset_ref = "xyi";
  const std::string text = design_to_json(d);
  const ExperimentDesign back = design_from_json(text);
  CHECK(design_to_json(back) == text);
  CHECK(back.circuit_list() == d.circuit_list());
  CHECK(back.policy.seed == 5);
  for (std::size_t i = 0; i < d.circuits.size(); ++i) {
    CHECK(back.circuits[i].circuit.structure == d.circuits[i].circuit.structure);
    CHECK(back.circuits[i].plaquettes == d.circuits[i].plaquettes);
  }
  CHECK_THROWS_AS(design_from_json("[1, 2]"), Error);
  const std::string lines = design_circuits_text(d);
  CHECK(std::count(lines.begin(), lines.end(), '\n') == circuit_count(d));
}
