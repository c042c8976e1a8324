#include "gstd/design.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

#include "gstd/error.hpp"

namespace gstd {

using nlohmann::json;

std::string fpr_kind_name(FprKind k) {
  switch (k) {
    case FprKind::Full: return "full";
    case FprKind::PerGerm: return "per-germ";
    case FprKind::Random: return "random";
  }
  return "full";
}

FprKind parse_fpr_kind(const std::string& s) {
  if (s == "full") return FprKind::Full;
  if (s == "per-germ") return FprKind::PerGerm;
  if (s == "random") return FprKind::Random;
  throw Error(ErrorKind::InvalidArgument, "FPR policy must be full, per-germ or random");
}

std::vector<Circuit> ExperimentDesign::circuit_list() const {
  std::vector<Circuit> out;
  out.reserve(circuits.size());
  for (const auto& c : circuits) out.push_back(c.circuit);
  return out;
}

ExperimentDesign build_design(const std::vector<Circuit>& prep_fids, const std::vector<Circuit>& meas_fids,
                              const std::vector<Circuit>& germs, const DepthSchedule& schedule,
                              const FprPolicy& policy, const std::vector<std::string>& gate_labels) {
  if (prep_fids.empty() || meas_fids.empty()) throw Error(ErrorKind::InvalidArgument, "fiducial lists must be nonempty");
  schedule.validate();
  if (policy.kind == FprKind::PerGerm && policy.per_germ.size() != germs.size()) {
    throw Error(ErrorKind::InvalidArgument, "per-germ policy needs one pair list per germ");
  }
  const int nf = static_cast<int>(prep_fids.size());
  const int nh = static_cast<int>(meas_fids.size());

  ExperimentDesign d;
  d.gate_labels = gate_labels;
  d.prep_fiducials = prep_fids;
  d.meas_fiducials = meas_fids;
  d.germs = germs;
  d.schedule = schedule;
  d.policy = policy;

  std::map<std::vector<std::string>, int> index;
  auto emit = [&](Circuit c, int bucket, int plaquette) {
    auto it = index.find(c.labels);
    if (it != index.end()) {
      auto& prov = d.circuits[it->second].plaquettes;
      if (prov.empty() || prov.back() != plaquette) prov.push_back(plaquette);
      return;
    }
    index.emplace(c.labels, static_cast<int>(d.circuits.size()));
    d.circuits.push_back({std::move(c), bucket, {plaquette}});
  };

  for (int j = 0; j < nf; ++j) {
    for (int i = 0; i < nh; ++i) emit(prep_fids[j] + meas_fids[i], 0, -1);
  }
  for (const auto& g : gate_labels) {
    for (int j = 0; j < nf; ++j) {
      for (int i = 0; i < nh; ++i) emit(prep_fids[j] + Circuit{g} + meas_fids[i], 0, -1);
    }
  }

  const std::vector<FidPair> full = all_pairs(nf, nh);
  for (int l = 0; l < schedule.size(); ++l) {
    const int L = schedule.maxdepths[l];
    for (int k = 0; k < static_cast<int>(germs.size()); ++k) {
      const int p = germ_power(germs[k], L);
      if (p < 1) continue;
      if (l > 0 && germ_power(germs[k], schedule.maxdepths[l - 1]) == p) continue;
      Plaquette pq{k, l, L, p, {}};
      switch (policy.kind) {
        case FprKind::Full: pq.pairs = full; break;
        case FprKind::PerGerm: pq.pairs = policy.per_germ[k]; break;
        case FprKind::Random:
          pq.pairs = random_plaquette_pairs(nf, nh, policy.gamma, policy.seed, k, l, policy.ceil_mode);
          break;
      }
      if (pq.pairs.empty()) {
        throw Error(ErrorKind::InvalidArgument, "no fiducial pairs for germ " + germs[k].str());
      }
      const int pid = static_cast<int>(d.plaquettes.size());
      const Circuit body = germs[k].repeated(p);
      for (const auto& fp : pq.pairs) {
        if (fp.prep < 0 || fp.prep >= nf || fp.meas < 0 || fp.meas >= nh) {
          throw Error(ErrorKind::InvalidArgument, "fiducial pair index out of range");
        }
        Circuit c = prep_fids[fp.prep] + body + meas_fids[fp.meas];
        c.structure = CircuitStructure{fp.prep, k, p, fp.meas};
        emit(std::move(c), l, pid);
      }
      d.plaquettes.push_back(std::move(pq));
    }
  }
  return d;
}

int circuit_count(const ExperimentDesign& design) { return static_cast<int>(design.circuits.size()); }

std::map<int, int> count_by_depth(const ExperimentDesign& design) {
  std::vector<int> per(design.schedule.size(), 0);
  for (const auto& c : design.circuits) per[c.depth_index]++;
  std::map<int, int> out;
  int acc = 0;
  for (int l = 0; l < design.schedule.size(); ++l) {
    acc += per[l];
    out[design.schedule.maxdepths[l]] = acc;
  }
  return out;
}

namespace {

json circuits_json(const std::vector<Circuit>& cs) {
  json a = json::array();
  for (const auto& c : cs) a.push_back(c.labels);
  return a;
}

std::vector<Circuit> json_circuits(const json& a) {
  std::vector<Circuit> out;
  for (const auto& c : a) out.push_back(Circuit(c.get<std::vector<std::string>>()));
  return out;
}

json pairs_json(const std::vector<FidPair>& ps) {
  json a = json::array();
  for (const auto& p : ps) a.push_back({p.prep, p.meas});
  return a;
}

std::vector<FidPair> json_pairs(const json& a) {
  std::vector<FidPair> out;
  for (const auto& p : a) out.push_back({p.at(0).get<int>(), p.at(1).get<int>()});
  return out;
}

}  // namespace

std::string design_to_json(const ExperimentDesign& d) {
  json j;
  j["gateset_ref"] = d.gateset_ref;
  j["gate_labels"] = d.gate_labels;
  j["fiducials"] = {{"prep", circuits_json(d.prep_fiducials)}, {"meas", circuits_json(d.meas_fiducials)}};
  j["germs"] = circuits_json(d.germs);
  j["maxdepths"] = d.schedule.maxdepths;
  json pol;
  pol["kind"] = fpr_kind_name(d.policy.kind);
  if (d.policy.kind == FprKind::Random) {
    pol["gamma"] = d.policy.gamma;
    pol["seed"] = d.policy.seed;
    pol["ceil"] = d.policy.ceil_mode;
  }
  if (d.policy.kind == FprKind::PerGerm) {
    pol["eps"] = d.policy.eps;
    json pg = json::array();
    for (const auto& ps : d.policy.per_germ) pg.push_back(pairs_json(ps));
    pol["pairs_per_germ"] = pg;
  }
  j["fpr_policy"] = pol;
  json pl = json::array();
  for (const auto& p : d.plaquettes) {
    pl.push_back({{"germ", p.germ}, {"depth_index", p.depth_index}, {"L", p.L}, {"power", p.power},
                  {"pairs", pairs_json(p.pairs)}});
  }
  j["plaquettes"] = pl;
  json cs = json::array();
  for (const auto& c : d.circuits) {
    json e = {{"labels", c.circuit.labels}, {"depth_index", c.depth_index}, {"plaquettes", c.plaquettes}};
    if (c.circuit.structure) {
      const auto& s = *c.circuit.structure;
      e["structure"] = {s.prep_fiducial, s.germ, s.power, s.meas_fiducial};
    }
    cs.push_back(e);
  }
  j["circuits"] = cs;
  return j.dump(1);
}

ExperimentDesign design_from_json(const std::string& text) {
  try {
    const json j = json::parse(text);
    ExperimentDesign d;
    d.gateset_ref = j.value("gateset_ref", "");
    d.gate_labels = j.at("gate_labels").get<std::vector<std::string>>();
    d.prep_fiducials = json_circuits(j.at("fiducials").at("prep"));
    d.meas_fiducials = json_circuits(j.at("fiducials").at("meas"));
    d.germs = json_circuits(j.at("germs"));
    d.schedule.maxdepths = j.at("maxdepths").get<std::vector<int>>();
    d.schedule.validate();
    const json& pol = j.at("fpr_policy");
    d.policy.kind = parse_fpr_kind(pol.at("kind").get<std::string>());
    d.policy.gamma = pol.value("gamma", 1.0);
    d.policy.seed = pol.value("seed", std::uint64_t{0});
    d.policy.ceil_mode = pol.value("ceil", false);
    d.policy.eps = pol.value("eps", 0.0);
    if (pol.contains("pairs_per_germ")) {
      for (const auto& ps : pol["pairs_per_germ"]) d.policy.per_germ.push_back(json_pairs(ps));
    }
    for (const auto& p : j.at("plaquettes")) {
      d.plaquettes.push_back({p.at("germ").get<int>(), p.at("depth_index").get<int>(), p.at("L").get<int>(),
                              p.at("power").get<int>(), json_pairs(p.at("pairs"))});
    }
    for (const auto& c : j.at("circuits")) {
      DesignCircuit dc;
      dc.circuit = Circuit(c.at("labels").get<std::vector<std::string>>());
      if (c.contains("structure")) {
        const auto s = c["structure"].get<std::vector<int>>();
        dc.circuit.structure = CircuitStructure{s.at(0), s.at(1), s.at(2), s.at(3)};
      }
      dc.depth_index = c.at("depth_index").get<int>();
      if (dc.depth_index < 0 || dc.depth_index >= d.schedule.size()) {
        throw Error(ErrorKind::InvalidFile, "circuit depth index out of range");
      }
      dc.plaquettes = c.at("plaquettes").get<std::vector<int>>();
      d.circuits.push_back(std::move(dc));
    }
    return d;
  } catch (const json::exception& ex) {
    throw Error(ErrorKind::InvalidFile, std::string("design JSON is malformed: ") + ex.what());
  } catch (const Error& ex) {
    throw Error(ErrorKind::InvalidFile, ex.what());
  }
}

ExperimentDesign load_design(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidFile, "cannot open design file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return design_from_json(ss.str());
}

std::string design_circuits_text(const ExperimentDesign& design) {
  std::string out;
  for (const auto& c : design.circuits) {
    out += c.circuit.str();
    out += '\n';
  }
  return out;
}

}  // namespace gstd
