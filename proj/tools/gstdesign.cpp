#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>

#include "gstd/design.hpp"
#include "gstd/error.hpp"
#include "gstd/fiducials.hpp"
#include "gstd/fisher.hpp"
#include "gstd/fpr.hpp"
#include "gstd/germs.hpp"
#include "gstd/models.hpp"
#include "gstd/noise.hpp"
#include "gstd/parallel.hpp"
#include "gstd/wallclock.hpp"

using nlohmann::json;
using namespace gstd;

namespace {

enum Exit : int {
  kOk = 0,
  kInternal = 1,
  kUsage = 2,
  kInvalidFile = 3,
  kNotIC = 4,
  kNotAC = 5,
  kModelMismatch = 6,
  kNumerical = 7,
};

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::InvalidArgument: return kUsage;
    case ErrorKind::InvalidFile: return kInvalidFile;
    case ErrorKind::NotInformationallyComplete: return kNotIC;
    case ErrorKind::NotAmplificationallyComplete: return kNotAC;
    case ErrorKind::UnknownLabel:
    case ErrorKind::DimensionMismatch: return kModelMismatch;
    case ErrorKind::Numerical: return kNumerical;
  }
  return kInternal;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidFile, "cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::InvalidFile, "cannot write '" + path + "'");
  out << text;
  if (!text.empty() && text.back() != '\n') out << '\n';
}

json parse_json(const std::string& path) {
  try {
    return json::parse(read_text(path));
  } catch (const json::exception& ex) {
    throw Error(ErrorKind::InvalidFile, "'" + path + "' is not valid JSON: " + ex.what());
  }
}

// A file path, or a bundled model name when no such file exists.
GateSet load_model(const std::string& spec) {
  if (std::filesystem::exists(spec)) return load_gateset(spec);
  if (spec == "xyi" || spec == "xycphase") return builtin_model(spec);
  throw Error(ErrorKind::InvalidFile, "gate set file '" + spec + "' not found");
}

std::vector<Circuit> circuits_from_json(const json& j, const std::string& what) {
  if (!j.is_array()) throw Error(ErrorKind::InvalidFile, what + " must be a list of circuit strings");
  std::vector<Circuit> out;
  for (const auto& e : j) {
    if (!e.is_string()) throw Error(ErrorKind::InvalidFile, what + " entries must be strings");
    out.push_back(Circuit::parse(e.get<std::string>()));
  }
  return out;
}

json circuits_to_json(const std::vector<Circuit>& cs) {
  json a = json::array();
  for (const auto& c : cs) a.push_back(c.str());
  return a;
}

std::vector<Circuit> read_circuit_lines(const std::string& path) {
  std::istringstream in(read_text(path));
  std::vector<Circuit> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos || line[0] == '#') continue;
    out.push_back(Circuit::parse(line));
  }
  return out;
}

json score_json(const FiducialScore& s) {
  json j;
  j["rank"] = s.rank;
  j["required"] = s.required;
  j["complete"] = s.complete();
  j["score"] = s.complete() ? json(s.score) : json(nullptr);
  j["spectrum"] = std::vector<double>(s.spectrum.data(), s.spectrum.data() + s.spectrum.size());
  return j;
}

struct Fiducials {
  std::vector<Circuit> prep, meas;
};

// "select", "standard", or a JSON file holding a list or {"prep": [...], "meas": [...]}.
Fiducials resolve_fiducials(const GateSet& gs, const std::string& spec, int max_depth) {
  Fiducials f;
  if (spec == "select") {
    const auto pool = fiducial_candidates(gs, max_depth);
    f.prep = select_fiducials(gs, pool, FiducialKind::Prep);
    f.meas = select_fiducials(gs, pool, FiducialKind::Meas);
    return f;
  }
  if (spec == "standard") {
    const int nq = gs.num_qubits();
    if (nq == 1 && gs.gates.count("Gx") && gs.gates.count("Gy")) {
      f.prep = f.meas = standard_fiducials_xyi();
    } else if (nq == 2 && gs.gates.count("Gxi") && gs.gates.count("Gix")) {
      f.prep = f.meas = standard_fiducials_xycphase();
    } else {
      throw Error(ErrorKind::InvalidArgument, "no standard fiducials for this gate set; use select or a file");
    }
  } else {
    const json j = parse_json(spec);
    if (j.is_array()) {
      f.prep = f.meas = circuits_from_json(j, "fiducial list");
    } else if (j.is_object() && j.contains("prep") && j.contains("meas")) {
      f.prep = circuits_from_json(j["prep"], "prep fiducials");
      f.meas = circuits_from_json(j["meas"], "measurement fiducials");
    } else {
      throw Error(ErrorKind::InvalidFile, "fiducial file must be a list or an object with prep and meas");
    }
  }
  for (const auto& c : f.prep) gs.check_circuit(c);
  for (const auto& c : f.meas) gs.check_circuit(c);
  if (!fiducial_score(gs, f.prep, FiducialKind::Prep).complete()) {
    throw Error(ErrorKind::NotInformationallyComplete, "prep fiducials are not informationally complete");
  }
  if (!fiducial_score(gs, f.meas, FiducialKind::Meas).complete()) {
    throw Error(ErrorKind::NotInformationallyComplete, "measurement fiducials are not informationally complete");
  }
  return f;
}

bool is_germ_mode(const std::string& s) { return s == "robust" || s == "standard" || s == "bare"; }

GermSelectionResult resolve_germs(const GateSet& gs, const std::string& spec, const GermSelectionOptions& base) {
  if (is_germ_mode(spec)) {
    GermSelectionOptions opt = base;
    opt.mode = parse_germ_mode(spec);
    return select_germs(gs, opt);
  }
  const json j = parse_json(spec);
  GermSelectionResult r;
  r.germs = circuits_from_json(j.is_object() && j.contains("germs") ? j["germs"] : j, "germ list");
  for (const auto& g : r.germs) {
    gs.check_circuit(g);
    if (g.empty()) throw Error(ErrorKind::InvalidFile, "germs must be non-empty");
  }
  return r;
}

json germ_report(const GermSelectionResult& r) {
  json j;
  j["germs"] = circuits_to_json(r.germs);
  j["target_per_model"] = r.target_per_model;
  j["rank_per_model"] = r.rank_per_model;
  json traj = json::array();
  for (const auto& it : r.trajectory) traj.push_back({{"added", it.added}, {"amplified", it.amplified}, {"score", it.score}});
  j["trajectory"] = traj;
  return j;
}

DepthSchedule resolve_schedule(int lmax, const std::vector<int>& depths) {
  if (!depths.empty()) {
    DepthSchedule s{depths};
    s.validate();
    return s;
  }
  return DepthSchedule::powers_of_two(lmax);
}

void require_seed(const std::optional<std::uint64_t>& seed, const std::string& why) {
  if (!seed) throw Error(ErrorKind::InvalidArgument, "--seed is required for " + why);
}

json pairs_to_json(const std::vector<FidPair>& ps) {
  json a = json::array();
  for (const auto& p : ps) a.push_back({p.prep, p.meas});
  return a;
}

json per_germ_json(const PerGermFprResult& r, const std::vector<Circuit>& germs) {
  json j;
  j["kind"] = "per-germ";
  j["eps"] = r.eps;
  json gl = json::array();
  for (std::size_t k = 0; k < r.germs.size(); ++k) {
    const auto& g = r.germs[k];
    gl.push_back({{"germ", germs[k].str()},
                  {"pairs", pairs_to_json(g.pairs)},
                  {"ratio", g.ratio},
                  {"baseline_rank", g.baseline_rank},
                  {"baseline_lambda", g.baseline_lambda},
                  {"full_grid_fallback", g.full_grid_fallback}});
  }
  j["germs"] = gl;
  return j;
}

std::string fmt_seconds(double s) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", s);
  return buf;
}

// Shared option blocks.
struct DesignArgs {
  std::string gateset = "xyi";
  std::string fiducials = "select";
  int fiducial_depth = 3;
  std::string germs = "robust";
  std::string germ_score = "sum";
  int max_germ_length = 6;
  std::string fpr = "full";
  double eps = 1.0 / 30.0;
  double gamma = 0.125;
  bool ceil = false;
  int sets_per_size = 100;
  int lmax = 256;
  std::vector<int> depths;
  std::optional<std::uint64_t> seed;
};

void add_model_options(CLI::App* app, DesignArgs& a) {
  app->add_option("--gateset", a.gateset, "target gate set JSON (or a bundled name: xyi, xycphase)");
}

void add_fiducial_options(CLI::App* app, DesignArgs& a) {
  app->add_option("--fiducials", a.fiducials, "select | standard | JSON file");
  app->add_option("--fiducial-depth", a.fiducial_depth, "max candidate depth for fiducial selection")
      ->check(CLI::Range(0, 6));
}

void add_germ_options(CLI::App* app, DesignArgs& a) {
  app->add_option("--germs", a.germs, "robust | standard | bare | JSON file");
  app->add_option("--germ-score", a.germ_score, "sum | min");
  app->add_option("--max-germ-length", a.max_germ_length)->check(CLI::Range(1, 10));
}

void add_fpr_options(CLI::App* app, DesignArgs& a) {
  app->add_option("--eps", a.eps, "per-germ eigenvalue-ratio threshold")->check(CLI::Range(0.0, 1.0));
  app->add_option("--gamma", a.gamma, "random FPR keep fraction")->check(CLI::Range(0.0, 1.0));
  app->add_flag("--ceil", a.ceil, "round the random keep count up instead of down");
  app->add_option("--sets-per-size", a.sets_per_size, "per-germ random subsets tried per size")
      ->check(CLI::PositiveNumber);
}

void add_schedule_options(CLI::App* app, DesignArgs& a) {
  app->add_option("--Lmax", a.lmax, "largest depth of the powers-of-two schedule")->check(CLI::PositiveNumber);
  app->add_option("--depths", a.depths, "explicit depth list (overrides --Lmax)")->delimiter(',');
}

bool germs_randomized(const std::string& g) { return g == "robust"; }

GermSelectionOptions germ_options(const DesignArgs& a) {
  GermSelectionOptions o;
  o.score = parse_germ_score(a.germ_score);
  o.max_germ_length = a.max_germ_length;
  o.seed = a.seed.value_or(0);
  return o;
}

ExperimentDesign run_design(const DesignArgs& a, const GateSet& gs, json* germs_out) {
  const FprKind kind = parse_fpr_kind(a.fpr);
  if (germs_randomized(a.germs)) require_seed(a.seed, "robust germ selection");
  if (kind != FprKind::Full) require_seed(a.seed, fpr_kind_name(kind) + " fiducial pair reduction");
  const DepthSchedule sched = resolve_schedule(a.lmax, a.depths);
  const Fiducials f = resolve_fiducials(gs, a.fiducials, a.fiducial_depth);
  const GermSelectionResult gr = resolve_germs(gs, a.germs, germ_options(a));
  if (germs_out) *germs_out = germ_report(gr);

  FprPolicy pol;
  pol.kind = kind;
  if (kind == FprKind::Random) {
    pol.gamma = a.gamma;
    pol.seed = *a.seed;
    pol.ceil_mode = a.ceil;
  } else if (kind == FprKind::PerGerm) {
    PerGermFprOptions po;
    po.eps = a.eps;
    po.seed = *a.seed;
    po.sets_per_size = a.sets_per_size;
    const auto r = per_germ_fpr(gs, f.prep, f.meas, gr.germs, po);
    pol.eps = a.eps;
    for (const auto& g : r.germs) pol.per_germ.push_back(g.pairs);
  }
  ExperimentDesign d = build_design(f.prep, f.meas, gr.germs, sched, pol, gs.labels());
  d.gateset_ref = a.gateset;
  return d;
}

void print_count_table(const ExperimentDesign& d, std::ostream& os) {
  os << std::setw(8) << "L" << std::setw(12) << "circuits" << '\n';
  for (const auto& [L, n] : count_by_depth(d)) os << std::setw(8) << L << std::setw(12) << n << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gate set tomography experiment design toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  int threads = 0;
  app.add_option("--threads", threads, "worker threads (default: GSTDESIGN_THREADS or hardware)")
      ->check(CLI::NonNegativeNumber);

  // design
  DesignArgs da;
  std::string design_out, design_circuits, design_germs_out;
  auto* design = app.add_subcommand("design", "build an experiment design");
  add_model_options(design, da);
  add_fiducial_options(design, da);
  add_germ_options(design, da);
  design->add_option("--fpr", da.fpr, "full | per-germ | random");
  add_fpr_options(design, da);
  add_schedule_options(design, da);
  design->add_option("--seed", da.seed, "seed for randomized steps");
  design->add_option("--output", design_out, "design JSON path")->required();
  design->add_option("--circuit-list", design_circuits, "also write one circuit per line");
  design->add_option("--germ-report", design_germs_out, "also write the germ selection report");

  // certify
  DesignArgs ca;
  std::string certify_design_path, certify_csv, certify_report, series = "cumulative", series_label;
  std::optional<std::uint64_t> certify_seed;
  double perturbation = 1e-3, spam_depol = 1e-3;
  CertifyOptions copt;
  bool strict = false;
  auto* certify = app.add_subcommand("certify", "Fisher-information certification of a design");
  add_model_options(certify, ca);
  certify->add_option("--design", certify_design_path, "design JSON")->required()->check(CLI::ExistingFile);
  certify->add_option("--seed", certify_seed, "seed of the evaluation-point perturbation");
  certify->add_option("--perturbation", perturbation, "unitary perturbation per generator")
      ->check(CLI::NonNegativeNumber);
  certify->add_option("--spam-depol", spam_depol, "SPAM depolarization at the evaluation point")
      ->check(CLI::Range(0.0, 1.0));
  certify->add_option("--shots", copt.shots, "shots per circuit")->check(CLI::PositiveNumber);
  certify->add_option("--slope-threshold", copt.slope_threshold);
  certify->add_option("--series", series, "spectra to export: cumulative | incremental | projected");
  certify->add_option("--label", series_label, "projection block for --series projected");
  certify->add_option("--csv", certify_csv, "spectra CSV path");
  certify->add_option("--report", certify_report, "JSON report path (default stdout)");
  certify->add_flag("--strict", strict, "exit nonzero when the design is not well constructed");

  // simulate
  DesignArgs sa;
  std::string sim_design, sim_circuits, sim_out, sim_model_out, noise = "coherent-depolarizing";
  std::optional<std::uint64_t> sim_seed;
  double sigma = 0.01, eta = 0.001;
  std::int64_t sim_shots = 1000;
  auto* simulate = app.add_subcommand("simulate", "sample a noisy model and simulate counts");
  add_model_options(simulate, sa);
  auto* sd = simulate->add_option("--design", sim_design, "design JSON")->check(CLI::ExistingFile);
  simulate->add_option("--circuits", sim_circuits, "circuit list, one per line")->check(CLI::ExistingFile)->excludes(sd);
  simulate->add_option("--noise", noise, "coherent | coherent-depolarizing");
  simulate->add_option("--sigma", sigma)->check(CLI::NonNegativeNumber);
  simulate->add_option("--eta", eta)->check(CLI::Range(0.0, 1.0));
  simulate->add_option("--shots", sim_shots)->check(CLI::PositiveNumber);
  simulate->add_option("--seed", sim_seed, "seed for noise and sampling")->required();
  simulate->add_option("--output", sim_out, "dataset JSON path")->required();
  simulate->add_option("--noisy-model", sim_model_out, "also write the sampled noisy gate set");

  // wallclock
  std::vector<std::string> wc_designs, wc_devices, wc_presets;
  std::string wc_gateset, wc_counts;
  double wc_2q_fraction = 0.0;
  std::int64_t wc_shots = 1000;
  auto* wallclock = app.add_subcommand("wallclock", "estimate run time on device models");
  wallclock->add_option("--design", wc_designs, "design JSON (repeatable)")->check(CLI::ExistingFile);
  wallclock->add_option("--counts", wc_counts, "JSON {depth: circuit count} for approximate mode")
      ->check(CLI::ExistingFile);
  wallclock->add_option("--two-qubit-fraction", wc_2q_fraction)->check(CLI::Range(0.0, 1.0));
  wallclock->add_option("--gateset", wc_gateset, "gate set used to find two-qubit labels");
  wallclock->add_option("--device", wc_devices, "device JSON (repeatable)")->check(CLI::ExistingFile);
  wallclock->add_option("--preset", wc_presets, "transmon | trapped-ion | simos (repeatable)");
  wallclock->add_option("--shots", wc_shots)->check(CLI::PositiveNumber);

  // fiducials
  DesignArgs fa;
  std::string fid_out, fid_candidates;
  auto* fiducials = app.add_subcommand("fiducials", "greedy fiducial selection");
  add_model_options(fiducials, fa);
  fiducials->add_option("--max-depth", fa.fiducial_depth, "candidate depth")->check(CLI::Range(0, 6));
  fiducials->add_option("--candidates", fid_candidates, "candidate list, one circuit per line")
      ->check(CLI::ExistingFile);
  fiducials->add_option("--output", fid_out, "JSON output (default stdout)");

  // germs
  DesignArgs ga;
  std::string germ_out;
  auto* germs = app.add_subcommand("germs", "greedy germ selection");
  add_model_options(germs, ga);
  germs->add_option("--mode", ga.germs, "robust | standard | bare");
  germs->add_option("--score", ga.germ_score, "sum | min");
  germs->add_option("--max-length", ga.max_germ_length)->check(CLI::Range(1, 10));
  germs->add_option("--seed", ga.seed, "seed for perturbed models");
  germs->add_option("--output", germ_out, "JSON output (default stdout)");

  // fpr
  DesignArgs pa;
  std::string fpr_out;
  auto* fpr = app.add_subcommand("fpr", "fiducial pair reduction");
  add_model_options(fpr, pa);
  add_fiducial_options(fpr, pa);
  add_germ_options(fpr, pa);
  fpr->add_option("--fpr", pa.fpr, "per-germ | random");
  add_fpr_options(fpr, pa);
  add_schedule_options(fpr, pa);
  fpr->add_option("--seed", pa.seed, "seed for randomized steps");
  fpr->add_option("--output", fpr_out, "JSON output (default stdout)");

  // model export
  std::string model_name, model_out;
  auto* model = app.add_subcommand("model", "write a bundled target gate set");
  model->add_option("--name", model_name, "xyi | xycphase")->required();
  model->add_option("--output", model_out, "JSON output (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (threads > 0) set_thread_count(threads);

    if (*design) {
      json gj;
      const GateSet gs = load_model(da.gateset);
      const ExperimentDesign d = run_design(da, gs, design_germs_out.empty() ? nullptr : &gj);
      write_text(design_out, design_to_json(d));
      if (!design_circuits.empty()) write_text(design_circuits, design_circuits_text(d));
      if (!design_germs_out.empty()) write_text(design_germs_out, gj.dump(1));
      std::cout << "germs: " << d.germs.size() << ", fiducials: " << d.prep_fiducials.size() << " prep / "
                << d.meas_fiducials.size() << " meas, fpr: " << fpr_kind_name(d.policy.kind) << '\n';
      print_count_table(d, std::cout);
      return kOk;
    }

    if (*certify) {
      require_seed(certify_seed, "the certification evaluation point");
      const GateSet target = load_model(ca.gateset);
      const ExperimentDesign d = load_design(certify_design_path);
      for (const auto& c : d.circuits) target.check_circuit(c.circuit);
      const GateSet eval = certification_point(target, perturbation, spam_depol, *certify_seed);
      const CertifyReport r = certify_design(eval, d, copt);

      if (!certify_csv.empty()) {
        if (series == "cumulative") {
          write_text(certify_csv, spectra_csv(r));
        } else if (series == "incremental") {
          write_text(certify_csv, series_csv(incremental_series(eval, d, copt.shots)));
        } else if (series == "projected") {
          if (series_label.empty()) throw Error(ErrorKind::InvalidArgument, "--series projected needs --label");
          write_text(certify_csv, series_csv(projected_series(eval, d, copt.shots, series_label)));
        } else {
          throw Error(ErrorKind::InvalidArgument, "--series must be cumulative, incremental or projected");
        }
      }
      json j;
      j["num_params"] = r.num_params;
      j["non_gauge"] = r.non_gauge;
      j["expected_spam"] = r.expected_spam;
      j["growing"] = r.growing;
      j["plateaued"] = r.plateaued;
      j["insensitive"] = r.insensitive;
      j["min_over_median"] = r.min_over_median;
      j["slopes"] = r.slopes;
      j["L"] = r.L;
      j["well_constructed"] = r.well_constructed;
      std::string verdict = "well-constructed";
      if (r.insensitive > 0) {
        verdict = "insensitive directions";
      } else if (r.plateaued > r.expected_spam) {
        verdict = "not amplificationally complete";
      }
      j["verdict"] = verdict;
      write_text(certify_report, j.dump(1));
      if (!certify_report.empty()) {
        std::cout << "growing " << r.growing << ", plateaued " << r.plateaued << " (expected SPAM "
                  << r.expected_spam << "), insensitive " << r.insensitive << ": " << verdict << '\n';
      }
      if (strict && !r.well_constructed) {
        return r.insensitive > 0 ? kNumerical : kNotAC;
      }
      return kOk;
    }

    if (*simulate) {
      const GateSet target = load_model(sa.gateset);
      std::vector<Circuit> circuits;
      if (!sim_design.empty()) {
        circuits = load_design(sim_design).circuit_list();
      } else if (!sim_circuits.empty()) {
        circuits = read_circuit_lines(sim_circuits);
      } else {
        throw Error(ErrorKind::InvalidArgument, "simulate needs --design or --circuits");
      }
      NoiseSpec ns;
      if (noise == "coherent") {
        ns.kind = NoiseKind::CoherentOnly;
      } else if (noise == "coherent-depolarizing") {
        ns.kind = NoiseKind::CoherentDepolarizing;
      } else {
        throw Error(ErrorKind::InvalidArgument, "--noise must be coherent or coherent-depolarizing");
      }
      ns.sigma = sigma;
      ns.eta = ns.kind == NoiseKind::CoherentOnly ? 0.0 : eta;
      ns.seed = *sim_seed;
      const GateSet noisy = sample_noisy_gateset(target, ns);
      // Sampling gets its own stream so it does not overlap the noise draw.
      const Dataset ds = simulate_dataset(noisy, circuits, sim_shots, *sim_seed ^ 0x9e3779b97f4a7c15ULL);
      write_text(sim_out, dataset_to_json(ds));
      if (!sim_model_out.empty()) save_gateset(noisy, sim_model_out);
      std::cout << "circuits " << ds.circuits.size() << ", shots " << ds.shots << ", log-likelihood "
                << log_likelihood(noisy, ds) << '\n';
      return kOk;
    }

    if (*wallclock) {
      std::vector<DeviceParams> devs;
      for (const auto& p : wc_presets) devs.push_back(device_preset(p));
      for (const auto& p : wc_devices) devs.push_back(load_device(p));
      if (devs.empty()) throw Error(ErrorKind::InvalidArgument, "wallclock needs --device or --preset");
      if (wc_designs.empty() == wc_counts.empty()) {
        throw Error(ErrorKind::InvalidArgument, "wallclock needs exactly one of --design or --counts");
      }

      struct Row {
        std::string design, device;
        std::size_t n;
        TimeEstimate t;
      };
      std::vector<Row> rows;
      if (!wc_counts.empty()) {
        const json j = parse_json(wc_counts);
        std::map<int, std::int64_t> hist;
        try {
          for (const auto& [k, v] : j.items()) hist[std::stoi(k)] = v.get<std::int64_t>();
        } catch (const std::exception& ex) {
          throw Error(ErrorKind::InvalidFile, std::string("bad depth histogram: ") + ex.what());
        }
        std::size_t n = 0;
        for (const auto& kv : hist) n += kv.second;
        for (const auto& dev : devs) rows.push_back({wc_counts, dev.name, n, estimate_from_counts(hist, wc_2q_fraction, wc_shots, dev)});
      } else {
        std::set<std::string> two_q;
        if (!wc_gateset.empty()) two_q = two_qubit_labels(load_model(wc_gateset));
        for (const auto& path : wc_designs) {
          const ExperimentDesign d = load_design(path);
          if (wc_gateset.empty() && !d.gateset_ref.empty()) {
            try {
              two_q = two_qubit_labels(load_model(d.gateset_ref));
            } catch (const Error&) {
              throw Error(ErrorKind::InvalidArgument, "cannot resolve the design's gate set; pass --gateset");
            }
          }
          const auto cs = d.circuit_list();
          for (const auto& dev : devs) rows.push_back({path, dev.name, cs.size(), estimate(cs, two_q, wc_shots, dev)});
        }
      }
      std::cout << std::left << std::setw(28) << "design" << std::setw(14) << "device" << std::right << std::setw(10)
                << "circuits" << std::setw(14) << "T_exec[s]" << std::setw(14) << "T_upload[s]" << std::setw(14)
                << "total[s]" << '\n';
      for (const auto& r : rows) {
        const std::string name = std::filesystem::path(r.design).filename().string();
        std::cout << std::left << std::setw(28) << name << std::setw(14) << r.device << std::right << std::setw(10)
                  << r.n << std::setw(14) << fmt_seconds(r.t.t_exec) << std::setw(14) << fmt_seconds(r.t.t_upload)
                  << std::setw(14) << fmt_seconds(r.t.total) << '\n';
      }
      if (!rows.empty() && rows.front().t.approximate) std::cout << "approximate: " << rows.front().t.note << '\n';
      return kOk;
    }

    if (*fiducials) {
      const GateSet gs = load_model(fa.gateset);
      const auto pool = fid_candidates.empty() ? fiducial_candidates(gs, fa.fiducial_depth) : read_circuit_lines(fid_candidates);
      for (const auto& c : pool) gs.check_circuit(c);
      const auto prep = select_fiducials(gs, pool, FiducialKind::Prep);
      const auto meas = select_fiducials(gs, pool, FiducialKind::Meas);
      json j;
      j["prep"] = circuits_to_json(prep);
      j["meas"] = circuits_to_json(meas);
      j["report"] = {{"prep", score_json(fiducial_score(gs, prep, FiducialKind::Prep))},
                     {"meas", score_json(fiducial_score(gs, meas, FiducialKind::Meas))}};
      write_text(fid_out, j.dump(1));
      return kOk;
    }

    if (*germs) {
      if (!is_germ_mode(ga.germs)) throw Error(ErrorKind::InvalidArgument, "--mode must be robust, standard or bare");
      if (germs_randomized(ga.germs)) require_seed(ga.seed, "robust germ selection");
      const GateSet gs = load_model(ga.gateset);
      write_text(germ_out, germ_report(resolve_germs(gs, ga.germs, germ_options(ga))).dump(1));
      return kOk;
    }

    if (*fpr) {
      const FprKind kind = parse_fpr_kind(pa.fpr);
      if (kind == FprKind::Full) throw Error(ErrorKind::InvalidArgument, "--fpr must be per-germ or random");
      require_seed(pa.seed, fpr_kind_name(kind) + " fiducial pair reduction");
      if (germs_randomized(pa.germs)) require_seed(pa.seed, "robust germ selection");
      const GateSet gs = load_model(pa.gateset);
      const Fiducials f = resolve_fiducials(gs, pa.fiducials, pa.fiducial_depth);
      const auto gr = resolve_germs(gs, pa.germs, germ_options(pa));
      json j;
      if (kind == FprKind::PerGerm) {
        PerGermFprOptions po;
        po.eps = pa.eps;
        po.seed = *pa.seed;
        po.sets_per_size = pa.sets_per_size;
        j = per_germ_json(per_germ_fpr(gs, f.prep, f.meas, gr.germs, po), gr.germs);
      } else {
        const DepthSchedule sched = resolve_schedule(pa.lmax, pa.depths);
        const auto pp = random_fpr(static_cast<int>(f.prep.size()), static_cast<int>(f.meas.size()), gr.germs, sched,
                                   pa.gamma, *pa.seed, pa.ceil);
        j["kind"] = "random";
        j["gamma"] = pa.gamma;
        j["keep"] = keep_count(pa.gamma, static_cast<int>(f.prep.size() * f.meas.size()), pa.ceil);
        json pl = json::array();
        for (const auto& [key, pairs] : pp) {
          pl.push_back({{"germ", gr.germs[key.first].str()}, {"L", sched.maxdepths[key.second]},
                        {"pairs", pairs_to_json(pairs)}});
        }
        j["plaquettes"] = pl;
      }
      j["prep_fiducials"] = circuits_to_json(f.prep);
      j["meas_fiducials"] = circuits_to_json(f.meas);
      write_text(fpr_out, j.dump(1));
      return kOk;
    }

    if (*model) {
      write_text(model_out, gateset_to_json(builtin_model(model_name)));
      return kOk;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kInternal;
  }
  return kUsage;
}
