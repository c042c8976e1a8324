#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "gstd/circuit.hpp"
#include "gstd/fpr.hpp"
#include "gstd/schedule.hpp"

namespace gstd {

enum class FprKind { Full, PerGerm, Random };

std::string fpr_kind_name(FprKind k);
FprKind parse_fpr_kind(const std::string& s);

struct FprPolicy {
  FprKind kind = FprKind::Full;
  std::vector<std::vector<FidPair>> per_germ;  // PerGerm: pairs for germ k, reused at every depth
  double gamma = 1.0;                          // Random
  std::uint64_t seed = 0;                      // Random
  bool ceil_mode = false;                      // Random
  double eps = 0.0;                            // PerGerm, informational
};

struct Plaquette {
  int germ = 0;
  int depth_index = 0;
  int L = 0;
  int power = 0;
  std::vector<FidPair> pairs;
};

struct DesignCircuit {
  Circuit circuit;
  int depth_index = 0;               // bucket: first depth at which the circuit appears
  std::vector<int> plaquettes;       // -1 marks the LGST layer
};

struct ExperimentDesign {
  std::string gateset_ref;
  std::vector<std::string> gate_labels;
  std::vector<Circuit> prep_fiducials;
  std::vector<Circuit> meas_fiducials;
  std::vector<Circuit> germs;
  DepthSchedule schedule;
  FprPolicy policy;
  std::vector<Plaquette> plaquettes;
  std::vector<DesignCircuit> circuits;

  std::vector<Circuit> circuit_list() const;
};

/// LGST layer (F_j H_i and F_j G H_i for each gate label) followed by one plaquette per
/// (germ, depth) whose power is >= 1 and differs from the previous depth's power.
ExperimentDesign build_design(const std::vector<Circuit>& prep_fids, const std::vector<Circuit>& meas_fids,
                              const std::vector<Circuit>& germs, const DepthSchedule& schedule,
                              const FprPolicy& policy, const std::vector<std::string>& gate_labels);

int circuit_count(const ExperimentDesign& design);

/// L -> number of distinct circuits in buckets up to and including L.
std::map<int, int> count_by_depth(const ExperimentDesign& design);

std::string design_to_json(const ExperimentDesign& design);
ExperimentDesign design_from_json(const std::string& text);
ExperimentDesign load_design(const std::string& path);

/// One label sequence per line.
std::string design_circuits_text(const ExperimentDesign& design);

}  // namespace gstd
