#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "gstd/circuit.hpp"
#include "gstd/gateset.hpp"

namespace gstd {

struct DeviceParams {
  std::string name;
  double t_1q = 0.0;               // seconds per one-qubit layer
  double t_2q = 0.0;               // seconds per layer containing a two-qubit gate
  double t_measure_reset = 0.0;    // seconds per shot
  double t_latency = 0.0;          // seconds per uploaded batch
  std::int64_t circuits_per_batch = 1;
  std::int64_t shots_per_circuit_per_batch = 1;

  void validate() const;
};

DeviceParams transmon_device();
DeviceParams trapped_ion_device();
DeviceParams simos_device();
/// "transmon", "trapped-ion" or "simos".
DeviceParams device_preset(const std::string& name);

std::string device_to_json(const DeviceParams& d);
DeviceParams device_from_json(const std::string& text);
DeviceParams load_device(const std::string& path);

/// A 16x16 PTM acts on both qubits iff its operator-Schmidt rank across the qubit cut exceeds 1.
bool is_two_qubit_gate(const Matrix& ptm);

/// Labels of gates that act on two qubits (empty for one-qubit models).
std::set<std::string> two_qubit_labels(const GateSet& gs);

/// Each label is one layer; t_2q for labels in `two_qubit`, else t_1q.
double circuit_exec_time(const std::vector<Circuit>& circuits, const std::set<std::string>& two_qubit,
                         std::int64_t shots, const DeviceParams& dev);

/// t_latency * ceil(N_circ / circuits_per_batch) * ceil(N_shots / shots_per_circuit_per_batch).
double upload_time(std::int64_t n_circuits, std::int64_t shots, const DeviceParams& dev);

struct TimeEstimate {
  double t_exec = 0.0;
  double t_upload = 0.0;
  double total = 0.0;
  bool approximate = false;
  std::string note;
};

TimeEstimate estimate(const std::vector<Circuit>& circuits, const std::set<std::string>& two_qubit,
                      std::int64_t shots, const DeviceParams& dev);

/// Approximate mode from summary counts: histogram depth -> circuit count, and the fraction of
/// layers assumed to contain a two-qubit gate.
TimeEstimate estimate_from_counts(const std::map<int, std::int64_t>& depth_histogram, double two_qubit_fraction,
                                  std::int64_t shots, const DeviceParams& dev);

}  // namespace gstd
