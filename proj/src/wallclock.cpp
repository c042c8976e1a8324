#include "gstd/wallclock.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

#include "gstd/error.hpp"

namespace gstd {

using nlohmann::json;

void DeviceParams::validate() const {
  if (!(t_1q > 0 && t_2q > 0 && t_measure_reset > 0 && t_latency > 0)) {
    throw Error(ErrorKind::InvalidArgument, "device times must be positive");
  }
  if (circuits_per_batch < 1 || shots_per_circuit_per_batch < 1) {
    throw Error(ErrorKind::InvalidArgument, "device batch sizes must be positive");
  }
}

DeviceParams transmon_device() { return {"transmon", 20e-9, 200e-9, 1e-6, 1.0, 100, 100}; }

DeviceParams trapped_ion_device() { return {"trapped-ion", 10e-6, 200e-6, 3.5e-3, 1.0, 200, 100}; }

DeviceParams simos_device() { return {"simos", 0.5e-6, 1e-6, 200e-6, 300.0, 2500, 100}; }

DeviceParams device_preset(const std::string& name) {
  if (name == "transmon") return transmon_device();
  if (name == "trapped-ion") return trapped_ion_device();
  if (name == "simos") return simos_device();
  throw Error(ErrorKind::InvalidArgument, "unknown device preset '" + name + "'");
}

std::string device_to_json(const DeviceParams& d) {
  json j;
  j["name"] = d.name;
  j["t_1q"] = d.t_1q;
  j["t_2q"] = d.t_2q;
  j["t_measure_reset"] = d.t_measure_reset;
  j["t_latency"] = d.t_latency;
  j["circuits_per_batch"] = d.circuits_per_batch;
  j["shots_per_circuit_per_batch"] = d.shots_per_circuit_per_batch;
  return j.dump(1);
}

DeviceParams device_from_json(const std::string& text) {
  try {
    const json j = json::parse(text);
    DeviceParams d;
    d.name = j.value("name", "");
    d.t_1q = j.at("t_1q").get<double>();
    d.t_2q = j.at("t_2q").get<double>();
    d.t_measure_reset = j.at("t_measure_reset").get<double>();
    d.t_latency = j.at("t_latency").get<double>();
    d.circuits_per_batch = j.at("circuits_per_batch").get<std::int64_t>();
    d.shots_per_circuit_per_batch = j.at("shots_per_circuit_per_batch").get<std::int64_t>();
    d.validate();
    return d;
  } catch (const json::exception& ex) {
    throw Error(ErrorKind::InvalidFile, std::string("device JSON is malformed: ") + ex.what());
  } catch (const Error& ex) {
    throw Error(ErrorKind::InvalidFile, ex.what());
  }
}

DeviceParams load_device(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidFile, "cannot open device file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return device_from_json(ss.str());
}

bool is_two_qubit_gate(const Matrix& ptm) {
  if (ptm.rows() != 16 || ptm.cols() != 16) return false;
  // Realign R[(a0 a1),(b0 b1)] into M[(a0 b0),(a1 b1)].
  Matrix m(16, 16);
  for (int a = 0; a < 16; ++a) {
    for (int b = 0; b < 16; ++b) m((a / 4) * 4 + b / 4, (a % 4) * 4 + b % 4) = ptm(a, b);
  }
  return numerical_rank(m) > 1;
}

std::set<std::string> two_qubit_labels(const GateSet& gs) {
  std::set<std::string> out;
  for (const auto& kv : gs.gates) {
    if (is_two_qubit_gate(kv.second)) out.insert(kv.first);
  }
  return out;
}

double circuit_exec_time(const std::vector<Circuit>& circuits, const std::set<std::string>& two_qubit,
                         std::int64_t shots, const DeviceParams& dev) {
  double total = 0.0;
  for (const auto& c : circuits) {
    double layers = 0.0;
    for (const auto& l : c.labels) layers += two_qubit.count(l) ? dev.t_2q : dev.t_1q;
    total += static_cast<double>(shots) * (dev.t_measure_reset + layers);
  }
  return total;
}

double upload_time(std::int64_t n_circuits, std::int64_t shots, const DeviceParams& dev) {
  if (shots < 1) throw Error(ErrorKind::InvalidArgument, "shot count must be positive");
  if (n_circuits <= 0) return 0.0;
  const std::int64_t batches = (n_circuits + dev.circuits_per_batch - 1) / dev.circuits_per_batch;
  const std::int64_t rounds = (shots + dev.shots_per_circuit_per_batch - 1) / dev.shots_per_circuit_per_batch;
  return dev.t_latency * static_cast<double>(batches * rounds);
}

TimeEstimate estimate(const std::vector<Circuit>& circuits, const std::set<std::string>& two_qubit,
                      std::int64_t shots, const DeviceParams& dev) {
  TimeEstimate t;
  t.t_exec = circuit_exec_time(circuits, two_qubit, shots, dev);
  t.t_upload = upload_time(static_cast<std::int64_t>(circuits.size()), shots, dev);
  t.total = t.t_exec + t.t_upload;
  return t;
}

TimeEstimate estimate_from_counts(const std::map<int, std::int64_t>& depth_histogram, double two_qubit_fraction,
                                  std::int64_t shots, const DeviceParams& dev) {
  if (!(two_qubit_fraction >= 0.0 && two_qubit_fraction <= 1.0)) {
    throw Error(ErrorKind::InvalidArgument, "two-qubit fraction must lie in [0, 1]");
  }
  TimeEstimate t;
  t.approximate = true;
  const double layer = two_qubit_fraction * dev.t_2q + (1.0 - two_qubit_fraction) * dev.t_1q;
  std::int64_t n = 0;
  for (const auto& [depth, count] : depth_histogram) {
    t.t_exec += static_cast<double>(count) * static_cast<double>(shots) * (dev.t_measure_reset + depth * layer);
    n += count;
  }
  t.t_upload = upload_time(n, shots, dev);
  t.total = t.t_exec + t.t_upload;
  t.note = "each circuit assumed to have as many layers as its histogram depth; a fraction " +
           std::to_string(two_qubit_fraction) + " of layers charged at the two-qubit time";
  return t;
}

}  // namespace gstd
