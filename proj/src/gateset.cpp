#include "gstd/gateset.hpp"

#include <cmath>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "gstd/error.hpp"
#include "gstd/pauli.hpp"

namespace gstd {

using nlohmann::json;

const ParamBlock& ParameterMap::block(const std::string& label) const {
  for (const auto& b : blocks) {
    if (b.label == label) return b;
  }
  throw Error(ErrorKind::UnknownLabel, "no parameter block named '" + label + "'");
}

bool ParameterMap::has(const std::string& label) const {
  for (const auto& b : blocks) {
    if (b.label == label) return true;
  }
  return false;
}

std::vector<ParamCoord> ParameterMap::entries() const {
  std::vector<ParamCoord> out;
  out.reserve(size);
  int dim = 0;
  for (const auto& b : blocks) {
    if (b.label == "prep") dim = b.size + 1;
  }
  for (const auto& b : blocks) {
    if (b.label == "prep") {
      for (int i = 0; i < b.size; ++i) out.push_back({b.label, i + 1, -1});
    } else if (b.label == "meas") {
      for (int i = 0; i < b.size; ++i) out.push_back({b.label, i % dim, i / dim});
    } else {
      for (int i = 0; i < b.size; ++i) out.push_back({b.label, 1 + i / dim, i % dim});
    }
  }
  return out;
}

Vector trace_covector(int dim) {
  Vector v = Vector::Zero(dim);
  const double d = std::sqrt(static_cast<double>(dim));
  v(0) = std::sqrt(d);
  return v;
}

int GateSet::num_qubits() const { return qubits_for_dim(dim); }

int GateSet::hilbert_dim() const { return static_cast<int>(std::lround(std::sqrt(static_cast<double>(dim)))); }

std::vector<std::string> GateSet::labels() const {
  std::vector<std::string> out;
  for (const auto& kv : gates) out.push_back(kv.first);
  return out;
}

const Matrix& GateSet::gate(const std::string& label) const {
  auto it = gates.find(label);
  if (it == gates.end()) throw Error(ErrorKind::UnknownLabel, "unknown gate label '" + label + "'");
  return it->second;
}

ParameterMap GateSet::param_map() const {
  ParameterMap pm;
  int off = 0;
  const int per_gate = (dim - 1) * dim;
  for (const auto& kv : gates) {
    pm.blocks.push_back({kv.first, off, per_gate});
    off += per_gate;
  }
  pm.blocks.push_back({"prep", off, dim - 1});
  off += dim - 1;
  const int meas = (num_outcomes() - 1) * dim;
  pm.blocks.push_back({"meas", off, meas});
  off += meas;
  pm.size = off;
  return pm;
}

int GateSet::num_params() const {
  return static_cast<int>(gates.size()) * (dim - 1) * dim + (dim - 1) + (num_outcomes() - 1) * dim;
}

int GateSet::num_gate_params() const { return static_cast<int>(gates.size()) * (dim - 1) * dim; }

Vector GateSet::to_vector() const {
  Vector theta(num_params());
  int off = 0;
  for (const auto& kv : gates) {
    for (int r = 1; r < dim; ++r) {
      for (int c = 0; c < dim; ++c) theta(off++) = kv.second(r, c);
    }
  }
  for (int a = 1; a < dim; ++a) theta(off++) = prep(a);
  for (int e = 0; e + 1 < num_outcomes(); ++e) {
    for (int a = 0; a < dim; ++a) theta(off++) = effects[e](a);
  }
  return theta;
}

GateSet GateSet::from_vector(const Vector& theta) const {
  if (theta.size() != num_params()) {
    throw Error(ErrorKind::DimensionMismatch, "parameter vector has length " + std::to_string(theta.size()) +
                                                  ", expected " + std::to_string(num_params()));
  }
  GateSet out;
  out.dim = dim;
  int off = 0;
  for (const auto& kv : gates) {
    Matrix g = Matrix::Zero(dim, dim);
    g(0, 0) = 1.0;
    for (int r = 1; r < dim; ++r) {
      for (int c = 0; c < dim; ++c) g(r, c) = theta(off++);
    }
    out.gates.emplace(kv.first, std::move(g));
  }
  out.prep = Vector::Zero(dim);
  out.prep(0) = 1.0 / std::sqrt(static_cast<double>(hilbert_dim()));
  for (int a = 1; a < dim; ++a) out.prep(a) = theta(off++);
  Vector last = trace_covector(dim);
  for (int e = 0; e + 1 < num_outcomes(); ++e) {
    Vector v(dim);
    for (int a = 0; a < dim; ++a) v(a) = theta(off++);
    last -= v;
    out.effects.push_back(std::move(v));
  }
  out.effects.push_back(std::move(last));
  return out;
}

void GateSet::validate(double tol) const {
  if (dim <= 0) throw Error(ErrorKind::DimensionMismatch, "gate set dimension must be positive");
  qubits_for_dim(dim);
  if (gates.empty()) throw Error(ErrorKind::InvalidArgument, "gate set has no gates");
  for (const auto& kv : gates) {
    if (kv.second.rows() != dim || kv.second.cols() != dim) {
      throw Error(ErrorKind::DimensionMismatch, "gate '" + kv.first + "' has wrong shape");
    }
    if (!kv.second.allFinite()) throw Error(ErrorKind::Numerical, "gate '" + kv.first + "' has non-finite entries");
    for (int c = 0; c < dim; ++c) {
      const double want = c == 0 ? 1.0 : 0.0;
      if (std::abs(kv.second(0, c) - want) > tol) {
        throw Error(ErrorKind::InvalidArgument, "gate '" + kv.first + "' is not trace preserving");
      }
    }
  }
  if (prep.size() != dim) throw Error(ErrorKind::DimensionMismatch, "prep has wrong length");
  if (std::abs(prep(0) - 1.0 / std::sqrt(static_cast<double>(hilbert_dim()))) > tol) {
    throw Error(ErrorKind::InvalidArgument, "prep does not have unit trace");
  }
  if (effects.size() < 2) throw Error(ErrorKind::InvalidArgument, "measurement needs at least two effects");
  Vector sum = Vector::Zero(dim);
  for (const auto& e : effects) {
    if (e.size() != dim) throw Error(ErrorKind::DimensionMismatch, "effect has wrong length");
    sum += e;
  }
  if ((sum - trace_covector(dim)).cwiseAbs().maxCoeff() > 1e-9) {
    throw Error(ErrorKind::InvalidArgument, "effects do not sum to the identity");
  }
}

void GateSet::check_circuit(const Circuit& c) const {
  for (const auto& l : c.labels) {
    if (!gates.count(l)) throw Error(ErrorKind::UnknownLabel, "unknown gate label '" + l + "'");
  }
}

namespace {

json vec_json(const Vector& v) {
  json a = json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

Vector json_vec(const json& a, int dim, const std::string& what) {
  if (!a.is_array() || static_cast<int>(a.size()) != dim) {
    throw Error(ErrorKind::InvalidFile, what + " must be an array of length " + std::to_string(dim));
  }
  Vector v(dim);
  for (int i = 0; i < dim; ++i) v(i) = a[i].get<double>();
  return v;
}

}  // namespace

std::string gateset_to_json(const GateSet& gs) {
  json j;
  j["dim"] = gs.dim;
  j["convention"] = "pauli-normalized";
  json g = json::object();
  for (const auto& kv : gs.gates) {
    json rows = json::array();
    for (int r = 0; r < gs.dim; ++r) {
      json row = json::array();
      for (int c = 0; c < gs.dim; ++c) row.push_back(kv.second(r, c));
      rows.push_back(row);
    }
    g[kv.first] = rows;
  }
  j["gates"] = g;
  j["prep"] = vec_json(gs.prep);
  json e = json::array();
  for (const auto& v : gs.effects) e.push_back(vec_json(v));
  j["effects"] = e;
  return j.dump(1);
}

GateSet gateset_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& ex) {
    throw Error(ErrorKind::InvalidFile, std::string("gate set JSON parse error: ") + ex.what());
  }
  try {
    GateSet gs;
    if (j.contains("convention") && j["convention"] != "pauli-normalized") {
      throw Error(ErrorKind::InvalidFile, "unsupported basis convention");
    }
    gs.dim = j.at("dim").get<int>();
    for (const auto& [label, rows] : j.at("gates").items()) {
      Matrix m(gs.dim, gs.dim);
      if (!rows.is_array() || static_cast<int>(rows.size()) != gs.dim) {
        throw Error(ErrorKind::InvalidFile, "gate '" + label + "' must have " + std::to_string(gs.dim) + " rows");
      }
      for (int r = 0; r < gs.dim; ++r) m.row(r) = json_vec(rows[r], gs.dim, "gate row").transpose();
      gs.gates.emplace(label, std::move(m));
    }
    gs.prep = json_vec(j.at("prep"), gs.dim, "prep");
    for (const auto& e : j.at("effects")) gs.effects.push_back(json_vec(e, gs.dim, "effect"));
    gs.validate(1e-9);
    return gs;
  } catch (const json::exception& ex) {
    throw Error(ErrorKind::InvalidFile, std::string("gate set JSON is malformed: ") + ex.what());
  } catch (const Error& ex) {
    throw Error(ErrorKind::InvalidFile, ex.what());
  }
}

GateSet load_gateset(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidFile, "cannot open gate set file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return gateset_from_json(ss.str());
}

void save_gateset(const GateSet& gs, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::InvalidFile, "cannot write '" + path + "'");
  out << gateset_to_json(gs) << "\n";
}

}  // namespace gstd
