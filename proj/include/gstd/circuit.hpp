#pragma once

#include <optional>
#include <string>
#include <vector>

namespace gstd {

/// Where a circuit came from inside a plaquette grid: F_j g_k^p H_i.
struct CircuitStructure {
  int prep_fiducial = -1;
  int germ = -1;
  int power = 0;
  int meas_fiducial = -1;
  bool operator==(const CircuitStructure&) const = default;
};

struct Circuit {
  std::vector<std::string> labels;
  std::optional<CircuitStructure> structure;

  Circuit() = default;
  Circuit(std::vector<std::string> l) : labels(std::move(l)) {}
  Circuit(std::initializer_list<std::string> l) : labels(l) {}

  int depth() const { return static_cast<int>(labels.size()); }
  bool empty() const { return labels.empty(); }

  /// Identity is the label sequence only.
  bool operator==(const Circuit& o) const { return labels == o.labels; }
  bool operator<(const Circuit& o) const { return labels < o.labels; }

  /// Space separated labels; the empty circuit is "{}".
  std::string str() const;
  static Circuit parse(const std::string& text);

  Circuit operator+(const Circuit& o) const;
  Circuit repeated(int p) const;
};

}  // namespace gstd
