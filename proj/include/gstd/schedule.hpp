#pragma once

#include <vector>

#include "gstd/circuit.hpp"

namespace gstd {

struct DepthSchedule {
  std::vector<int> maxdepths;

  /// 1, 2, 4, ..., up to and including the largest power of two <= lmax.
  static DepthSchedule powers_of_two(int lmax);

  /// Throws unless nonempty, positive and strictly increasing.
  void validate() const;
  int max() const { return maxdepths.empty() ? 0 : maxdepths.back(); }
  int size() const { return static_cast<int>(maxdepths.size()); }
};

/// Largest p with depth(germ) * p <= L; 0 when the germ is longer than L.
int germ_power(const Circuit& germ, int L);

}  // namespace gstd
