#include "gstd/schedule.hpp"

#include "gstd/error.hpp"

namespace gstd {

DepthSchedule DepthSchedule::powers_of_two(int lmax) {
  if (lmax < 1) throw Error(ErrorKind::InvalidArgument, "maximum depth must be at least 1");
  DepthSchedule s;
  for (long long L = 1; L <= lmax; L *= 2) s.maxdepths.push_back(static_cast<int>(L));
  return s;
}

void DepthSchedule::validate() const {
  if (maxdepths.empty()) throw Error(ErrorKind::InvalidArgument, "depth schedule is empty");
  for (std::size_t i = 0; i < maxdepths.size(); ++i) {
    if (maxdepths[i] < 1) throw Error(ErrorKind::InvalidArgument, "depths must be positive");
    if (i > 0 && maxdepths[i] <= maxdepths[i - 1]) {
      throw Error(ErrorKind::InvalidArgument, "depths must be strictly increasing");
    }
  }
}

int germ_power(const Circuit& germ, int L) {
  if (germ.depth() < 1) throw Error(ErrorKind::InvalidArgument, "germ must contain at least one gate");
  if (L < 1) return 0;
  return L / germ.depth();
}

}  // namespace gstd
