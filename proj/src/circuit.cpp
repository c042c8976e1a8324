#include "gstd/circuit.hpp"

#include <algorithm>
#include <sstream>

namespace gstd {

std::string Circuit::str() const {
  if (labels.empty()) return "{}";
  std::string out;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (i) out += ' ';
    out += labels[i];
  }
  return out;
}

Circuit Circuit::parse(const std::string& text) {
  Circuit c;
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) {
    if (tok == "{}") continue;
    c.labels.push_back(tok);
  }
  return c;
}

Circuit Circuit::operator+(const Circuit& o) const {
  Circuit c(labels);
  c.labels.insert(c.labels.end(), o.labels.begin(), o.labels.end());
  return c;
}

Circuit Circuit::repeated(int p) const {
  Circuit c;
  c.labels.reserve(labels.size() * std::max(p, 0));
  for (int i = 0; i < p; ++i) c.labels.insert(c.labels.end(), labels.begin(), labels.end());
  return c;
}

}  // namespace gstd
