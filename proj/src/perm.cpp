#include "fusionkit/perm.hpp"

#include <numeric>
#include <ostream>
#include <sstream>

namespace fusionkit {

Perm::Perm(std::vector<Point> images) : img_(std::move(images)) {
  std::vector<bool> seen(img_.size(), false);
  for (Point p : img_) {
    if (p >= img_.size() || seen[p])
      throw PermError("image list is not a bijection");
    seen[p] = true;
  }
}

Perm Perm::from_cycles(unsigned degree,
                       const std::vector<std::vector<unsigned>> &cycles) {
  std::vector<Point> img(degree);
  for (unsigned i = 0; i < degree; ++i) img[i] = static_cast<Point>(i);
  for (const auto &cyc : cycles) {
    for (std::size_t k = 0; k < cyc.size(); ++k) {
      unsigned from = cyc[k];
      unsigned to = cyc[(k + 1) % cyc.size()];
      if (from >= degree || to >= degree) throw PermError("cycle point out of range");
      img[from] = static_cast<Point>(to);
    }
  }
  return Perm(std::move(img));
}

Perm Perm::from_cycles(unsigned degree,
                       std::initializer_list<std::vector<unsigned>> cycles) {
  return from_cycles(degree, std::vector<std::vector<unsigned>>(cycles));
}

unsigned Perm::order() const {
  std::vector<bool> seen(img_.size(), false);
  std::uint64_t ord = 1;
  for (unsigned i = 0; i < img_.size(); ++i) {
    if (seen[i]) continue;
    unsigned len = 0, j = i;
    do {
      seen[j] = true;
      j = img_[j];
      ++len;
    } while (j != i);
    ord = std::lcm<std::uint64_t>(ord, len);
  }
  return static_cast<unsigned>(ord);
}

std::string Perm::to_cycle_string() const {
  std::ostringstream os;
  std::vector<bool> seen(img_.size(), false);
  bool any = false;
  for (unsigned i = 0; i < img_.size(); ++i) {
    if (seen[i] || img_[i] == i) continue;
    any = true;
    os << '(';
    unsigned j = i;
    bool first = true;
    do {
      if (!first) os << ' ';
      os << j;
      first = false;
      seen[j] = true;
      j = img_[j];
    } while (j != i);
    os << ')';
  }
  if (!any) return "()";
  return os.str();
}

std::ostream &operator<<(std::ostream &os, const Perm &p) {
  return os << p.to_cycle_string();
}

} // namespace fusionkit
