#ifndef FUSIONKIT_PERM_HPP_
#define FUSIONKIT_PERM_HPP_

#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace fusionkit {

using Point = std::uint16_t;

class PermError : public std::runtime_error {
public:
  explicit PermError(const std::string &msg) : std::runtime_error(msg) {}
};

// A permutation of {0,...,degree-1} stored as its image list.
// Composition convention: (a * b) maps x to b[a[x]], i.e. apply a first.
class Perm {
public:
  Perm() = default;

  explicit Perm(unsigned degree) : img_(degree) {
    for (unsigned i = 0; i < degree; ++i) img_[i] = static_cast<Point>(i);
  }

  explicit Perm(std::vector<Point> images);

  // Cycle notation helper, e.g. Perm::from_cycles(5, {{0,1,2},{3,4}}).
  static Perm from_cycles(unsigned degree,
                          std::initializer_list<std::vector<unsigned>> cycles);
  static Perm from_cycles(unsigned degree,
                          const std::vector<std::vector<unsigned>> &cycles);

  unsigned degree() const { return static_cast<unsigned>(img_.size()); }
  Point operator[](unsigned x) const { return img_[x]; }
  const std::vector<Point> &images() const { return img_; }

  bool is_identity() const {
    for (unsigned i = 0; i < img_.size(); ++i)
      if (img_[i] != i) return false;
    return true;
  }

  Perm inverse() const {
    Perm r;
    r.img_.resize(img_.size());
    for (unsigned i = 0; i < img_.size(); ++i) r.img_[img_[i]] = static_cast<Point>(i);
    return r;
  }

  friend Perm operator*(const Perm &a, const Perm &b) {
    Perm r;
    r.img_.resize(a.img_.size());
    for (unsigned i = 0; i < a.img_.size(); ++i) r.img_[i] = b.img_[a.img_[i]];
    return r;
  }

  // b^-1 * a * b
  Perm conjugated_by(const Perm &b) const {
    Perm r;
    r.img_.resize(img_.size());
    for (unsigned i = 0; i < img_.size(); ++i) r.img_[b.img_[i]] = b.img_[img_[i]];
    return r;
  }

  unsigned order() const;

  std::uint64_t hash() const {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (Point p : img_) {
      h ^= p;
      h *= 0x100000001b3ull;
    }
    return h;
  }

  friend bool operator==(const Perm &a, const Perm &b) { return a.img_ == b.img_; }
  friend bool operator!=(const Perm &a, const Perm &b) { return !(a == b); }
  // Lexicographic on image lists; the identity is minimal for its degree.
  friend bool operator<(const Perm &a, const Perm &b) { return a.img_ < b.img_; }

  std::string to_cycle_string() const;

private:
  std::vector<Point> img_;
};

std::ostream &operator<<(std::ostream &os, const Perm &p);

} // namespace fusionkit

#endif
