#ifndef FUSIONKIT_GF_HPP_
#define FUSIONKIT_GF_HPP_

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace fusionkit {

// Small finite field with full add/mul tables.  Elements are 0..q-1;
// non-prime fields are F_p[x]/(f) with a fixed irreducible f per field,
// elements encoded as base-p digit strings of their coefficient vectors.
// The fixed polynomials make point labelings, and hence permutation
// images, reproducible across runs.
class GF {
public:
  explicit GF(unsigned q);

  unsigned size() const { return q_; }
  unsigned characteristic() const { return p_; }
  unsigned degree() const { return k_; }

  std::uint8_t add(std::uint8_t a, std::uint8_t b) const { return add_[a * q_ + b]; }
  std::uint8_t sub(std::uint8_t a, std::uint8_t b) const { return add_[a * q_ + neg_[b]]; }
  std::uint8_t neg(std::uint8_t a) const { return neg_[a]; }
  std::uint8_t mul(std::uint8_t a, std::uint8_t b) const { return mul_[a * q_ + b]; }
  std::uint8_t inv(std::uint8_t a) const {
    if (a == 0) throw std::domain_error("division by zero");
    return inv_[a];
  }
  std::uint8_t pow(std::uint8_t a, std::uint64_t e) const;
  // x -> x^p, the field Frobenius.
  std::uint8_t frob(std::uint8_t a) const { return pow(a, p_); }
  // A fixed generator of the multiplicative group.
  std::uint8_t primitive() const { return gen_; }

private:
  unsigned q_ = 0, p_ = 0, k_ = 1;
  std::uint8_t gen_ = 1;
  std::vector<std::uint8_t> add_, mul_, neg_, inv_;
};

} // namespace fusionkit

#endif
