#include "fusionkit/gf.hpp"

namespace fusionkit {

namespace {

struct FieldDef {
  unsigned q, p, k;
  // Irreducible polynomial coefficients c_0..c_{k-1} of
  // x^k + c_{k-1}x^{k-1} + ... + c_0 (lowest degree first).
  unsigned poly[4];
};

// Conway-style fixed polynomials.
const FieldDef kFields[] = {
    {2, 2, 1, {0, 0, 0, 0}},
    {3, 3, 1, {0, 0, 0, 0}},
    {4, 2, 2, {1, 1, 0, 0}},   // x^2 + x + 1
    {5, 5, 1, {0, 0, 0, 0}},
    {7, 7, 1, {0, 0, 0, 0}},
    {8, 2, 3, {1, 1, 0, 0}},   // x^3 + x + 1
    {9, 3, 2, {2, 2, 0, 0}},   // x^2 + 2x + 2
    {16, 2, 4, {1, 1, 0, 0}},  // x^4 + x + 1
};

} // namespace

GF::GF(unsigned q) {
  const FieldDef *def = nullptr;
  for (const auto &f : kFields)
    if (f.q == q) def = &f;
  if (!def) throw std::domain_error("unsupported field size " + std::to_string(q));
  q_ = q;
  p_ = def->p;
  k_ = def->k;

  auto digits = [&](std::uint8_t a, unsigned *out) {
    for (unsigned i = 0; i < k_; ++i) {
      out[i] = a % p_;
      a = static_cast<std::uint8_t>(a / p_);
    }
  };
  auto undigits = [&](const unsigned *in) {
    unsigned v = 0;
    for (unsigned i = k_; i-- > 0;) v = v * p_ + in[i];
    return static_cast<std::uint8_t>(v);
  };

  add_.resize(q_ * q_);
  mul_.resize(q_ * q_);
  neg_.resize(q_);
  inv_.resize(q_);

  for (unsigned a = 0; a < q_; ++a) {
    unsigned da[4], dn[4];
    digits(static_cast<std::uint8_t>(a), da);
    for (unsigned i = 0; i < k_; ++i) dn[i] = (p_ - da[i]) % p_;
    neg_[a] = undigits(dn);
    for (unsigned b = 0; b < q_; ++b) {
      unsigned db[4], ds[4];
      digits(static_cast<std::uint8_t>(b), db);
      for (unsigned i = 0; i < k_; ++i) ds[i] = (da[i] + db[i]) % p_;
      add_[a * q_ + b] = undigits(ds);

      // Polynomial product reduced by the defining polynomial.
      unsigned prod[8] = {0};
      for (unsigned i = 0; i < k_; ++i)
        for (unsigned j = 0; j < k_; ++j)
          prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
      for (unsigned d = 2 * k_ - 2; d >= k_ && d < 8; --d) {
        unsigned c = prod[d];
        if (c) {
          prod[d] = 0;
          for (unsigned i = 0; i < k_; ++i)
            prod[d - k_ + i] = (prod[d - k_ + i] + c * (p_ - def->poly[i]) % p_) % p_;
        }
        if (d == k_) break;
      }
      mul_[a * q_ + b] = undigits(prod);
    }
  }
  for (unsigned a = 1; a < q_; ++a)
    for (unsigned b = 1; b < q_; ++b)
      if (mul_[a * q_ + b] == 1) inv_[a] = static_cast<std::uint8_t>(b);

  // Smallest multiplicative generator.
  for (unsigned g = 1; g < q_; ++g) {
    unsigned seen = 0;
    std::uint8_t x = 1;
    do {
      x = mul_[x * q_ + g];
      ++seen;
    } while (x != 1);
    if (seen == q_ - 1) {
      gen_ = static_cast<std::uint8_t>(g);
      break;
    }
  }
}

std::uint8_t GF::pow(std::uint8_t a, std::uint64_t e) const {
  std::uint8_t r = 1;
  std::uint8_t base = a;
  while (e) {
    if (e & 1) r = mul(r, base);
    base = mul(base, base);
    e >>= 1;
  }
  return r;
}

} // namespace fusionkit
