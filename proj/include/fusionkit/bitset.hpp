#ifndef FUSIONKIT_BITSET_HPP_
#define FUSIONKIT_BITSET_HPP_

#include <cstdint>
#include <cstddef>
#include <vector>

namespace fusionkit {

// Fixed-capacity bit set over element indices of one enumerated group.
// Word count is decided at construction; all binary operations require
// equal capacity.
class Bitset {
public:
  Bitset() = default;
  explicit Bitset(std::size_t nbits)
      : nbits_(nbits), words_((nbits + 63) / 64, 0) {}

  std::size_t capacity() const { return nbits_; }

  bool test(std::size_t i) const {
    return (words_[i >> 6] >> (i & 63)) & 1u;
  }
  void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::size_t i) {
    words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
  }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(__builtin_popcountll(w));
    return c;
  }

  bool none() const {
    for (auto w : words_)
      if (w) return false;
    return true;
  }

  bool is_subset_of(const Bitset &other) const {
    for (std::size_t k = 0; k < words_.size(); ++k)
      if (words_[k] & ~other.words_[k]) return false;
    return true;
  }

  bool intersects(const Bitset &other) const {
    for (std::size_t k = 0; k < words_.size(); ++k)
      if (words_[k] & other.words_[k]) return true;
    return false;
  }

  Bitset &operator|=(const Bitset &o) {
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] |= o.words_[k];
    return *this;
  }
  Bitset &operator&=(const Bitset &o) {
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= o.words_[k];
    return *this;
  }

  friend Bitset operator|(Bitset a, const Bitset &b) { return a |= b; }
  friend Bitset operator&(Bitset a, const Bitset &b) { return a &= b; }

  friend bool operator==(const Bitset &a, const Bitset &b) {
    return a.nbits_ == b.nbits_ && a.words_ == b.words_;
  }
  friend bool operator!=(const Bitset &a, const Bitset &b) { return !(a == b); }

  // Canonical order: by population count, then lexicographic on words.
  // Gives a deterministic subgroup ordering (order, then member pattern).
  friend bool operator<(const Bitset &a, const Bitset &b) {
    std::size_t ca = a.count(), cb = b.count();
    if (ca != cb) return ca < cb;
    return a.words_ < b.words_;
  }

  std::uint64_t hash() const {
    std::uint64_t h = 0x9e3779b97f4a7c15ull ^ nbits_;
    for (auto w : words_) {
      h ^= w;
      h *= 0x100000001b3ull;
      h ^= h >> 29;
    }
    return h;
  }

  template <typename F>
  void for_each(F &&f) const {
    for (std::size_t k = 0; k < words_.size(); ++k) {
      std::uint64_t w = words_[k];
      while (w) {
        unsigned b = static_cast<unsigned>(__builtin_ctzll(w));
        f(k * 64 + b);
        w &= w - 1;
      }
    }
  }

  std::vector<std::uint32_t> members() const {
    std::vector<std::uint32_t> out;
    out.reserve(count());
    for_each([&](std::size_t i) { out.push_back(static_cast<std::uint32_t>(i)); });
    return out;
  }

private:
  std::size_t nbits_ = 0;
  std::vector<std::uint64_t> words_;
};

} // namespace fusionkit

#endif
