#ifndef FUSIONKIT_ENUMERATED_GROUP_HPP_
#define FUSIONKIT_ENUMERATED_GROUP_HPP_

#include <cstdint>
#include <memory>
#include <vector>

#include "fusionkit/bitset.hpp"
#include "fusionkit/bounds.hpp"
#include "fusionkit/perm_group.hpp"

namespace fusionkit {

using GIdx = std::uint32_t; // element index inside an enumerated ambient group

class EnumeratedGroup;

// Subgroup of an enumerated ambient group: member bit-set over element
// indices plus a generating list.
struct EnumSubgroup {
  const EnumeratedGroup *parent = nullptr;
  Bitset members;
  std::vector<GIdx> gens;

  std::uint64_t order() const { return members.count(); }
  bool contains(GIdx x) const { return members.test(x); }
};

// Full element enumeration of a permutation group in canonical order:
// elements sorted lexicographically by image list, so index 0 is the
// identity.  Immutable after construction.
class EnumeratedGroup {
public:
  EnumeratedGroup(PermGroup group, const Bounds &bounds = Bounds{});

  const PermGroup &group() const { return group_; }
  const Bounds &bounds() const { return bounds_; }
  std::uint64_t size() const { return n_; }
  unsigned degree() const { return degree_; }

  const Point *row(GIdx i) const { return buf_.data() + static_cast<std::size_t>(i) * degree_; }
  Perm element(GIdx i) const {
    return Perm(std::vector<Point>(row(i), row(i) + degree_));
  }
  // -1 when the permutation is not a member.
  std::int64_t index_of(const Point *img) const;
  std::int64_t index_of(const Perm &p) const { return index_of(p.images().data()); }

  GIdx mul(GIdx a, GIdx b) const;
  GIdx inverse(GIdx a) const;
  GIdx conj(GIdx x, GIdx g) const; // g^-1 x g
  unsigned element_order(GIdx a) const;
  std::vector<GIdx> generator_ids() const;

  EnumSubgroup closure(std::vector<GIdx> gens) const;
  EnumSubgroup trivial() const;
  EnumSubgroup whole() const;

  // Filtering scans over the element list.
  EnumSubgroup centralizer_of_elements(const std::vector<GIdx> &xs) const;
  EnumSubgroup centralizer_of(const EnumSubgroup &h) const;
  EnumSubgroup normalizer_of(const EnumSubgroup &h) const;

  std::vector<GIdx> conjugacy_class(GIdx x, std::uint64_t limit) const;

  EnumSubgroup sylow_subgroup(unsigned p) const;
  EnumSubgroup derived_subgroup() const;

private:
  void enumerate();
  void hash_insert(GIdx i);
  std::uint64_t row_hash(const Point *img) const;

  PermGroup group_;
  Bounds bounds_;
  unsigned degree_ = 1;
  std::uint64_t n_ = 1;
  std::vector<Point> buf_;          // n_ * degree_ images, sorted
  std::vector<GIdx> hash_slots_;    // open addressing, 0xffffffff = empty
  std::uint64_t hash_mask_ = 0;
  mutable std::vector<std::uint16_t> order_cache_;
};

// Deterministic short generating list for a member bit-set.
std::vector<GIdx> reduce_enum_generators(const EnumeratedGroup &g, const Bitset &members);

} // namespace fusionkit

#endif
