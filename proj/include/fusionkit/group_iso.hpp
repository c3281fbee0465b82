#ifndef FUSIONKIT_GROUP_ISO_HPP_
#define FUSIONKIT_GROUP_ISO_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "fusionkit/group_table.hpp"

namespace fusionkit {

// Isomorphism-invariant profile used as a pre-filter: groups with
// different fingerprints are never isomorphic.
struct Fingerprint {
  std::uint64_t order = 0;
  unsigned exponent = 0;
  std::vector<std::pair<unsigned, unsigned>> order_profile; // (element order, count)
  std::uint64_t center_order = 0;
  std::uint64_t derived_order = 0;
  int nilpotency = -1; // -1 when not nilpotent
  std::vector<std::uint64_t> class_sizes; // sorted conjugacy class sizes

  friend bool operator==(const Fingerprint &a, const Fingerprint &b) {
    return a.order == b.order && a.exponent == b.exponent &&
           a.order_profile == b.order_profile && a.center_order == b.center_order &&
           a.derived_order == b.derived_order && a.nilpotency == b.nilpotency &&
           a.class_sizes == b.class_sizes;
  }
  friend bool operator!=(const Fingerprint &a, const Fingerprint &b) {
    return !(a == b);
  }
};

Fingerprint fingerprint(const GroupTable &g);

// Refined per-element invariants, comparable across groups (identical
// computation on both sides).
std::vector<std::uint64_t> element_signatures(const GroupTable &g, unsigned rounds = 3);

// Re-enumerate a subgroup as a standalone table group.  Second component
// maps new element ids back to parent ids.
std::pair<GroupTable, std::vector<Elt>> subgroup_as_table(const Subgroup &h);

// Visit isomorphisms a -> b as full image vectors (indexed by a-element).
// The callback returns true to stop the search.  Returns true iff some
// isomorphism was visited and accepted, false after exhausting the space.
bool for_each_isomorphism(const GroupTable &a, const GroupTable &b,
                          const std::function<bool(const std::vector<Elt> &)> &visit);

// First isomorphism in the deterministic search order, if any.
std::optional<std::vector<Elt>> find_isomorphism(const GroupTable &a,
                                                 const GroupTable &b);

bool isomorphic(const GroupTable &a, const GroupTable &b);
bool isomorphic_subgroups(const Subgroup &a, const Subgroup &b);

} // namespace fusionkit

#endif
