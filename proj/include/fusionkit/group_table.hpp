#ifndef FUSIONKIT_GROUP_TABLE_HPP_
#define FUSIONKIT_GROUP_TABLE_HPP_

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fusionkit/bitset.hpp"
#include "fusionkit/bounds.hpp"
#include "fusionkit/perm.hpp"

namespace fusionkit {

using Elt = std::uint16_t; // element index inside one enumerated group

// A finite group enumerated as 0..n-1 with a full multiplication table.
// Element 0 is always the identity.  Instances are immutable after
// construction and safe to share between threads.
class GroupTable {
public:
  GroupTable() = default;

  // table[i*n+j] = product of element i by element j (i applied first in
  // whatever realization produced the table; the table itself is the
  // authority).  Throws unless the table is a Latin square with identity 0
  // and associativity holds on the checked sample.
  GroupTable(std::size_t n, std::vector<Elt> table, bool full_assoc_check);

  std::size_t size() const { return n_; }
  Elt mul(Elt a, Elt b) const { return table_[static_cast<std::size_t>(a) * n_ + b]; }
  Elt inv(Elt a) const { return inv_[a]; }
  Elt conj(Elt x, Elt g) const { return mul(mul(inv_[g], x), g); }
  Elt comm(Elt a, Elt b) const { // a^-1 b^-1 a b
    return mul(mul(inv_[a], inv_[b]), mul(a, b));
  }
  unsigned element_order(Elt a) const { return ord_[a]; }
  unsigned exponent() const;

  // Build the closure of a set of permutations as a table group.  The
  // permutation realizing each element index is retained as a label.
  static GroupTable from_perms(const std::vector<Perm> &gens,
                               std::size_t max_size = 65535);
  const std::vector<Perm> &perm_labels() const { return perm_labels_; }
  bool has_perm_labels() const { return !perm_labels_.empty(); }

  std::uint64_t fingerprint_hash() const; // cheap iso-invariant hash

private:
  void finish();

  std::size_t n_ = 0;
  std::vector<Elt> table_;
  std::vector<Elt> inv_;
  std::vector<unsigned> ord_;
  std::vector<Perm> perm_labels_;
};

// A subgroup of a fixed GroupTable, stored as a member bit-set plus a
// deterministic generating list.
struct Subgroup {
  const GroupTable *parent = nullptr;
  Bitset members;
  std::vector<Elt> gens;

  std::size_t order() const { return members.count(); }
  bool contains(Elt x) const { return members.test(x); }
  bool contains(const Subgroup &other) const {
    return other.members.is_subset_of(members);
  }
  friend bool operator==(const Subgroup &a, const Subgroup &b) {
    return a.parent == b.parent && a.members == b.members;
  }
};

// An injective homomorphism between subgroups of (possibly distinct)
// table groups, stored element-wise.  images[x] is defined exactly for
// members of source.
struct Morphism {
  Subgroup source;
  Subgroup target;
  std::vector<std::int32_t> images; // indexed by source-parent element id; -1 outside

  std::int32_t apply(Elt x) const { return images[x]; }
  bool is_identity_map() const;
};

class GroupTableError : public std::runtime_error {
public:
  explicit GroupTableError(const std::string &m) : std::runtime_error(m) {}
};

// ---- subgroup construction -------------------------------------------------

Subgroup trivial_subgroup(const GroupTable &g);
Subgroup full_subgroup(const GroupTable &g);
Subgroup subgroup_closure(const GroupTable &g, const std::vector<Elt> &elems);
Subgroup subgroup_from_members(const GroupTable &g, Bitset members); // verifies closure
Subgroup normal_closure(const GroupTable &g, const std::vector<Elt> &elems);
// Deterministic short generating list for a member set.
std::vector<Elt> reduce_generators(const GroupTable &g, const Bitset &members);

// ---- structure maps ---------------------------------------------------------

Subgroup center(const GroupTable &g);
Subgroup centralizer_in(const Subgroup &ambient, const Subgroup &of);
Subgroup centralizer_in(const Subgroup &ambient, Elt x);
Subgroup normalizer_in(const Subgroup &ambient, const Subgroup &of);
Subgroup derived_subgroup(const Subgroup &h);
Subgroup commutator_subgroup(const Subgroup &a, const Subgroup &b);
Subgroup omega1(const Subgroup &h, unsigned p);
Subgroup agemo1(const Subgroup &h, unsigned p);
Subgroup frattini_p_group(const Subgroup &h, unsigned p); // P' * agemo1(P)
std::vector<Subgroup> lower_central_series(const Subgroup &h);
unsigned nilpotency_class(const Subgroup &h); // 0 = trivial, 1 = abelian, ...
bool is_abelian(const Subgroup &h);
bool is_elementary_abelian(const Subgroup &h, unsigned p);
Subgroup subgroup_product(const Subgroup &a, const Subgroup &b); // set AB (must be a group)
std::uint64_t product_order(const Subgroup &a, const Subgroup &b); // |AB| = |A||B|/|A n B|

Subgroup conjugate_subgroup(const Subgroup &h, Elt g);
// Orbit of a subgroup under conjugation by the group the given elements
// generate (pass parent generators for the full orbit).
std::vector<Bitset> subgroup_conjugates(const Subgroup &h,
                                        const std::vector<Elt> &conj_gens);

std::vector<std::vector<Elt>> conjugacy_classes(const GroupTable &g);

// Sylow p-subgroup of a table group (deterministic).
Subgroup sylow_subgroup_table(const GroupTable &g, unsigned p);

// All subgroups via cyclic extension, sorted by (order, member set).
// Complete for nilpotent groups; rejects non-nilpotent input.
std::vector<Subgroup> all_subgroups(const GroupTable &g, std::uint64_t bound = 512);
std::vector<Subgroup> normal_subgroups(const GroupTable &g, std::uint64_t bound = 512);

// ---- quotients ---------------------------------------------------------------

struct QuotientResult {
  std::shared_ptr<GroupTable> group;
  std::vector<Elt> projection;       // parent element -> quotient element
  std::vector<Elt> section;          // quotient element -> a coset leader
};
// N must be normal in g (verified).
QuotientResult quotient_group(const GroupTable &g, const Subgroup &n);

// ---- morphism helpers --------------------------------------------------------

Morphism identity_morphism(const Subgroup &s);
Morphism compose(const Morphism &first, const Morphism &then); // apply first, then `then`
Morphism restrict_morphism(const Morphism &m, const Subgroup &smaller_source);
std::optional<Morphism> invert_morphism(const Morphism &m); // if bijective onto target
bool is_injective_homomorphism(const Morphism &m);
std::uint64_t morphism_key(const Morphism &m); // hash of (source, images)

} // namespace fusionkit

#endif
