#ifndef FUSIONKIT_CATALOG_HPP_
#define FUSIONKIT_CATALOG_HPP_

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fusionkit/bounds.hpp"
#include "fusionkit/group_table.hpp"
#include "fusionkit/perm_group.hpp"

namespace fusionkit {

enum class Family {
  psl3,
  psp4,
  psl2,
  sl2,
  psu3,
  sz,
  alt,
  sym,
  dihedral,
  quaternion,
  extraspecial,
  catalog_id,
  file,
};

struct GroupSpec {
  Family family;
  unsigned q = 0;       // field size or degree or group order, per family
  unsigned aux = 0;     // extraspecial exponent selector / catalog index
  std::string path;     // file family

  // Syntax: builtin:<family>:<param>[:<param>], catalog:<order>:<index>,
  // file:<path> or a bare path.
  static GroupSpec parse(const std::string &text);
  std::string to_string() const;
};

class CatalogError : public std::runtime_error {
public:
  explicit CatalogError(const std::string &m) : std::runtime_error(m) {}
};

// Faithful permutation representation per the family's natural action;
// the constructed order is checked against the closed-form order formula.
PermGroup build_group(const GroupSpec &spec, const Bounds &bounds = Bounds{});

// Expected order by formula (throws for file/catalog specs).
std::uint64_t expected_order(const GroupSpec &spec);

// Sylow 2-subgroup in the natural matrix form, as a standalone permutation
// group in the same action as build_group(spec).  Supported for the Lie
// families (psl3, psp4, psl2, sl2, psu3, sz).
PermGroup build_sylow_2_standalone(const GroupSpec &spec, const Bounds &bounds = Bounds{});

// Helpers used by tests and the verification suites.
PermGroup symmetric_group(unsigned n, const Bounds &bounds = Bounds{});
PermGroup alternating_group(unsigned n, const Bounds &bounds = Bounds{});
PermGroup dihedral_group(unsigned order, const Bounds &bounds = Bounds{});
// Disjoint-action direct product.
PermGroup direct_product(const PermGroup &a, const PermGroup &b,
                         const Bounds &bounds = Bounds{});

// Search for a small generating subset realizing the same group;
// deterministic, used to keep enumeration costs down.
PermGroup shrink_generating_set(const PermGroup &g, const Bounds &bounds = Bounds{});

// ---- small-groups catalog ----------------------------------------------------

struct CatalogEntry {
  unsigned order = 0;
  unsigned index = 0;
  std::shared_ptr<GroupTable> table;
  std::string provenance;
};

// Format: header `smallgroups v1`; per group `group <order> <index>` then
// <order> rows of <order> element indices.  Loading re-derives the Latin
// square and associativity checks and verifies the expected counts for
// orders 16, 32 and 64 (14, 51 and 267).
std::vector<CatalogEntry> load_catalog(const std::string &path);
std::vector<CatalogEntry> read_catalog(std::istream &in);
void write_catalog(std::ostream &out, const std::vector<CatalogEntry> &entries);

std::vector<CatalogEntry>
catalog_search(const std::vector<CatalogEntry> &entries,
               const std::function<bool(const CatalogEntry &)> &predicate);

} // namespace fusionkit

#endif
