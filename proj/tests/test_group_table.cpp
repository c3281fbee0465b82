#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <set>

#include "fusionkit/catalog.hpp"
#include "fusionkit/enumerated_group.hpp"
#include "fusionkit/group_iso.hpp"
#include "fusionkit/group_table.hpp"

using namespace fusionkit;

namespace {
GroupTable table_of(const char *spec) {
  return GroupTable::from_perms(build_group(GroupSpec::parse(spec)).generators());
}
} // namespace

TEST_CASE("table construction and element orders") {
  GroupTable d8 = table_of("builtin:dihedral:8");
  CHECK(d8.size() == 8);
  CHECK(d8.exponent() == 4);
  std::map<unsigned, int> profile;
  for (std::size_t i = 0; i < d8.size(); ++i) ++profile[d8.element_order(static_cast<Elt>(i))];
  CHECK(profile[1] == 1);
  CHECK(profile[2] == 5); // five involutions
  CHECK(profile[4] == 2);

  GroupTable q8 = table_of("builtin:quaternion:8");
  std::map<unsigned, int> qprofile;
  for (std::size_t i = 0; i < q8.size(); ++i) ++qprofile[q8.element_order(static_cast<Elt>(i))];
  CHECK(qprofile[2] == 1); // one involution
}

TEST_CASE("latin square and associativity guards") {
  // A Latin square with identity 0 that is not a group table.
  std::vector<Elt> t = {0, 1, 2, 3, 4,
                        1, 0, 3, 4, 2,
                        2, 4, 0, 1, 3,
                        3, 2, 4, 0, 1,
                        4, 3, 1, 2, 0};
  CHECK_THROWS_AS(GroupTable(5, std::move(t), true), GroupTableError);
}

TEST_CASE("subgroup machinery on Dih(8)") {
  GroupTable d8 = table_of("builtin:dihedral:8");
  Subgroup whole = full_subgroup(d8);
  CHECK(center(d8).order() == 2);
  CHECK(derived_subgroup(whole).order() == 2);
  CHECK(nilpotency_class(whole) == 2);
  CHECK(omega1(whole, 2).order() == 8); // generated by the five involutions
  CHECK(agemo1(whole, 2).order() == 2);

  // Brute-force oracle: closures of all element subsets.
  std::set<std::vector<std::uint32_t>> brute;
  for (unsigned mask = 0; mask < 256; ++mask) {
    std::vector<Elt> gens;
    for (unsigned i = 0; i < 8; ++i)
      if ((mask >> i) & 1) gens.push_back(static_cast<Elt>(i));
    Subgroup s = subgroup_closure(d8, gens);
    brute.insert(s.members.members());
  }
  CHECK(brute.size() == 10);
  auto subs = all_subgroups(d8);
  CHECK(subs.size() == 10);
  // Sorted by order then canonical bit-set; Lagrange and closure hold.
  for (std::size_t i = 1; i < subs.size(); ++i)
    CHECK(!(subs[i].members < subs[i - 1].members));
  for (const auto &s : subs) {
    CHECK(8 % s.order() == 0);
    CHECK_NOTHROW(subgroup_from_members(d8, s.members));
  }
  CHECK(normal_subgroups(d8).size() == 6);
}

TEST_CASE("elementary abelian subgroup counts") {
  // 2^3 has 16 subgroups: 1 + 7 + 7 + 1 by the Gaussian count.
  PermGroup c2(2, {Perm::from_cycles(2, {{0, 1}})});
  GroupTable t =
      GroupTable::from_perms(direct_product(direct_product(c2, c2), c2).generators());
  CHECK(t.size() == 8);
  CHECK(all_subgroups(t).size() == 16);
}

TEST_CASE("quotients") {
  GroupTable d8 = table_of("builtin:dihedral:8");
  Subgroup z = center(d8);
  QuotientResult q = quotient_group(d8, z);
  CHECK(q.group->size() == 4);
  CHECK(is_elementary_abelian(full_subgroup(*q.group), 2)); // D8/Z = 2^2
  for (const auto &s : all_subgroups(d8)) {
    if (s.order() != 2 || z.members == s.members) continue;
    bool normal = true;
    for (std::size_t g0 = 0; g0 < d8.size(); ++g0)
      for (Elt e : s.gens)
        if (!s.members.test(d8.conj(e, static_cast<Elt>(g0)))) normal = false;
    if (!normal) {
      CHECK_THROWS_AS(quotient_group(d8, s), GroupTableError);
      break;
    }
  }
}

TEST_CASE("isomorphism testing") {
  GroupTable d8 = table_of("builtin:dihedral:8");
  GroupTable q8 = table_of("builtin:quaternion:8");
  CHECK(isomorphic(d8, d8));
  CHECK_FALSE(isomorphic(d8, q8)); // involution counts differ: 5 vs 1

  // Sylow 2-subgroup of Alt(6) is dihedral of order 8.
  EnumeratedGroup a6(alternating_group(6));
  EnumSubgroup syl = a6.sylow_subgroup(2);
  std::vector<Perm> gens;
  for (GIdx i : syl.gens) gens.push_back(a6.element(i));
  GroupTable sylt = GroupTable::from_perms(gens);
  CHECK(isomorphic(sylt, d8));

  auto iso = find_isomorphism(sylt, d8);
  REQUIRE(iso.has_value());
  Morphism m;
  m.source = full_subgroup(sylt);
  m.target = full_subgroup(d8);
  m.images.assign(sylt.size(), -1);
  for (std::size_t x = 0; x < sylt.size(); ++x) m.images[x] = (*iso)[x];
  CHECK(is_injective_homomorphism(m));
}

TEST_CASE("isomorphism is reflexive and symmetric on an order <= 64 sample") {
  std::vector<GroupTable> corpus;
  corpus.push_back(table_of("builtin:dihedral:16"));
  corpus.push_back(table_of("builtin:quaternion:16"));
  corpus.push_back(table_of("builtin:dihedral:32"));
  corpus.push_back(GroupTable::from_perms(
      direct_product(dihedral_group(8), dihedral_group(8)).generators()));
  for (const auto &g : corpus) CHECK(isomorphic(g, g));
  for (std::size_t i = 0; i < corpus.size(); ++i)
    for (std::size_t j = i + 1; j < corpus.size(); ++j)
      CHECK(isomorphic(corpus[i], corpus[j]) == isomorphic(corpus[j], corpus[i]));
}

TEST_CASE("morphism helpers") {
  GroupTable d8 = table_of("builtin:dihedral:8");
  for (const auto &s : all_subgroups(d8)) {
    Morphism id = identity_morphism(s);
    CHECK(is_injective_homomorphism(id));
    CHECK(id.is_identity_map());
    auto inv = invert_morphism(id);
    REQUIRE(inv.has_value());
    CHECK(compose(id, *inv).is_identity_map());
  }
}
