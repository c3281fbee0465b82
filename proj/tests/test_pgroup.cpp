#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fusionkit/catalog.hpp"
#include "fusionkit/enumerated_group.hpp"
#include "fusionkit/group_iso.hpp"
#include "fusionkit/pgroup.hpp"

using namespace fusionkit;

namespace {
GroupTable table_of(const char *spec) {
  return GroupTable::from_perms(build_group(GroupSpec::parse(spec)).generators());
}
GroupTable sylow_table(const char *spec) {
  return GroupTable::from_perms(
      build_sylow_2_standalone(GroupSpec::parse(spec)).generators(), 1 << 12);
}
} // namespace

TEST_CASE("profiles of the basic groups") {
  {
    PermGroup c2(2, {Perm::from_cycles(2, {{0, 1}})});
    GroupTable e8 = GroupTable::from_perms(
        direct_product(direct_product(c2, c2), c2).generators());
    PGroupProfile p = pgroup_profile(e8, 2);
    CHECK(p.nilClass == 1);
    CHECK(p.center.order() == 8);
    CHECK(p.maxElemAbelian.size() == 1);
    CHECK(p.maxElemAbelian[0].order() == 8);
  }
  {
    GroupTable d8 = table_of("builtin:dihedral:8");
    PGroupProfile p = pgroup_profile(d8, 2);
    CHECK(p.nilClass == 2);
    CHECK(p.center.order() == 2);
    CHECK(p.derived.order() == 2);
    CHECK(p.maxElemAbelian.size() == 2); // two fours groups
    for (const auto &a : p.maxElemAbelian) CHECK(a.order() == 4);
    CHECK(p.involutionCount == 5);
    CHECK(p.special); // Z = S' = Phi of order 2
  }
  {
    // Sylow 2 of PSL3(4): special of order 64 with |Z| = |S'| = |Phi| = 4.
    GroupTable s = sylow_table("builtin:psl3:4");
    PGroupProfile p = pgroup_profile(s, 2);
    CHECK(p.order == 64);
    CHECK(p.nilClass == 2);
    CHECK(p.center.order() == 4);
    CHECK(p.derived.order() == 4);
    CHECK(p.frattini.order() == 4);
    CHECK(p.special);
  }
  CHECK_THROWS_AS(pgroup_profile(table_of("builtin:extraspecial:7:p"), 2),
                  GroupTableError);
}

TEST_CASE("sylow profiles across the classical families") {
  // |S| = q^3 with Z = S' = Phi of order q for psl3, q in {2,4,8};
  // |S| = q^4 with |Z| = |S'| = q^2 for psp4, q in {2,4}.
  for (unsigned q : {2u, 4u, 8u}) {
    GroupSpec spec;
    spec.family = Family::psl3;
    spec.q = q;
    GroupTable s = GroupTable::from_perms(build_sylow_2_standalone(spec).generators(),
                                          1 << 12);
    PGroupProfile p = pgroup_profile(s, 2);
    CHECK(p.order == static_cast<std::uint64_t>(q) * q * q);
    CHECK(p.center.order() == q);
    CHECK(p.derived.order() == q);
    CHECK(p.frattini.order() == q);
  }
  for (unsigned q : {2u, 4u}) {
    GroupSpec spec;
    spec.family = Family::psp4;
    spec.q = q;
    GroupTable s = GroupTable::from_perms(build_sylow_2_standalone(spec).generators(),
                                          1 << 12);
    PGroupProfile p = pgroup_profile(s, 2);
    CHECK(p.order == static_cast<std::uint64_t>(q) * q * q * q);
    CHECK(p.center.order() == static_cast<std::uint64_t>(q) * q);
    // |S'| = q^2 = 2^{2b} needs b >= 2; at q = 2 the Sylow is Dih(8) x 2
    // with derived subgroup of order 2.
    CHECK(p.derived.order() == (q == 2 ? 2u : q * q));
  }
}

TEST_CASE("two maximal elementary abelian subgroups hypothesis") {
  {
    GroupTable d8 = table_of("builtin:dihedral:8");
    auto maxes = max_elem_abelian(d8, 2);
    REQUIRE(maxes.size() == 2);
    CheckReport r = elementary2_check(d8, maxes[0], maxes[1]);
    CHECK(r.verdict == Verdict::holds);
    CHECK(r.hypothesisHolds);
    CHECK(r.conclusionHolds);
  }
  {
    // A = B = S for elementary abelian 2^2: vacuous-true hypothesis.
    PermGroup c2(2, {Perm::from_cycles(2, {{0, 1}})});
    GroupTable v4 = GroupTable::from_perms(direct_product(c2, c2).generators());
    auto maxes = max_elem_abelian(v4, 2);
    REQUIRE(maxes.size() == 1);
    CheckReport r = elementary2_check(v4, maxes[0], maxes[0]);
    CHECK(r.verdict == Verdict::holds);
    CHECK(r.conclusionHolds);
  }
  {
    GroupTable s = sylow_table("builtin:psp4:4");
    auto maxes = max_elem_abelian(s, 2);
    REQUIRE(maxes.size() == 2);
    CHECK(maxes[0].order() == 64);
    CheckReport r = elementary2_check(s, maxes[0], maxes[1]);
    CHECK(r.verdict == Verdict::holds);
    CHECK(r.hypothesisHolds);
    CHECK(r.conclusionHolds);
  }
}

TEST_CASE("dihedral centralizer product") {
  GroupTable d8 = table_of("builtin:dihedral:8");
  {
    // S = P: the centralizer is the centre and PC_S(P) = S trivially.
    Subgroup whole = full_subgroup(d8);
    CheckReport r = dihcent_check(d8, whole);
    CHECK(r.verdict == Verdict::holds);
  }
  {
    // S = Dih(8) x C4, P the dihedral factor.
    std::vector<unsigned> c4(4);
    for (unsigned i = 0; i < 4; ++i) c4[i] = i;
    PermGroup s = direct_product(dihedral_group(8), PermGroup(4, {Perm::from_cycles(4, {c4})}));
    GroupTable t = GroupTable::from_perms(s.generators());
    // The factor: elements fixing the second block.
    std::vector<Elt> gens;
    for (std::size_t x = 0; x < t.size(); ++x) {
      bool fixes = true;
      for (unsigned i = 4; i < 8; ++i)
        if (t.perm_labels()[x][i] != i) fixes = false;
      if (fixes) gens.push_back(static_cast<Elt>(x));
    }
    Subgroup p = subgroup_closure(t, gens);
    REQUIRE(p.order() == 8);
    CheckReport r = dihcent_check(t, p);
    CHECK(r.verdict == Verdict::holds);
  }
  {
    // Precondition violation: P not dihedral.
    GroupTable q8 = table_of("builtin:quaternion:8");
    CheckReport r = dihcent_check(q8, full_subgroup(q8));
    CHECK(r.verdict == Verdict::preconditionViolated);
  }
}

TEST_CASE("commutator sweep skips small quotient subgroups") {
  GroupTable s = sylow_table("builtin:psp4:4");
  auto maxes = max_elem_abelian(s, 2);
  REQUIRE(maxes.size() == 2);
  CommutatorSweep sweep = psp4_commutator_check(s, maxes[0], 2);
  CHECK(sweep.verdict == Verdict::holds);
  CHECK(sweep.derivedOrder == 16);
  CHECK(sweep.checked > 0);
  CHECK(sweep.skipped > 0); // e.g. R = A itself has RA/A trivial
}

TEST_CASE("shape recognition") {
  CHECK(recognize_shape(sylow_table("builtin:sz:8")).to_string() == "suzuki(8)");
  CHECK(recognize_shape(sylow_table("builtin:psu3:4")).to_string() == "sylowPSU3(4)");
  CHECK(recognize_shape(sylow_table("builtin:psl3:4")).to_string() == "sylowPSL3(4)");
  CHECK(recognize_shape(sylow_table("builtin:psp4:4")).to_string() == "sylowPSp4(4)");
  {
    // Sylow of Alt(6) tags as dihedral, not as sylowPSL3(2).
    EnumeratedGroup a6(alternating_group(6));
    EnumSubgroup syl = a6.sylow_subgroup(2);
    std::vector<Perm> gens;
    for (GIdx i : syl.gens) gens.push_back(a6.element(i));
    CHECK(recognize_shape(GroupTable::from_perms(gens)).shape == Shape::dihedral8);
  }
  {
    PermGroup c2(2, {Perm::from_cycles(2, {{0, 1}})});
    GroupTable v4 = GroupTable::from_perms(direct_product(c2, c2).generators());
    CHECK(recognize_shape(v4).shape == Shape::abelian);
  }
  {
    // An order-64 group matching no reference: Dih(8) x Dih(8).
    GroupTable t = GroupTable::from_perms(
        direct_product(dihedral_group(8), dihedral_group(8)).generators());
    CHECK(recognize_shape(t).shape == Shape::other);
  }
}
