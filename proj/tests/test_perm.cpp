#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>
#include <sstream>

#include "fusionkit/catalog.hpp"
#include "fusionkit/enumerated_group.hpp"
#include "fusionkit/perm_group.hpp"

using namespace fusionkit;

TEST_CASE("perm basics") {
  Perm a = Perm::from_cycles(5, {{0, 1, 2}});
  Perm b = Perm::from_cycles(5, {{1, 2}, {3, 4}});
  CHECK(a.order() == 3);
  CHECK(b.order() == 2);
  CHECK((a * a * a).is_identity());
  CHECK((a * a.inverse()).is_identity());
  // (a*b)[x] = b[a[x]]
  CHECK((a * b)[0] == 2);
  CHECK(a.conjugated_by(b) == b.inverse() * a * b);
  CHECK_THROWS_AS(Perm(std::vector<Point>{0, 0, 1}), PermError);
}

TEST_CASE("trivial and small groups") {
  PermGroup t(1, {});
  CHECK(t.order() == 1);

  PermGroup s4 = symmetric_group(4);
  CHECK(s4.order() == 24);
  CHECK(s4.chain_order() == 24);
  for (const Perm &g : s4.generators()) CHECK(s4.contains(g));
  CHECK_FALSE(symmetric_group(5).contains(Perm(5)) == false);

  PermGroup s6 = symmetric_group(6);
  CHECK(s6.order() == 720);

  PermGroup a6 = alternating_group(6);
  CHECK(a6.order() == 360);
  CHECK_FALSE(a6.contains(Perm::from_cycles(6, {{0, 1}})));

  PermGroup d8 = dihedral_group(8);
  CHECK(d8.order() == 8);
}

TEST_CASE("psl3(2): order via the closed formula, membership") {
  // Independent oracle: |PSL3(q)| = q^3(q^3-1)(q^2-1)/gcd(3,q-1) at q=2.
  std::uint64_t expected = 8ull * (8 - 1) * (4 - 1); // q^3(q^3-1)(q^2-1) at q = 2
  CHECK(expected == 168);
  PermGroup g = build_group(GroupSpec::parse("builtin:psl3:2"));
  CHECK(g.degree() == 7);
  CHECK(g.order() == 168);
}

TEST_CASE("enumeration: canonical element order") {
  PermGroup d8 = dihedral_group(8);
  EnumeratedGroup e(d8);
  CHECK(e.size() == 8);
  CHECK(e.element(0).is_identity());
  // Sorted lexicographically.
  for (GIdx i = 0; i + 1 < e.size(); ++i)
    CHECK(e.element(i) < e.element(i + 1));
  // Index round trip.
  for (GIdx i = 0; i < e.size(); ++i) CHECK(e.index_of(e.element(i)) == i);
}

TEST_CASE("enumeration bound is enforced") {
  Bounds tight;
  tight.enumeration = 100;
  PermGroup s6 = symmetric_group(6);
  CHECK_THROWS_AS(EnumeratedGroup(s6, tight), BoundExceeded);
}

TEST_CASE("centralizer: brute force oracle on Dih(8)") {
  PermGroup d8 = dihedral_group(8);
  EnumeratedGroup e(d8);
  // A non-central reflection: find one (order 2, not commuting with everything).
  GIdx refl = 0;
  for (GIdx i = 1; i < e.size(); ++i) {
    if (e.element_order(i) != 2) continue;
    bool central = true;
    for (GIdx j = 0; j < e.size(); ++j)
      if (e.mul(i, j) != e.mul(j, i)) {
        central = false;
        break;
      }
    if (!central) {
      refl = i;
      break;
    }
  }
  REQUIRE(refl != 0);
  // Oracle: direct loop.
  std::set<GIdx> expect;
  for (GIdx j = 0; j < e.size(); ++j)
    if (e.mul(refl, j) == e.mul(j, refl)) expect.insert(j);
  CHECK(expect.size() == 4);
  EnumSubgroup c = e.centralizer_of_elements({refl});
  CHECK(c.order() == 4);
  for (GIdx j : expect) CHECK(c.contains(j));
  // C_G(identity) = G.
  CHECK(e.centralizer_of_elements({0}).order() == 8);
}

TEST_CASE("normalizer: brute force oracle on Sym(4)") {
  EnumeratedGroup e(symmetric_group(4));
  // H = <(0 1 2 3)>.
  GIdx c4 = static_cast<GIdx>(e.index_of(Perm::from_cycles(4, {{0, 1, 2, 3}})));
  EnumSubgroup h = e.closure({c4});
  CHECK(h.order() == 4);
  // Oracle: elements g with H^g = H by direct check.
  std::size_t count = 0;
  for (GIdx g = 0; g < e.size(); ++g) {
    bool ok = true;
    h.members.for_each([&](std::size_t x) {
      if (!h.members.test(e.conj(static_cast<GIdx>(x), g))) ok = false;
    });
    if (ok) ++count;
  }
  CHECK(count == 8);
  EnumSubgroup n = e.normalizer_of(h);
  CHECK(n.order() == 8);
  // N_G(G) = G.
  CHECK(e.normalizer_of(e.whole()).order() == 24);
}

TEST_CASE("conjugacy classes") {
  EnumeratedGroup s6(symmetric_group(6));
  GIdx t = static_cast<GIdx>(s6.index_of(Perm::from_cycles(6, {{0, 1}})));
  CHECK(s6.conjugacy_class(t, 1 << 20).size() == 15);
  CHECK(s6.conjugacy_class(0, 10).size() == 1);

  EnumeratedGroup l32(build_group(GroupSpec::parse("builtin:psl3:2")));
  // Some involution.
  GIdx inv = 0;
  for (GIdx i = 1; i < l32.size(); ++i)
    if (l32.element_order(i) == 2) {
      inv = i;
      break;
    }
  auto cls = l32.conjugacy_class(inv, 1 << 20);
  CHECK(cls.size() == 21);
  // |class| * |centralizer| = |G|.
  CHECK(cls.size() * l32.centralizer_of_elements({inv}).order() == l32.size());
}

TEST_CASE("sylow subgroups") {
  EnumeratedGroup l32(build_group(GroupSpec::parse("builtin:psl3:2")));
  EnumSubgroup s = l32.sylow_subgroup(2);
  CHECK(s.order() == 8);
  // Self-normalizing (consistent with 21 Sylow 2-subgroups).
  CHECK(l32.normalizer_of(s).order() == 8);

  // Odd-order group at p = 2 gives the trivial subgroup.
  std::vector<unsigned> c7(7);
  for (unsigned i = 0; i < 7; ++i) c7[i] = i;
  EnumeratedGroup z7(PermGroup(7, {Perm::from_cycles(7, {c7})}));
  CHECK(z7.sylow_subgroup(2).order() == 1);
}

TEST_CASE("derived subgroup") {
  EnumeratedGroup s4(symmetric_group(4));
  CHECK(s4.derived_subgroup().order() == 12);
  EnumeratedGroup a6(alternating_group(6));
  CHECK(a6.derived_subgroup().order() == 360);
}

TEST_CASE("group text format round trip") {
  PermGroup g = build_group(GroupSpec::parse("builtin:psl3:2"));
  std::ostringstream out;
  write_perm_group(out, g, "psl3(2) on the Fano plane");
  std::istringstream in(out.str());
  PermGroup h = read_perm_group(in);
  CHECK(h.order() == g.order());
  CHECK(h.degree() == g.degree());

  std::istringstream bad("degree 3\ncount 1\n0 0 1\n");
  CHECK_THROWS(read_perm_group(bad));
}
