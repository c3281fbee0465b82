#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "fusionkit/catalog.hpp"
#include "fusionkit/enumerated_group.hpp"
#include "fusionkit/fusion.hpp"
#include "fusionkit/group_iso.hpp"

using namespace fusionkit;

TEST_CASE("spec parsing") {
  GroupSpec s = GroupSpec::parse("builtin:psl3:4");
  CHECK(s.family == Family::psl3);
  CHECK(s.q == 4);
  CHECK(s.to_string() == "builtin:psl3:4");
  CHECK(GroupSpec::parse("catalog:64:12").family == Family::catalog_id);
  CHECK(GroupSpec::parse("file:x/y.grp").path == "x/y.grp");
  CHECK_THROWS_AS(GroupSpec::parse("builtin:nope:3"), CatalogError);
}

TEST_CASE("classical orders match the closed formulas") {
  struct Row {
    const char *spec;
    unsigned degree;
    std::uint64_t order;
  };
  // Orders evaluated independently from the standard polynomials.
  const Row rows[] = {
      {"builtin:psl3:2", 7, 168},      {"builtin:psl3:4", 21, 20160},
      {"builtin:psl2:8", 9, 504},      {"builtin:psl2:9", 10, 360},
      {"builtin:psp4:2", 15, 720},     {"builtin:psu3:4", 65, 62400},
      {"builtin:sz:8", 65, 29120},     {"builtin:sl2:4", 16, 60},
      {"builtin:dihedral:8", 4, 8},    {"builtin:quaternion:8", 8, 8},
      {"builtin:extraspecial:7:p", 343, 343},
  };
  for (const Row &r : rows) {
    PermGroup g = build_group(GroupSpec::parse(r.spec));
    CHECK_MESSAGE(g.degree() == r.degree, r.spec);
    CHECK_MESSAGE(g.order() == r.order, r.spec);
  }
}

TEST_CASE("unsupported parameters are rejected") {
  CHECK_THROWS_AS(build_group(GroupSpec::parse("builtin:sz:4")), CatalogError);
  CHECK_THROWS_AS(build_group(GroupSpec::parse("builtin:psp4:3")), CatalogError);
  CHECK_THROWS_AS(build_group(GroupSpec::parse("builtin:quaternion:6")), CatalogError);
  CHECK_THROWS(build_group(GroupSpec::parse("builtin:psl3:16"))); // order beyond bounds
}

TEST_CASE("direct sylow construction profiles") {
  // |S| = q^3 for psl3/psu3, q^2 for sz, q^4 for psp4.
  CHECK(build_sylow_2_standalone(GroupSpec::parse("builtin:psl3:4")).order() == 64);
  CHECK(build_sylow_2_standalone(GroupSpec::parse("builtin:psl3:8")).order() == 512);
  CHECK(build_sylow_2_standalone(GroupSpec::parse("builtin:psp4:4")).order() == 256);
  CHECK(build_sylow_2_standalone(GroupSpec::parse("builtin:psu3:4")).order() == 64);
  CHECK(build_sylow_2_standalone(GroupSpec::parse("builtin:sz:8")).order() == 64);
  CHECK(build_sylow_2_standalone(GroupSpec::parse("builtin:psl2:8")).order() == 8);
  CHECK_THROWS_AS(build_sylow_2_standalone(GroupSpec::parse("builtin:alt:6")),
                  CatalogError);
}

TEST_CASE("direct sylow is conjugate to the computed one") {
  for (const char *spec : {"builtin:psl3:2", "builtin:psl3:4", "builtin:sz:8"}) {
    auto g = std::make_shared<EnumeratedGroup>(build_group(GroupSpec::parse(spec)));
    PermGroup direct = build_sylow_2_standalone(GroupSpec::parse(spec));
    FusionSystem f(g, 2);
    // The direct construction lives in the same ambient action; its
    // member set must be G-conjugate to the engine's Sylow subgroup, i.e.
    // the transporter between them is nonempty.
    std::vector<GIdx> direct_ids;
    EnumSubgroup handle;
    handle.parent = g.get();
    handle.members = Bitset(g->size());
    for (const Perm &p : direct.generators()) {
      std::int64_t idx = g->index_of(p);
      REQUIRE(idx >= 0);
      handle.gens.push_back(static_cast<GIdx>(idx));
    }
    EnumSubgroup closure = g->closure(handle.gens);
    CHECK(closure.order() == f.sylow_order());
    // Sylow subgroups are conjugate, so the canonical one contains a
    // conjugate of every generator set; verify via a direct scan witness.
    bool conjugate = false;
    for (GIdx x = 0; x < g->size() && !conjugate; ++x) {
      bool all_in = true;
      for (GIdx s : handle.gens)
        if (!f.sylow_in_ambient().members.test(g->conj(s, x))) {
          all_in = false;
          break;
        }
      conjugate = all_in;
    }
    CHECK(conjugate);
  }
}

TEST_CASE("psp4(2) is symmetric of degree six") {
  // The order-720 faithful degree-15 action is abstractly Sym(6); checked
  // through the isomorphism machinery on the full 720-element tables.
  Bounds big;
  big.isomorphism = 1024;
  PermGroup sp = build_group(GroupSpec::parse("builtin:psp4:2"));
  GroupTable a = GroupTable::from_perms(sp.generators(), 1024);
  GroupTable b = GroupTable::from_perms(symmetric_group(6).generators(), 1024);
  CHECK(isomorphic(a, b));
}

TEST_CASE("catalog file round trip and guards") {
  // A tiny catalog: C2 and C4 tables.
  std::vector<CatalogEntry> entries;
  {
    CatalogEntry e;
    e.order = 2;
    e.index = 1;
    e.table = std::make_shared<GroupTable>(2, std::vector<Elt>{0, 1, 1, 0}, true);
    entries.push_back(e);
  }
  std::ostringstream out;
  write_catalog(out, entries);
  // Counts are enforced for the real fixture orders only; this tiny file
  // lacks them, so the loader must reject it.
  std::istringstream in(out.str());
  CHECK_THROWS_AS(read_catalog(in), CatalogError);

  std::istringstream empty("");
  CHECK_THROWS_AS(read_catalog(empty), CatalogError);
  std::istringstream nohdr("group 2 1\n0 1\n1 0\n");
  CHECK_THROWS_AS(read_catalog(nohdr), CatalogError);
}

TEST_CASE("the shipped small-groups fixture loads and verifies") {
  const char *env = std::getenv("FUSIONKIT_FIXTURES");
  std::string dir = env ? env : "data";
  auto entries = load_catalog(dir + "/smallgroups.dat");
  std::map<unsigned, unsigned> counts;
  for (const auto &e : entries) ++counts[e.order];
  CHECK(counts[16] == 14);
  CHECK(counts[32] == 51);
  CHECK(counts[64] == 267);

  // Round trip is the identity on tables.
  std::ostringstream out;
  write_catalog(out, entries);
  std::istringstream in(out.str());
  auto again = read_catalog(in);
  REQUIRE(again.size() == entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) {
    CHECK(again[i].order == entries[i].order);
    CHECK(again[i].index == entries[i].index);
    bool same = again[i].table->size() == entries[i].table->size();
    for (std::size_t x = 0; same && x < again[i].table->size(); ++x)
      for (std::size_t y = 0; same && y < again[i].table->size(); ++y)
        if (again[i].table->mul(static_cast<Elt>(x), static_cast<Elt>(y)) !=
            entries[i].table->mul(static_cast<Elt>(x), static_cast<Elt>(y)))
          same = false;
    CHECK(same);
  }

  // Deterministic search: abelian groups of order 16.  The oracle count
  // is the number of partitions of 4.
  auto abelian16 = catalog_search(entries, [](const CatalogEntry &e) {
    return e.order == 16 && is_abelian(full_subgroup(*e.table));
  });
  CHECK(abelian16.size() == 5);
  auto nothing = catalog_search(entries, [](const CatalogEntry &) { return false; });
  CHECK(nothing.empty());
}
