#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fusionkit/catalog.hpp"
#include "fusionkit/extensions.hpp"
#include "fusionkit/group_iso.hpp"

using namespace fusionkit;

namespace {
GroupTable table_of(const char *spec) {
  return GroupTable::from_perms(build_group(GroupSpec::parse(spec)).generators());
}
GroupTable cyclic_table(unsigned n) {
  std::vector<unsigned> cyc(n);
  for (unsigned i = 0; i < n; ++i) cyc[i] = i;
  return GroupTable::from_perms(PermGroup(n, {Perm::from_cycles(n, {cyc})}).generators());
}
} // namespace

TEST_CASE("cocycle space dimensions") {
  {
    // Brute-force oracle over the four-entry function space: normalized
    // cocycles f on C2 are determined by f(x,x), so dim Z^2 = 1 and the
    // two extensions are C4 and C2 x C2.
    GroupTable c2 = cyclic_table(2);
    CocycleSpace space = cocycle_space(c2, 2, 1);
    CHECK(space.coord_dim() == 1);
    CHECK(space.coboundaryBasis.empty());
    CHECK(space.h2Dimension == 1);
  }
  {
    GroupTable c1(1, {0}, true);
    CocycleSpace space = cocycle_space(c1, 2, 1);
    CHECK(space.h2Dimension == 0);
  }
  {
    PermGroup c2(2, {Perm::from_cycles(2, {{0, 1}})});
    GroupTable v4 = GroupTable::from_perms(direct_product(c2, c2).generators());
    CocycleSpace space = cocycle_space(v4, 2, 1);
    CHECK(space.h2Dimension == 3);
    // Cross-check: exactly four isomorphism classes of central extensions
    // of V4 by C2.
    auto found = enumerate_extensions(v4, 2, 1, [](const GroupTable &) { return true; });
    CHECK(found.size() == 4);
    // They are C2^3, C4 x C2, D8 and Q8.
    GroupTable d8 = table_of("builtin:dihedral:8");
    GroupTable q8 = table_of("builtin:quaternion:8");
    int abelian = 0, dihedral = 0, quaternion = 0;
    for (const auto &ext : found) {
      if (is_abelian(full_subgroup(*ext.group))) ++abelian;
      else if (isomorphic(*ext.group, d8)) ++dihedral;
      else if (isomorphic(*ext.group, q8)) ++quaternion;
    }
    CHECK(abelian == 2);
    CHECK(dihedral == 1);
    CHECK(quaternion == 1);
  }
}

TEST_CASE("extension construction") {
  GroupTable d8 = table_of("builtin:dihedral:8");
  CocycleSpace space = cocycle_space(d8, 2, 1);
  // The zero vector yields the direct product.
  std::vector<std::uint8_t> zero(space.coord_dim(), 0);
  ExtensionGroup ext = build_extension(space, zero);
  CHECK(ext.group->size() == 16);
  CHECK(ext.centerCopy.order() == 2);
  // Direct product: the centre has order 4 (Z(D8) x C2).
  CHECK(center(*ext.group).order() == 4);

  // Some extension of Dih(8) by C2 has nilpotency class three.
  bool found_class3 = false;
  auto exts = enumerate_extensions(d8, 2, 1, [](const GroupTable &) { return true; });
  for (const auto &e : exts) {
    auto series = lower_central_series(full_subgroup(*e.group));
    if (series.back().order() == 1 && series.size() == 4) found_class3 = true;
  }
  CHECK(found_class3);

  CHECK_THROWS_AS(build_extension(space, std::vector<std::uint8_t>(3, 0)),
                  GroupTableError);
}

TEST_CASE("cohomologous cocycles give isomorphic extensions") {
  PermGroup c2(2, {Perm::from_cycles(2, {{0, 1}})});
  GroupTable v4 = GroupTable::from_perms(direct_product(c2, c2).generators());
  CocycleSpace space = cocycle_space(v4, 2, 1);
  REQUIRE(!space.h2Reps.empty());
  // Pick one H^2 representative and add every coboundary basis vector;
  // all results must be isomorphic.
  std::size_t rep_pos = 0;
  for (std::size_t i = 0; i < space.coordBasis.size(); ++i)
    if (space.coordBasis[i] == space.h2Reps[0]) rep_pos = i;
  std::vector<std::uint8_t> coeffs(space.coord_dim(), 0);
  coeffs[rep_pos] = 1;
  ExtensionGroup baseline = build_extension(space, coeffs);
  for (std::size_t cb = 0; cb < space.coboundaryBasis.size(); ++cb) {
    // Locate the coboundary inside the cocycle basis coordinates by
    // solving nothing: shift via a fresh space whose cocycle is the sum.
    std::vector<std::uint8_t> f = space.h2Reps[0];
    for (std::size_t j = 0; j < f.size(); ++j)
      f[j] = static_cast<std::uint8_t>(f[j] ^ space.coboundaryBasis[cb][j]);
    // Express f over the basis by brute force (dimension is tiny).
    std::size_t dim = space.coord_dim();
    bool matched = false;
    for (std::uint64_t mask = 0; mask < (1ull << dim) && !matched; ++mask) {
      std::vector<std::uint8_t> sum(f.size(), 0);
      for (std::size_t i = 0; i < dim; ++i)
        if ((mask >> i) & 1)
          for (std::size_t j = 0; j < f.size(); ++j)
            sum[j] = static_cast<std::uint8_t>(sum[j] ^ space.coordBasis[i][j]);
      if (sum != f) continue;
      matched = true;
      std::vector<std::uint8_t> shifted(dim, 0);
      for (std::size_t i = 0; i < dim; ++i) shifted[i] = (mask >> i) & 1;
      ExtensionGroup other = build_extension(space, shifted);
      CHECK(isomorphic(*baseline.group, *other.group));
    }
    CHECK(matched);
  }
}

TEST_CASE("constantly false predicate yields nothing") {
  GroupTable d8 = table_of("builtin:dihedral:8");
  auto found = enumerate_extensions(d8, 2, 1, [](const GroupTable &) { return false; });
  CHECK(found.empty());
}

TEST_CASE("quotient of every built extension recovers the base") {
  GroupTable q8 = table_of("builtin:quaternion:8");
  CocycleSpace space = cocycle_space(q8, 2, 1);
  // Deterministic sample of coefficient vectors.
  std::uint64_t seed = 0x9e3779b97f4a7c15ull;
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<std::uint8_t> coeffs(space.coord_dim());
    for (auto &c : coeffs) {
      seed = seed * 6364136223846793005ull + 1442695040888963407ull;
      c = (seed >> 40) & 1;
    }
    // build_extension verifies the quotient internally and throws on
    // mismatch.
    CHECK_NOTHROW(build_extension(space, coeffs));
  }
}
