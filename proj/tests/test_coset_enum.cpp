#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fusionkit/coset_enum.hpp"
#include "fusionkit/perm_group.hpp"

using namespace fusionkit;

namespace {
Word inv(int g) { return {-g - 1}; }
} // namespace

TEST_CASE("cyclic group") {
  // <a | a^5> over the trivial subgroup.
  CosetEnumeration c = enumerate_cosets(1, {{0, 0, 0, 0, 0}}, {}, 1000);
  CHECK(c.index == 5);
}

TEST_CASE("sym(3)") {
  std::vector<Word> rels{{0, 0}, {1, 1}, {0, 1, 0, 1, 0, 1}};
  CHECK(enumerate_cosets(2, rels, {}, 1000).index == 6);
  CHECK(enumerate_cosets(2, rels, {{0}}, 1000).index == 3);
  CHECK(enumerate_cosets(2, rels, {{0}, {1}}, 1000).index == 1);
}

TEST_CASE("quaternion group") {
  // <a, b | a^4, a^2 = b^2, b^-1 a b = a^-1>
  std::vector<Word> rels{
      {0, 0, 0, 0},
      {0, 0, -1 - 1, -1 - 1},          // a^2 b^-2
      {-1 - 1, 0, 1, 0},               // b^-1 a b a
  };
  CosetEnumeration c = enumerate_cosets(2, rels, {}, 1000);
  CHECK(c.index == 8);
  PermGroup g(static_cast<unsigned>(c.index), c.action);
  CHECK(g.order() == 8);
}

TEST_CASE("psl(3,2) from the classic two-generator presentation") {
  // <a, b | a^2, b^3, (ab)^7, [a,b]^4>
  Word comm = {-0 - 1, -1 - 1, 0, 1};
  std::vector<Word> rels{{0, 0}, {1, 1, 1}};
  Word ab7;
  for (int k = 0; k < 7; ++k) {
    ab7.push_back(0);
    ab7.push_back(1);
  }
  rels.push_back(ab7);
  Word c4;
  for (int k = 0; k < 4; ++k) c4.insert(c4.end(), comm.begin(), comm.end());
  rels.push_back(c4);
  CosetEnumeration c = enumerate_cosets(2, rels, {}, 200000);
  CHECK(c.index == 168);
  PermGroup g(static_cast<unsigned>(c.index), c.action);
  CHECK(g.order() == 168);
  // Inverse-word evaluation sanity.
  Perm w = evaluate_word({0, 1, 0}, c.action, static_cast<unsigned>(c.index));
  Perm winv = evaluate_word(inverse_word({0, 1, 0}), c.action, static_cast<unsigned>(c.index));
  CHECK((w * winv).is_identity());
}

TEST_CASE("overflow raises") {
  // Free product C2 * C3 is infinite.
  CHECK_THROWS_AS(enumerate_cosets(2, {{0, 0}, {1, 1, 1}}, {}, 500), BoundExceeded);
}
