#ifndef FUSIONKIT_PGROUP_HPP_
#define FUSIONKIT_PGROUP_HPP_

#include <optional>
#include <string>
#include <vector>

#include "fusionkit/group_table.hpp"

namespace fusionkit {

// Structure profile of a finite p-group.
struct PGroupProfile {
  unsigned prime = 2;
  std::uint64_t order = 1;
  unsigned nilClass = 0;  // 0 trivial, 1 abelian, ...
  Subgroup center;
  Subgroup derived;
  Subgroup frattini;
  Subgroup omega1;
  Subgroup agemo1;
  std::vector<Subgroup> maxElemAbelian; // elementary abelian subgroups of maximal order
  std::size_t involutionCount = 0;      // p = 2 only; at odd p, order-p element count
  bool special = false;                 // center == derived == frattini, nontrivial
};

// Three-valued verdict for the mechanical lemma checkers.  The lemmas are
// implications, so vacuous truth must stay distinguishable from failure.
enum class Verdict { holds, fails, preconditionViolated };

struct CheckReport {
  Verdict verdict = Verdict::preconditionViolated;
  bool hypothesisHolds = false;
  bool conclusionHolds = false;
  std::string detail;
};

PGroupProfile pgroup_profile(const GroupTable &g, unsigned p);

// Maximal-order elementary abelian subgroups, computed both as the
// maximal-order filter and the maximal-rank filter; the two must agree.
std::vector<Subgroup> max_elem_abelian(const GroupTable &g, unsigned p);

// Hypothesis: A, B maximal elementary abelian with AB = S and
// C_B(a) = A n B for all a in A \ (A n B).  Conclusion: {A, B} are the
// only maximal elementary abelian subgroups and every involution lies in
// their union.
CheckReport elementary2_check(const GroupTable &s, const Subgroup &a,
                              const Subgroup &b);

// Hypothesis: S of class two, T = T_1 x ... x T_n normal with pairwise
// isomorphic class-two factors, s outside T permuting the factors.
// Conclusion: s normalizes every factor.
CheckReport nowreath_check(const GroupTable &s,
                           const std::vector<Subgroup> &factors, Elt elem);

// Hypothesis: S a 2-group of class two with P normal and dihedral of
// order 8.  Conclusion: S = P C_S(P).
CheckReport dihcent_check(const GroupTable &s, const Subgroup &p);

// For a Sylow 2-subgroup of PSp4(2^b) and A maximal elementary abelian:
// every R <= S with |RA/A| >= 4 has |[R,A]| = 2^(2b).
struct CommutatorSweep {
  Verdict verdict = Verdict::preconditionViolated;
  std::uint64_t checked = 0;
  std::uint64_t skipped = 0; // |RA/A| < 4
  std::uint64_t derivedOrder = 0;
  std::string detail;
};
CommutatorSweep psp4_commutator_check(const GroupTable &s, const Subgroup &a,
                                      unsigned b);

// Shape tags for Sylow 2-subgroups of the groups in the classification.
enum class Shape {
  abelian,
  dihedral8,
  sylowPSL3,
  sylowPSp4,
  suzuki,
  sylowPSU3,
  other,
};
struct ShapeTag {
  Shape shape = Shape::other;
  unsigned q = 0;
  std::string to_string() const;
};
ShapeTag recognize_shape(const GroupTable &g, const Bounds &bounds = Bounds{});

} // namespace fusionkit

#endif
