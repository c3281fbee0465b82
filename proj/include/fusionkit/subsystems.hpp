#ifndef FUSIONKIT_SUBSYSTEMS_HPP_
#define FUSIONKIT_SUBSYSTEMS_HPP_

#include <functional>
#include <memory>
#include <optional>

#include "fusionkit/fusion.hpp"

namespace fusionkit {

// Uniform hom-set presentation of a fusion system on a small support
// group: the full morphism sets, materialized.  Used for isomorphism
// comparisons, quotient audits and product checks.
// Sorted member list of a subgroup (ascending element ids).
std::vector<Elt> member_listing(const Subgroup &s);

struct FusionFace {
  std::shared_ptr<GroupTable> support;
  std::vector<Subgroup> subgroups; // lattice of the support, canonical order
  // homs[i] = all morphisms with source subgroups[i], as (target id, image
  // vector over the source's sorted member list).
  std::vector<std::vector<std::pair<std::uint32_t, std::vector<Elt>>>> homs;

  std::uint32_t id_of(const Bitset &members) const;
};

// The whole system F as a face (support = S).
FusionFace face_of(const FusionSystem &f);

// Is Q normal in F (p-core criterion: strongly closed, inside every
// essential subgroup, invariant under the essential automorphism groups
// and under Aut_F(S))?
bool is_normal_in_fusion(const FusionSystem &f, SubId q);

// ---- quotient systems ---------------------------------------------------------

class QuotientFusion {
public:
  QuotientFusion(const FusionSystem &f, SubId q); // verifies normality

  const FusionSystem &parent() const { return *parent_; }
  const GroupTable &support() const { return *bar_; }
  const std::vector<Elt> &projection() const { return proj_; }
  FusionFace face() const;

private:
  const FusionSystem *parent_;
  SubId q_;
  std::shared_ptr<GroupTable> bar_;
  std::vector<Elt> proj_; // S -> S/Q
};

// Saturation audit over a materialized face (used for quotients).
FusionSystem::AuditReport face_saturation_audit(const FusionFace &face, unsigned p);

// ---- ambient-realized local subsystems -----------------------------------------

struct LocalSubsystem {
  std::shared_ptr<FusionSystem> system; // fusion of N_G(Q) (resp. C_G(x))
  bool substituted = false;             // a fully normalized conjugate was taken
  SubId anchor = 0;                     // the subgroup actually normalized
};

LocalSubsystem normalizer_subsystem(const FusionSystem &f, SubId q);
LocalSubsystem centralizer_subsystem(const FusionSystem &f, Elt x);

// Parabolic characteristic p: N_F(Q) is constrained for every nontrivial
// Q normal in S.  Subgroups with C_S(Q) <= Q are constrained outright
// (the core of N_F(Q) contains Q); the rest are checked through their
// ambient realizations.
struct ParabolicReport {
  bool parabolic = true;
  std::size_t checked = 0;
  std::size_t fastPath = 0;
  std::string firstFailure;
};
ParabolicReport is_parabolic_char_p(const FusionSystem &f);

// ---- generated subsystems -------------------------------------------------------

// Categorical closure of automorphism generator sets (plus the inner maps
// of the support) under composition and restriction.
class GeneratedSubsystem {
public:
  GeneratedSubsystem(const FusionSystem &f, SubId support,
                     std::vector<std::pair<SubId, std::vector<FMap>>> seeds);

  const FusionSystem &parent() const { return *parent_; }
  SubId support() const { return support_; }
  // Canonical morphism sets from each subgroup of the support.
  const std::vector<FMap> &homs_mod_inner(SubId p) const;
  std::vector<FMap> aut_set(SubId p) const;
  bool equals_parent_on_support() const; // hom sets match F's everywhere
  FusionFace face() const;

private:
  FMap canonical(const FMap &m) const; // mod post-inner of the support
  void close();

  const FusionSystem *parent_;
  SubId support_;
  std::vector<Elt> support_members_;
  std::vector<std::pair<SubId, std::vector<FMap>>> seeds_;
  std::vector<SubId> sources_;                    // subgroups of the support
  std::map<SubId, std::vector<FMap>> homs_;       // per source
};

// O^{p'}(F) and O^p(F) per their generation descriptions; the p-power
// index characterization is re-verified on construction.
struct MinimalSubsystems {
  std::shared_ptr<GeneratedSubsystem> oPPrime; // on S
  std::shared_ptr<GeneratedSubsystem> oP;      // on hyp(F)
  SubId hyperfocal;
  bool oPPrimeIsWhole;
};
MinimalSubsystems minimal_subsystems(const FusionSystem &f);

// ---- comparisons ----------------------------------------------------------------

// A group isomorphism of supports carrying Hom-sets onto Hom-sets, or
// certified absence after exhausting the search space.
std::optional<std::vector<Elt>> fusion_isomorphism(const FusionFace &a,
                                                   const FusionFace &b);

// ---- products -------------------------------------------------------------------

struct FactorizationResult {
  bool decomposable = false;
  SubId q1 = 0, q2 = 0; // strongly closed direct factors of S
};
// Direct factorizations S = Q1 x Q2 with both factors strongly closed and
// every morphism decomposing componentwise.
std::vector<FactorizationResult> direct_factorization(const FusionSystem &f);

// ---- the chain criterion ---------------------------------------------------------

struct ChainVerdict {
  bool preconditionsMet = false;
  bool hypothesisHolds = false;
  bool contained = false;
  std::string detail;
};
ChainVerdict chain_criterion(const FusionSystem &f, SubId e,
                             const std::vector<SubId> &chain, SubId q);

} // namespace fusionkit

#endif
