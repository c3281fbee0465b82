#ifndef FUSIONKIT_CLASSIFY_HPP_
#define FUSIONKIT_CLASSIFY_HPP_

#include <memory>
#include <optional>

#include "fusionkit/fusion.hpp"
#include "fusionkit/pgroup.hpp"

namespace fusionkit {

// A finite group acting on an elementary abelian module, both enumerated.
struct ModuleAction {
  std::shared_ptr<GroupTable> group;          // L
  std::shared_ptr<GroupTable> module;         // W (abelian)
  std::vector<std::vector<Elt>> action;       // action[l][w], a right action
};

// The action of O^{p'}(Aut_F(E)) on an essential subgroup E.
ModuleAction essential_module(const FusionSystem &f, SubId essential);

// Searches for a certificate identifying W/C_W(O^p(L)) as the natural
// 2-dimensional SL2(q)-module for L/C_L(W) = SL2(q): an explicit group
// isomorphism to a concretely built SL2(q) together with a compatible
// additive bijection of modules.  Fixed-point sizes of nontrivial
// p-elements (index q) and orbit structure are verified along the way.
std::optional<NaturalModuleData> identify_natural_sl2(const ModuleAction &action,
                                                      unsigned p,
                                                      const Bounds &bounds = Bounds{});

// Mechanical application of the known-system recognition criteria: trivial
// p-core, Sylow shape, and essential structure.
enum class KnownTag { psl3, psp4, none, other };
struct KnownClassification {
  KnownTag tag = KnownTag::other;
  unsigned q = 0;
  std::size_t essentialClasses = 0;
  bool essentialsAreMaxElemAbelian = false;
  std::vector<NaturalModuleData> moduleData; // one per essential class when found
  std::string detail;
};
KnownClassification classify_known(const FusionSystem &f);

// Sylow-2 taxonomy of an ambient group: abelian Sylow, dihedral of order
// 8, class-two rank-2 Lie shape, or nilpotency class at least three.
enum class GGCase { abelian_i, dih8_ii, rank2_iii, classtoobig };
std::string gg_case_name(GGCase c);
struct GGResult {
  GGCase tag = GGCase::classtoobig;
  ShapeTag shape;
  unsigned sylowClass = 0;
  bool crossChecked = false; // classify_known agreed, when applicable
};
GGResult gg_classify(std::shared_ptr<EnumeratedGroup> g, const Bounds &bounds = Bounds{});

} // namespace fusionkit

#endif
