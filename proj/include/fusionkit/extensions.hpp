#ifndef FUSIONKIT_EXTENSIONS_HPP_
#define FUSIONKIT_EXTENSIONS_HPP_

#include <functional>
#include <memory>
#include <vector>

#include "fusionkit/group_table.hpp"

namespace fusionkit {

// Normalized 2-cocycles P x P -> Z for Z elementary abelian of order
// prime^zdim, as the solution space of the cocycle identity over the
// prime field.  Each basis function is stored per Z-coordinate as a flat
// |P|^2 table of F_p values.
struct CocycleSpace {
  const GroupTable *base = nullptr;
  unsigned prime = 2;
  unsigned zdim = 1;
  // Single-coordinate spaces; the Z-valued space is their zdim-fold sum.
  std::vector<std::vector<std::uint8_t>> coordBasis;      // Z^2(P, F_p)
  std::vector<std::vector<std::uint8_t>> coboundaryBasis; // B^2(P, F_p)
  std::vector<std::vector<std::uint8_t>> h2Reps;          // complement representatives
  unsigned h2Dimension = 0; // dim Z^2 - dim B^2 for the full Z

  std::size_t coord_dim() const { return coordBasis.size(); }
};

// A central extension realized on pairs (p, z); multiplication
// (a,x)(b,y) = (ab, x + y + f(a,b)).
struct ExtensionGroup {
  std::shared_ptr<GroupTable> group;
  std::vector<std::uint8_t> cocycle; // zdim coordinates, each |P|^2 values
  unsigned prime = 2;
  unsigned zdim = 1;
  Subgroup centerCopy;      // the central Z inside group
  std::size_t baseOrder = 0;
};

CocycleSpace cocycle_space(const GroupTable &p, unsigned prime, unsigned zdim,
                           const Bounds &bounds = Bounds{});

// coeffs has one F_p coefficient per (coordinate, coordBasis) pair, i.e.
// length zdim * coord_dim().
ExtensionGroup build_extension(const CocycleSpace &space,
                               const std::vector<std::uint8_t> &coeffs);

// One representative per isomorphism class of central extensions of P by
// Z satisfying the predicate, in deterministic order.
std::vector<ExtensionGroup>
enumerate_extensions(const GroupTable &p, unsigned prime, unsigned zdim,
                     const std::function<bool(const GroupTable &)> &predicate,
                     const Bounds &bounds = Bounds{});

} // namespace fusionkit

#endif
