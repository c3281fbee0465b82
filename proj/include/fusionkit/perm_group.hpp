#ifndef FUSIONKIT_PERM_GROUP_HPP_
#define FUSIONKIT_PERM_GROUP_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fusionkit/bounds.hpp"
#include "fusionkit/perm.hpp"

namespace fusionkit {

// One level of a stabilizer chain: the orbit of the base point together
// with a transversal (orbit representative words as explicit permutations).
struct ChainLevel {
  unsigned base_point = 0;
  std::vector<Point> orbit;                 // points in discovery order
  std::vector<std::int32_t> where;          // point -> index in orbit, -1 outside
  std::vector<Perm> transversal;            // transversal[i] maps base_point to orbit[i]
  std::vector<Perm> generators;             // generators of this level's group
};

// Permutation group with a verified stabilizer chain.  Order and
// membership are exact; construction is deterministic in the generator
// list.
class PermGroup {
public:
  PermGroup() = default;
  PermGroup(unsigned degree, std::vector<Perm> generators,
            const Bounds &bounds = Bounds{});

  unsigned degree() const { return degree_; }
  const std::vector<Perm> &generators() const { return gens_; }
  std::uint64_t order() const { return order_; }
  bool trivial() const { return order_ == 1; }

  bool contains(const Perm &g) const;

  const std::vector<ChainLevel> &chain() const { return chain_; }

  // Product of transversal lengths; used by the self-check.
  std::uint64_t chain_order() const;

private:
  void build_chain(const Bounds &bounds);
  bool strip(const Perm &g, Perm *residue, std::size_t *level) const;

  unsigned degree_ = 1;
  std::vector<Perm> gens_;
  std::vector<ChainLevel> chain_;
  std::uint64_t order_ = 1;
};

// Text format: `degree N`, `count K`, then K image lines; '#' comments.
PermGroup read_perm_group(std::istream &in, const Bounds &bounds = Bounds{});
PermGroup load_perm_group(const std::string &path, const Bounds &bounds = Bounds{});
void write_perm_group(std::ostream &out, const PermGroup &g,
                      const std::string &comment = "");

} // namespace fusionkit

#endif
