#ifndef FUSIONKIT_COSET_ENUM_HPP_
#define FUSIONKIT_COSET_ENUM_HPP_

#include <cstdint>
#include <vector>

#include "fusionkit/perm.hpp"

namespace fusionkit {

// A word over group generators: value k >= 0 names generator k, value
// k < 0 names the inverse of generator (-k - 1).
using Word = std::vector<int>;

Word inverse_word(const Word &w);

// Coset enumeration (HLT with coincidence processing) for the subgroup
// generated by `subgens` inside the group presented by `relators` on
// `ngens` generators.  Deterministic; throws BoundExceeded when more than
// `max_cosets` rows are needed.
struct CosetEnumeration {
  std::size_t index = 0;               // number of cosets on completion
  std::vector<Perm> action;            // one permutation per generator
};

CosetEnumeration enumerate_cosets(unsigned ngens,
                                  const std::vector<Word> &relators,
                                  const std::vector<Word> &subgens,
                                  std::size_t max_cosets);

// Evaluate a word on permutations.
Perm evaluate_word(const Word &w, const std::vector<Perm> &gens, unsigned degree);

} // namespace fusionkit

#endif
