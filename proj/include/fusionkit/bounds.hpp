#ifndef FUSIONKIT_BOUNDS_HPP_
#define FUSIONKIT_BOUNDS_HPP_

#include <cstdint>
#include <stdexcept>
#include <string>

namespace fusionkit {

// Resource tiers.  Full element enumeration backs all fusion quantities;
// groups beyond it but under the ambient bound keep only a stabilizer
// chain (order, membership); anything larger is rejected.
struct Bounds {
  std::uint64_t ambient_order = 10'000'000;
  std::uint64_t enumeration = 2'000'000;
  unsigned max_degree = 4096;
  std::uint64_t lattice = 512;
  std::uint64_t isomorphism = 512;
  std::uint64_t closure_steps = 10'000'000;
};

class BoundExceeded : public std::runtime_error {
public:
  explicit BoundExceeded(const std::string &msg) : std::runtime_error(msg) {}
};

} // namespace fusionkit

#endif
