#include "fusionkit/extensions.hpp"

#include <algorithm>
#include <unordered_map>

#include "fusionkit/group_iso.hpp"

namespace fusionkit {

namespace {

// Incremental row reduction over F_p, rows as dense uint8 vectors.
struct RowSpace {
  unsigned p;
  std::size_t width;
  std::vector<std::vector<std::uint8_t>> rows; // reduced, pivot order
  std::vector<std::size_t> pivots;

  explicit RowSpace(unsigned p_, std::size_t w) : p(p_), width(w) {}

  static std::uint8_t inv_mod(unsigned a, unsigned p) {
    for (unsigned x = 1; x < p; ++x)
      if (a * x % p == 1) return static_cast<std::uint8_t>(x);
    return 0;
  }

  // Reduces r in place; returns true (and stores) when independent.
  bool add(std::vector<std::uint8_t> &r) {
    for (std::size_t k = 0; k < rows.size(); ++k) {
      std::uint8_t c = r[pivots[k]];
      if (c) {
        // r -= c * rows[k]
        for (std::size_t j = 0; j < width; ++j)
          r[j] = static_cast<std::uint8_t>((r[j] + (p - c) * rows[k][j]) % p);
      }
    }
    std::size_t piv = width;
    for (std::size_t j = 0; j < width; ++j)
      if (r[j]) {
        piv = j;
        break;
      }
    if (piv == width) return false;
    std::uint8_t s = inv_mod(r[piv], p);
    for (std::size_t j = 0; j < width; ++j)
      r[j] = static_cast<std::uint8_t>(r[j] * s % p);
    rows.push_back(r);
    pivots.push_back(piv);
    return true;
  }

  bool contains(std::vector<std::uint8_t> r) const {
    for (std::size_t k = 0; k < rows.size(); ++k) {
      std::uint8_t c = r[pivots[k]];
      if (c)
        for (std::size_t j = 0; j < width; ++j)
          r[j] = static_cast<std::uint8_t>((r[j] + (p - c) * rows[k][j]) % p);
    }
    for (std::uint8_t v : r)
      if (v) return false;
    return true;
  }
};

// Bit-packed variant for p = 2.
struct RowSpace2 {
  std::size_t width, words;
  std::vector<std::vector<std::uint64_t>> rows;
  std::vector<std::size_t> pivots;

  explicit RowSpace2(std::size_t w) : width(w), words((w + 63) / 64) {}

  bool add(std::vector<std::uint64_t> &r) {
    for (std::size_t k = 0; k < rows.size(); ++k) {
      std::size_t piv = pivots[k];
      if ((r[piv >> 6] >> (piv & 63)) & 1)
        for (std::size_t j = 0; j < words; ++j) r[j] ^= rows[k][j];
    }
    std::size_t piv = width;
    for (std::size_t j = 0; j < words && piv == width; ++j)
      if (r[j]) piv = j * 64 + static_cast<std::size_t>(__builtin_ctzll(r[j]));
    if (piv >= width) return false;
    rows.push_back(r);
    pivots.push_back(piv);
    return true;
  }

  bool contains(std::vector<std::uint64_t> r) const {
    for (std::size_t k = 0; k < rows.size(); ++k) {
      std::size_t piv = pivots[k];
      if ((r[piv >> 6] >> (piv & 63)) & 1)
        for (std::size_t j = 0; j < words; ++j) r[j] ^= rows[k][j];
    }
    for (auto w : r)
      if (w) return false;
    return true;
  }
};

std::vector<std::uint8_t> unpack_row(const std::vector<std::uint64_t> &r,
                                     std::size_t width) {
  std::vector<std::uint8_t> out(width, 0);
  for (std::size_t j = 0; j < width; ++j)
    out[j] = static_cast<std::uint8_t>((r[j >> 6] >> (j & 63)) & 1);
  return out;
}

} // namespace

CocycleSpace cocycle_space(const GroupTable &p, unsigned prime, unsigned zdim,
                           const Bounds &bounds) {
  (void)bounds;
  if (p.size() > 64) throw BoundExceeded("cocycle base group exceeds 64 elements");
  if (zdim < 1 || zdim > 2) throw BoundExceeded("center dimension must be 1 or 2");
  std::size_t n = p.size();
  std::size_t width = n * n;

  CocycleSpace space;
  space.base = &p;
  space.prime = prime;
  space.zdim = zdim;

  // The cocycle identity f(a,b) + f(ab,c) = f(b,c) + f(a,bc) is linear in
  // the |P|^2 unknowns; normalized cocycles also satisfy f(1,x) = f(x,1) = 0.
  // Solve once per Z-coordinate (the coordinates are independent).
  auto idx = [n](std::size_t a, std::size_t b) { return a * n + b; };

  // The kernel of the constraint matrix is computed by eliminating the
  // span of the constraint rows, then extracting a nullspace basis.
  // We instead build the solution space directly: start from indicator
  // candidates and keep those satisfying all equations...  At this size a
  // cleaner route is elimination on the transposed system: collect the
  // row space of all equations and take its annihilator.
  if (prime == 2) {
    RowSpace2 eq(width);
    std::vector<std::uint64_t> row((width + 63) / 64, 0);
    auto setbit = [&](std::size_t j) { row[j >> 6] ^= 1ull << (j & 63); };
    // Normalization rows.
    for (std::size_t x = 0; x < n; ++x) {
      std::fill(row.begin(), row.end(), 0);
      setbit(idx(0, x));
      eq.add(row);
      std::fill(row.begin(), row.end(), 0);
      setbit(idx(x, 0));
      eq.add(row);
    }
    for (std::size_t a = 1; a < n; ++a)
      for (std::size_t b = 1; b < n; ++b)
        for (std::size_t c = 1; c < n; ++c) {
          std::fill(row.begin(), row.end(), 0);
          setbit(idx(a, b));
          setbit(idx(p.mul(static_cast<Elt>(a), static_cast<Elt>(b)), c));
          setbit(idx(b, c));
          setbit(idx(a, p.mul(static_cast<Elt>(b), static_cast<Elt>(c))));
          eq.add(row);
        }
    // Nullspace via standard back-substitution on the reduced row space.
    // Free columns parametrize the solution space.
    std::vector<char> is_pivot(width, 0);
    for (std::size_t piv : eq.pivots) is_pivot[piv] = 1;
    for (std::size_t free_col = 0; free_col < width; ++free_col) {
      if (is_pivot[free_col]) continue;
      std::vector<std::uint8_t> sol(width, 0);
      sol[free_col] = 1;
      // Walk reduced rows in reverse pivot order to satisfy each equation.
      for (std::size_t k = eq.rows.size(); k-- > 0;) {
        std::size_t piv = eq.pivots[k];
        unsigned acc = 0;
        const auto &r = eq.rows[k];
        for (std::size_t j = 0; j < width; ++j)
          if (j != piv && ((r[j >> 6] >> (j & 63)) & 1)) acc ^= sol[j];
        sol[piv] = static_cast<std::uint8_t>(acc);
      }
      space.coordBasis.push_back(std::move(sol));
    }
  } else {
    RowSpace eq(prime, width);
    std::vector<std::uint8_t> row(width, 0);
    for (std::size_t x = 0; x < n; ++x) {
      std::fill(row.begin(), row.end(), 0);
      row[idx(0, x)] = 1;
      eq.add(row);
      std::fill(row.begin(), row.end(), 0);
      row[idx(x, 0)] = 1;
      eq.add(row);
    }
    for (std::size_t a = 1; a < n; ++a)
      for (std::size_t b = 1; b < n; ++b)
        for (std::size_t c = 1; c < n; ++c) {
          std::fill(row.begin(), row.end(), 0);
          auto bump = [&](std::size_t j, unsigned v) {
            row[j] = static_cast<std::uint8_t>((row[j] + v) % prime);
          };
          bump(idx(a, b), 1);
          bump(idx(p.mul(static_cast<Elt>(a), static_cast<Elt>(b)), c), 1);
          bump(idx(b, c), prime - 1);
          bump(idx(a, p.mul(static_cast<Elt>(b), static_cast<Elt>(c))), prime - 1);
          eq.add(row);
        }
    std::vector<char> is_pivot(width, 0);
    for (std::size_t piv : eq.pivots) is_pivot[piv] = 1;
    for (std::size_t free_col = 0; free_col < width; ++free_col) {
      if (is_pivot[free_col]) continue;
      std::vector<std::uint8_t> sol(width, 0);
      sol[free_col] = 1;
      for (std::size_t k = eq.rows.size(); k-- > 0;) {
        std::size_t piv = eq.pivots[k];
        unsigned acc = 0;
        const auto &r = eq.rows[k];
        for (std::size_t j = 0; j < width; ++j)
          if (j != piv) acc += r[j] * sol[j];
        sol[piv] = static_cast<std::uint8_t>((prime - acc % prime) % prime);
      }
      space.coordBasis.push_back(std::move(sol));
    }
  }

  // Verify the cocycle identity on every basis element.
  for (const auto &f : space.coordBasis) {
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t c = 0; c < n; ++c) {
          unsigned lhs = f[idx(a, b)] + f[idx(p.mul(static_cast<Elt>(a), static_cast<Elt>(b)), c)];
          unsigned rhs = f[idx(b, c)] + f[idx(a, p.mul(static_cast<Elt>(b), static_cast<Elt>(c)))];
          if (lhs % prime != rhs % prime)
            throw GroupTableError("cocycle identity violated by a basis vector");
        }
    if (f[idx(0, 0)] || f[idx(0, 1 % n)] || f[idx(1 % n, 0)])
      throw GroupTableError("basis cocycle not normalized");
  }

  // Coboundaries: d t(a,b) = t(a) + t(b) - t(ab) for t : P -> F_p, t(1) = 0.
  RowSpace cob(prime, width);
  for (std::size_t x = 1; x < n; ++x) {
    std::vector<std::uint8_t> row(width, 0);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        unsigned v = 0;
        if (a == x) v += 1;
        if (b == x) v += 1;
        if (p.mul(static_cast<Elt>(a), static_cast<Elt>(b)) == x) v += prime - 1;
        row[idx(a, b)] = static_cast<std::uint8_t>(v % prime);
      }
    std::vector<std::uint8_t> copy = row;
    if (cob.add(copy)) space.coboundaryBasis.push_back(std::move(row));
  }

  // H^2 representatives: cocycle basis vectors independent modulo B^2.
  {
    RowSpace span(prime, width);
    for (const auto &r : space.coboundaryBasis) {
      auto copy = r;
      span.add(copy);
    }
    for (const auto &f : space.coordBasis) {
      auto copy = f;
      if (span.add(copy)) space.h2Reps.push_back(f);
    }
  }
  space.h2Dimension =
      static_cast<unsigned>(space.h2Reps.size()) * zdim;
  return space;
}

ExtensionGroup build_extension(const CocycleSpace &space,
                               const std::vector<std::uint8_t> &coeffs) {
  const GroupTable &p = *space.base;
  std::size_t n = p.size();
  std::size_t width = n * n;
  unsigned prime = space.prime;
  unsigned zdim = space.zdim;
  if (coeffs.size() != zdim * space.coord_dim())
    throw GroupTableError("coefficient vector has the wrong length");

  ExtensionGroup ext;
  ext.prime = prime;
  ext.zdim = zdim;
  ext.baseOrder = n;
  ext.cocycle.assign(zdim * width, 0);
  for (unsigned k = 0; k < zdim; ++k)
    for (std::size_t i = 0; i < space.coord_dim(); ++i) {
      std::uint8_t c = coeffs[k * space.coord_dim() + i];
      if (!c) continue;
      for (std::size_t j = 0; j < width; ++j)
        ext.cocycle[k * width + j] = static_cast<std::uint8_t>(
            (ext.cocycle[k * width + j] + c * space.coordBasis[i][j]) % prime);
    }

  std::size_t zsize = 1;
  for (unsigned k = 0; k < zdim; ++k) zsize *= prime;
  std::size_t total = n * zsize;
  auto code = [&](std::size_t x, std::size_t z) { return x * zsize + z; };
  auto zadd = [&](std::size_t z1, std::size_t z2) {
    std::size_t out = 0, mult = 1;
    for (unsigned k = 0; k < zdim; ++k) {
      out += mult * ((z1 % prime + z2 % prime) % prime);
      z1 /= prime;
      z2 /= prime;
      mult *= prime;
    }
    return out;
  };
  auto fz = [&](std::size_t a, std::size_t b) {
    std::size_t out = 0, mult = 1;
    for (unsigned k = 0; k < zdim; ++k) {
      out += mult * ext.cocycle[k * width + a * n + b];
      mult *= prime;
    }
    return out;
  };

  std::vector<Elt> table(total * total);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t x = 0; x < zsize; ++x)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t y = 0; y < zsize; ++y) {
          std::size_t ab = p.mul(static_cast<Elt>(a), static_cast<Elt>(b));
          std::size_t z = zadd(zadd(x, y), fz(a, b));
          table[code(a, x) * total + code(b, y)] = static_cast<Elt>(code(ab, z));
        }
  ext.group = std::make_shared<GroupTable>(total, std::move(table), total <= 256);

  // Z sits centrally and the quotient recovers P.
  Bitset zmem(total);
  for (std::size_t z = 0; z < zsize; ++z) zmem.set(code(0, z));
  ext.centerCopy = subgroup_from_members(*ext.group, std::move(zmem));
  Subgroup ctr = center(*ext.group);
  if (!ext.centerCopy.members.is_subset_of(ctr.members))
    throw GroupTableError("extension center copy is not central");
  QuotientResult q = quotient_group(*ext.group, ext.centerCopy);
  if (q.group->size() != n || !isomorphic(*q.group, p))
    throw GroupTableError("extension quotient does not recover the base group");
  return ext;
}

std::vector<ExtensionGroup>
enumerate_extensions(const GroupTable &p, unsigned prime, unsigned zdim,
                     const std::function<bool(const GroupTable &)> &predicate,
                     const Bounds &bounds) {
  CocycleSpace space = cocycle_space(p, prime, zdim, bounds);
  std::size_t h2 = space.h2Reps.size() * zdim;
  std::uint64_t classes = 1;
  for (std::size_t i = 0; i < h2; ++i) {
    classes *= prime;
    if (classes > (1u << 20)) throw BoundExceeded("too many cohomology classes");
  }

  std::vector<ExtensionGroup> reps;
  std::vector<Fingerprint> fps;
  std::vector<std::vector<std::uint64_t>> sigs;
  for (std::uint64_t v = 0; v < classes; ++v) {
    // Coefficients over the H^2 representatives only; coboundary shifts
    // never change the isomorphism class.
    std::vector<std::uint8_t> coeffs(zdim * space.coord_dim(), 0);
    std::uint64_t c = v;
    for (unsigned k = 0; k < zdim; ++k)
      for (std::size_t i = 0; i < space.h2Reps.size(); ++i) {
        std::uint8_t digit = static_cast<std::uint8_t>(c % prime);
        c /= prime;
        if (!digit) continue;
        // Locate the rep inside coordBasis.
        for (std::size_t m = 0; m < space.coordBasis.size(); ++m)
          if (space.coordBasis[m] == space.h2Reps[i]) {
            coeffs[k * space.coord_dim() + m] = digit;
            break;
          }
      }
    ExtensionGroup ext = build_extension(space, coeffs);
    if (!predicate(*ext.group)) continue;
    Fingerprint fp = fingerprint(*ext.group);
    auto sig = element_signatures(*ext.group);
    std::sort(sig.begin(), sig.end());
    bool dup = false;
    for (std::size_t i = 0; i < reps.size() && !dup; ++i) {
      if (fps[i] != fp || sigs[i] != sig) continue;
      if (isomorphic(*reps[i].group, *ext.group)) dup = true;
    }
    if (!dup) {
      reps.push_back(std::move(ext));
      fps.push_back(std::move(fp));
      sigs.push_back(std::move(sig));
    }
  }
  return reps;
}

} // namespace fusionkit
