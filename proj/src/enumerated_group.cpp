#include "fusionkit/enumerated_group.hpp"

#include <algorithm>
#include <cstring>
#include <numeric>
#include <optional>

namespace fusionkit {

namespace {
constexpr GIdx kEmpty = 0xffffffffu;
}

EnumeratedGroup::EnumeratedGroup(PermGroup group, const Bounds &bounds)
    : group_(std::move(group)), bounds_(bounds), degree_(group_.degree()) {
  if (group_.order() > bounds_.enumeration)
    throw BoundExceeded("order " + std::to_string(group_.order()) +
                        " exceeds enumeration bound");
  enumerate();
}

std::uint64_t EnumeratedGroup::row_hash(const Point *img) const {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned j = 0; j < degree_; ++j) {
    h ^= img[j];
    h *= 0x100000001b3ull;
  }
  h ^= h >> 32;
  return h;
}

void EnumeratedGroup::hash_insert(GIdx i) {
  std::uint64_t slot = row_hash(row(i)) & hash_mask_;
  while (hash_slots_[slot] != kEmpty) slot = (slot + 1) & hash_mask_;
  hash_slots_[slot] = i;
}

std::int64_t EnumeratedGroup::index_of(const Point *img) const {
  std::uint64_t slot = row_hash(img) & hash_mask_;
  while (hash_slots_[slot] != kEmpty) {
    GIdx cand = hash_slots_[slot];
    if (std::memcmp(row(cand), img, degree_ * sizeof(Point)) == 0)
      return static_cast<std::int64_t>(cand);
    slot = (slot + 1) & hash_mask_;
  }
  return -1;
}

void EnumeratedGroup::enumerate() {
  n_ = group_.order();
  std::uint64_t cap = 1;
  while (cap < 2 * n_) cap <<= 1;
  hash_mask_ = cap - 1;
  hash_slots_.assign(cap, kEmpty);
  buf_.resize(static_cast<std::size_t>(n_) * degree_);

  // BFS closure from the identity under right multiplication.
  std::uint64_t have = 1;
  for (unsigned j = 0; j < degree_; ++j) buf_[j] = static_cast<Point>(j);
  hash_insert(0);

  const auto &gens = group_.generators();
  std::vector<Point> tmp(degree_);
  for (std::uint64_t i = 0; i < have && have < n_; ++i) {
    const Point *base = row(static_cast<GIdx>(i));
    for (const Perm &g : gens) {
      for (unsigned j = 0; j < degree_; ++j) tmp[j] = g[base[j]];
      if (index_of(tmp.data()) < 0) {
        std::memcpy(buf_.data() + static_cast<std::size_t>(have) * degree_, tmp.data(),
                    degree_ * sizeof(Point));
        hash_insert(static_cast<GIdx>(have));
        ++have;
        if (have == n_) break;
      }
    }
  }
  if (have != n_) throw PermError("enumeration did not reach the chain order");

  // Canonical order: sort rows lexicographically, then rebuild the index.
  std::vector<GIdx> perm(n_);
  std::iota(perm.begin(), perm.end(), 0);
  const Point *base = buf_.data();
  unsigned deg = degree_;
  std::sort(perm.begin(), perm.end(), [base, deg](GIdx a, GIdx b) {
    return std::memcmp(base + static_cast<std::size_t>(a) * deg,
                       base + static_cast<std::size_t>(b) * deg,
                       deg * sizeof(Point)) < 0;
  });
  std::vector<Point> sorted(buf_.size());
  for (std::uint64_t i = 0; i < n_; ++i)
    std::memcpy(sorted.data() + static_cast<std::size_t>(i) * degree_,
                buf_.data() + static_cast<std::size_t>(perm[i]) * degree_,
                degree_ * sizeof(Point));
  buf_.swap(sorted);
  sorted.clear();
  sorted.shrink_to_fit();
  std::fill(hash_slots_.begin(), hash_slots_.end(), kEmpty);
  for (std::uint64_t i = 0; i < n_; ++i) hash_insert(static_cast<GIdx>(i));
}

GIdx EnumeratedGroup::mul(GIdx a, GIdx b) const {
  const Point *ra = row(a);
  const Point *rb = row(b);
  std::vector<Point> tmp(degree_);
  for (unsigned j = 0; j < degree_; ++j) tmp[j] = rb[ra[j]];
  std::int64_t k = index_of(tmp.data());
  if (k < 0) throw PermError("product escaped the enumeration");
  return static_cast<GIdx>(k);
}

GIdx EnumeratedGroup::inverse(GIdx a) const {
  const Point *ra = row(a);
  std::vector<Point> tmp(degree_);
  for (unsigned j = 0; j < degree_; ++j) tmp[ra[j]] = static_cast<Point>(j);
  std::int64_t k = index_of(tmp.data());
  if (k < 0) throw PermError("inverse escaped the enumeration");
  return static_cast<GIdx>(k);
}

GIdx EnumeratedGroup::conj(GIdx x, GIdx g) const {
  const Point *rx = row(x);
  const Point *rg = row(g);
  std::vector<Point> tmp(degree_);
  for (unsigned j = 0; j < degree_; ++j) tmp[rg[j]] = rg[rx[j]];
  std::int64_t k = index_of(tmp.data());
  if (k < 0) throw PermError("conjugate escaped the enumeration");
  return static_cast<GIdx>(k);
}

unsigned EnumeratedGroup::element_order(GIdx a) const {
  if (order_cache_.empty()) {
    order_cache_.resize(n_);
    std::vector<bool> seen(degree_);
    for (std::uint64_t i = 0; i < n_; ++i) {
      const Point *r = row(static_cast<GIdx>(i));
      std::fill(seen.begin(), seen.end(), false);
      std::uint64_t ord = 1;
      for (unsigned s = 0; s < degree_; ++s) {
        if (seen[s]) continue;
        unsigned len = 0, j = s;
        do {
          seen[j] = true;
          j = r[j];
          ++len;
        } while (j != s);
        ord = std::lcm<std::uint64_t>(ord, len);
      }
      order_cache_[i] = static_cast<std::uint16_t>(ord);
    }
  }
  return order_cache_[a];
}

std::vector<GIdx> EnumeratedGroup::generator_ids() const {
  std::vector<GIdx> out;
  for (const Perm &g : group_.generators()) {
    std::int64_t k = index_of(g);
    if (k < 0) throw PermError("generator missing from enumeration");
    out.push_back(static_cast<GIdx>(k));
  }
  return out;
}

EnumSubgroup EnumeratedGroup::closure(std::vector<GIdx> gens) const {
  EnumSubgroup s;
  s.parent = this;
  s.members = Bitset(n_);
  s.members.set(0);
  std::vector<GIdx> queue{0};
  std::vector<Point> tmp(degree_);
  auto push = [&](GIdx x) {
    if (!s.members.test(x)) {
      s.members.set(x);
      queue.push_back(x);
    }
  };
  for (GIdx g : gens) push(g);
  for (std::size_t i = 0; i < queue.size(); ++i) {
    const Point *ra = row(queue[i]);
    for (GIdx g : gens) {
      const Point *rg = row(g);
      for (unsigned j = 0; j < degree_; ++j) tmp[j] = rg[ra[j]];
      std::int64_t k = index_of(tmp.data());
      if (k < 0) throw PermError("closure escaped the enumeration");
      push(static_cast<GIdx>(k));
    }
  }
  s.gens = std::move(gens);
  return s;
}

EnumSubgroup EnumeratedGroup::trivial() const {
  EnumSubgroup s;
  s.parent = this;
  s.members = Bitset(n_);
  s.members.set(0);
  return s;
}

EnumSubgroup EnumeratedGroup::whole() const {
  EnumSubgroup s;
  s.parent = this;
  s.members = Bitset(n_);
  for (std::uint64_t i = 0; i < n_; ++i) s.members.set(i);
  s.gens = generator_ids();
  return s;
}

EnumSubgroup EnumeratedGroup::centralizer_of_elements(const std::vector<GIdx> &xs) const {
  EnumSubgroup s;
  s.parent = this;
  s.members = Bitset(n_);
  std::vector<const Point *> targets;
  for (GIdx x : xs) targets.push_back(row(x));
  for (std::uint64_t i = 0; i < n_; ++i) {
    const Point *g = row(static_cast<GIdx>(i));
    bool ok = true;
    for (const Point *x : targets) {
      // x^g == x  <=>  g[x[j]] == x[g[j]] for all j.
      for (unsigned j = 0; j < degree_; ++j)
        if (g[x[j]] != x[g[j]]) {
          ok = false;
          break;
        }
      if (!ok) break;
    }
    if (ok) s.members.set(i);
  }
  s.gens = reduce_enum_generators(*this, s.members);
  return s;
}

EnumSubgroup EnumeratedGroup::centralizer_of(const EnumSubgroup &h) const {
  std::vector<GIdx> gens = h.gens;
  if (gens.empty()) gens = h.members.members();
  return centralizer_of_elements(gens);
}

EnumSubgroup EnumeratedGroup::normalizer_of(const EnumSubgroup &h) const {
  EnumSubgroup s;
  s.parent = this;
  s.members = Bitset(n_);
  std::vector<GIdx> hgens = h.gens;
  if (hgens.empty()) hgens = h.members.members();
  std::vector<const Point *> targets;
  for (GIdx x : hgens) targets.push_back(row(x));
  std::vector<Point> tmp(degree_);
  for (std::uint64_t i = 0; i < n_; ++i) {
    const Point *g = row(static_cast<GIdx>(i));
    bool ok = true;
    for (const Point *x : targets) {
      for (unsigned j = 0; j < degree_; ++j) tmp[g[j]] = g[x[j]];
      std::int64_t k = index_of(tmp.data());
      if (k < 0 || !h.members.test(static_cast<GIdx>(k))) {
        ok = false;
        break;
      }
    }
    if (ok) s.members.set(i);
  }
  s.gens = reduce_enum_generators(*this, s.members);
  return s;
}

std::vector<GIdx> EnumeratedGroup::conjugacy_class(GIdx x, std::uint64_t limit) const {
  std::vector<GIdx> orbit{x};
  Bitset seen(n_);
  seen.set(x);
  auto gens = generator_ids();
  std::vector<Point> tmp(degree_);
  for (std::size_t i = 0; i < orbit.size(); ++i) {
    const Point *rx = row(orbit[i]);
    for (GIdx g : gens) {
      const Point *rg = row(g);
      for (unsigned j = 0; j < degree_; ++j) tmp[rg[j]] = rg[rx[j]];
      std::int64_t k = index_of(tmp.data());
      if (k < 0) throw PermError("class escaped the enumeration");
      if (!seen.test(static_cast<GIdx>(k))) {
        if (orbit.size() >= limit)
          throw BoundExceeded("conjugacy class exceeds configured limit");
        seen.set(static_cast<GIdx>(k));
        orbit.push_back(static_cast<GIdx>(k));
      }
    }
  }
  std::sort(orbit.begin(), orbit.end());
  return orbit;
}

EnumSubgroup EnumeratedGroup::sylow_subgroup(unsigned p) const {
  std::uint64_t ppart = 1;
  {
    std::uint64_t n = n_;
    while (n % p == 0) {
      n /= p;
      ppart *= p;
    }
  }
  EnumSubgroup cur = trivial();
  if (ppart == 1) return cur;

  // Candidates: p-elements in canonical order.
  std::vector<GIdx> pelems;
  for (std::uint64_t i = 1; i < n_; ++i) {
    unsigned o = element_order(static_cast<GIdx>(i));
    while (o % p == 0) o /= p;
    if (o == 1) pelems.push_back(static_cast<GIdx>(i));
  }

  std::vector<Point> tmp(degree_);
  while (cur.order() < ppart) {
    bool grew = false;
    for (GIdx cand : pelems) {
      if (cur.members.test(cand)) continue;
      const Point *g = row(cand);
      bool normalizes = true;
      for (GIdx t : cur.gens) {
        const Point *x = row(t);
        for (unsigned j = 0; j < degree_; ++j) tmp[g[j]] = g[x[j]];
        std::int64_t k = index_of(tmp.data());
        if (k < 0 || !cur.members.test(static_cast<GIdx>(k))) {
          normalizes = false;
          break;
        }
      }
      if (!normalizes) continue;
      auto gens = cur.gens;
      gens.push_back(cand);
      cur = closure(std::move(gens));
      grew = true;
      break;
    }
    if (!grew) throw PermError("sylow growth failed");
  }
  return cur;
}

EnumSubgroup EnumeratedGroup::derived_subgroup() const {
  auto gids = generator_ids();
  std::vector<GIdx> comms;
  for (GIdx a : gids)
    for (GIdx b : gids) {
      GIdx c = mul(mul(inverse(a), inverse(b)), mul(a, b));
      if (c != 0) comms.push_back(c);
    }
  EnumSubgroup cur = closure(comms);
  // Extend to the normal closure.
  for (;;) {
    std::vector<GIdx> extra;
    for (GIdx t : cur.gens)
      for (GIdx g : gids) {
        GIdx c = conj(t, g);
        if (!cur.members.test(c)) extra.push_back(c);
      }
    if (extra.empty()) break;
    auto gens = cur.gens;
    for (GIdx e : extra) gens.push_back(e);
    cur = closure(std::move(gens));
  }
  return cur;
}

std::vector<GIdx> reduce_enum_generators(const EnumeratedGroup &g, const Bitset &members) {
  // Single ascending pass with an incremental stabilizer chain: add each
  // member not yet generated.  Every skipped member stays inside the final
  // span, so the result generates the whole member set.
  std::vector<GIdx> out;
  std::uint64_t target = members.count();
  if (target <= 1) return out;
  std::vector<Perm> gen_perms;
  std::optional<PermGroup> span;
  members.for_each([&](std::size_t x) {
    if (x == 0) return;
    if (span && span->order() >= target) return;
    Perm p = g.element(static_cast<GIdx>(x));
    if (span && span->contains(p)) return;
    gen_perms.push_back(std::move(p));
    out.push_back(static_cast<GIdx>(x));
    span.emplace(g.degree(), gen_perms, g.bounds());
  });
  return out;
}

} // namespace fusionkit
