#include "fusionkit/group_table.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <unordered_map>

namespace fusionkit {

GroupTable::GroupTable(std::size_t n, std::vector<Elt> table, bool full_assoc_check)
    : n_(n), table_(std::move(table)) {
  if (n_ == 0 || table_.size() != n_ * n_)
    throw GroupTableError("bad table dimensions");
  // Latin square + identity checks.
  for (std::size_t i = 0; i < n_; ++i) {
    if (mul(0, static_cast<Elt>(i)) != i || mul(static_cast<Elt>(i), 0) != i)
      throw GroupTableError("element 0 is not an identity");
    std::vector<bool> row(n_, false), col(n_, false);
    for (std::size_t j = 0; j < n_; ++j) {
      Elt r = table_[i * n_ + j];
      Elt c = table_[j * n_ + i];
      if (r >= n_ || c >= n_ || row[r] || col[c])
        throw GroupTableError("table is not a Latin square");
      row[r] = col[c] = true;
    }
  }
  if (full_assoc_check) {
    for (std::size_t a = 0; a < n_; ++a)
      for (std::size_t b = 0; b < n_; ++b)
        for (std::size_t c = 0; c < n_; ++c)
          if (mul(mul(static_cast<Elt>(a), static_cast<Elt>(b)), static_cast<Elt>(c)) !=
              mul(static_cast<Elt>(a), mul(static_cast<Elt>(b), static_cast<Elt>(c))))
            throw GroupTableError("associativity failure");
  } else {
    // Deterministic sample of ~10^4 triples.
    std::uint64_t seed = 0x243f6a8885a308d3ull;
    std::size_t checks = std::min<std::size_t>(10000, n_ * n_ * n_);
    for (std::size_t k = 0; k < checks; ++k) {
      seed = seed * 6364136223846793005ull + 1442695040888963407ull;
      Elt a = static_cast<Elt>((seed >> 33) % n_);
      Elt b = static_cast<Elt>((seed >> 13) % n_);
      Elt c = static_cast<Elt>(seed % n_);
      if (mul(mul(a, b), c) != mul(a, mul(b, c)))
        throw GroupTableError("associativity failure");
    }
  }
  finish();
}

void GroupTable::finish() {
  inv_.assign(n_, 0);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j)
      if (mul(static_cast<Elt>(i), static_cast<Elt>(j)) == 0) {
        inv_[i] = static_cast<Elt>(j);
        break;
      }
  ord_.assign(n_, 1);
  for (std::size_t i = 1; i < n_; ++i) {
    Elt x = static_cast<Elt>(i);
    unsigned o = 1;
    while (x != 0) {
      x = mul(x, static_cast<Elt>(i));
      ++o;
    }
    ord_[i] = o;
  }
}

unsigned GroupTable::exponent() const {
  std::uint64_t e = 1;
  for (unsigned o : ord_) e = std::lcm<std::uint64_t>(e, o);
  return static_cast<unsigned>(e);
}

GroupTable GroupTable::from_perms(const std::vector<Perm> &gens, std::size_t max_size) {
  if (gens.empty()) throw GroupTableError("need at least one permutation (identity)");
  unsigned degree = gens.front().degree();
  std::vector<Perm> elems;
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> index;
  auto find = [&](const Perm &p) -> std::int64_t {
    auto it = index.find(p.hash());
    if (it == index.end()) return -1;
    for (std::size_t i : it->second)
      if (elems[i] == p) return static_cast<std::int64_t>(i);
    return -1;
  };
  auto insert = [&](const Perm &p) {
    index[p.hash()].push_back(elems.size());
    elems.push_back(p);
  };
  insert(Perm(degree));
  for (std::size_t i = 0; i < elems.size(); ++i) {
    for (const Perm &g : gens) {
      if (g.degree() != degree) throw GroupTableError("generator degree mismatch");
      Perm q = elems[i] * g;
      if (find(q) < 0) {
        if (elems.size() >= max_size) throw BoundExceeded("table group too large");
        insert(q);
      }
    }
  }
  std::size_t n = elems.size();
  std::vector<Elt> table(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Perm q = elems[i] * elems[j];
      std::int64_t k = find(q);
      if (k < 0) throw GroupTableError("closure failure");
      table[i * n + j] = static_cast<Elt>(k);
    }
  GroupTable t(n, std::move(table), n <= 64);
  t.perm_labels_ = std::move(elems);
  return t;
}

std::uint64_t GroupTable::fingerprint_hash() const {
  // Order profile only; a cheap first filter.
  std::map<unsigned, unsigned> profile;
  for (unsigned o : ord_) ++profile[o];
  std::uint64_t h = 0x9e3779b97f4a7c15ull ^ n_;
  for (auto [o, c] : profile) {
    h ^= o * 0x100000001b3ull + c;
    h *= 0x100000001b3ull;
  }
  return h;
}

bool Morphism::is_identity_map() const {
  bool ok = true;
  source.members.for_each([&](std::size_t x) {
    if (images[x] != static_cast<std::int32_t>(x)) ok = false;
  });
  return ok;
}

// ---- subgroup construction -------------------------------------------------

namespace {
std::vector<Elt> elt_members(const Bitset &b) {
  std::vector<Elt> out;
  out.reserve(b.count());
  b.for_each([&](std::size_t i) { out.push_back(static_cast<Elt>(i)); });
  return out;
}
} // namespace


Subgroup trivial_subgroup(const GroupTable &g) {
  Subgroup s;
  s.parent = &g;
  s.members = Bitset(g.size());
  s.members.set(0);
  return s;
}

Subgroup full_subgroup(const GroupTable &g) {
  Subgroup s;
  s.parent = &g;
  s.members = Bitset(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) s.members.set(i);
  s.gens = reduce_generators(g, s.members);
  return s;
}

Subgroup subgroup_closure(const GroupTable &g, const std::vector<Elt> &elems) {
  Bitset members(g.size());
  members.set(0);
  std::vector<Elt> queue{0};
  auto push = [&](Elt x) {
    if (!members.test(x)) {
      members.set(x);
      queue.push_back(x);
    }
  };
  for (Elt e : elems) push(e);
  for (std::size_t i = 0; i < queue.size(); ++i)
    for (Elt e : elems) {
      push(g.mul(queue[i], e));
      push(g.mul(e, queue[i]));
    }
  Subgroup s;
  s.parent = &g;
  s.members = std::move(members);
  s.gens = reduce_generators(g, s.members);
  return s;
}

Subgroup subgroup_from_members(const GroupTable &g, Bitset members) {
  if (!members.test(0)) throw GroupTableError("member set misses identity");
  // Closure check.
  auto mem = members.members();
  for (Elt a : mem)
    for (Elt b : mem)
      if (!members.test(g.mul(a, b)))
        throw GroupTableError("member set not closed under multiplication");
  Subgroup s;
  s.parent = &g;
  s.members = std::move(members);
  s.gens = reduce_generators(g, s.members);
  return s;
}

Subgroup normal_closure(const GroupTable &g, const std::vector<Elt> &elems) {
  std::vector<Elt> work = elems;
  for (;;) {
    Subgroup s = subgroup_closure(g, work);
    std::vector<Elt> extra;
    s.members.for_each([&](std::size_t x) {
      for (std::size_t gi = 0; gi < g.size(); ++gi) {
        Elt c = g.conj(static_cast<Elt>(x), static_cast<Elt>(gi));
        if (!s.members.test(c)) extra.push_back(c);
      }
    });
    if (extra.empty()) return s;
    work = elt_members(s.members);
    for (Elt e : extra) work.push_back(e);
  }
}

std::vector<Elt> reduce_generators(const GroupTable &g, const Bitset &members) {
  std::vector<Elt> gens;
  Bitset have(g.size());
  have.set(0);
  std::size_t target = members.count();
  if (target == 1) return gens;
  std::vector<Elt> queue{0};
  auto grow_with = [&](Elt e) {
    gens.push_back(e);
    std::size_t scan = 0;
    if (!have.test(e)) {
      have.set(e);
      queue.push_back(e);
    }
    for (; scan < queue.size(); ++scan)
      for (Elt x : gens) {
        Elt q = g.mul(queue[scan], x);
        if (!have.test(q)) {
          have.set(q);
          queue.push_back(q);
        }
      }
  };
  // Greedy: repeatedly add the smallest member outside the running closure.
  for (std::size_t i = 1; i < g.size() && have.count() < target; ++i) {
    if (members.test(i) && !have.test(i)) grow_with(static_cast<Elt>(i));
  }
  return gens;
}

// ---- structure maps ---------------------------------------------------------

Subgroup center(const GroupTable &g) {
  Bitset members(g.size());
  for (std::size_t x = 0; x < g.size(); ++x) {
    bool central = true;
    for (std::size_t y = 0; y < g.size() && central; ++y)
      if (g.mul(static_cast<Elt>(x), static_cast<Elt>(y)) !=
          g.mul(static_cast<Elt>(y), static_cast<Elt>(x)))
        central = false;
    if (central) members.set(x);
  }
  Subgroup s;
  s.parent = &g;
  s.members = std::move(members);
  s.gens = reduce_generators(g, s.members);
  return s;
}

Subgroup centralizer_in(const Subgroup &ambient, const Subgroup &of) {
  const GroupTable &g = *ambient.parent;
  std::vector<Elt> targets(of.gens.begin(), of.gens.end());
  if (targets.empty()) targets = elt_members(of.members);
  Bitset members(g.size());
  ambient.members.for_each([&](std::size_t x) {
    for (Elt t : targets)
      if (g.mul(static_cast<Elt>(x), t) != g.mul(t, static_cast<Elt>(x))) return;
    members.set(x);
  });
  Subgroup s;
  s.parent = &g;
  s.members = std::move(members);
  s.gens = reduce_generators(g, s.members);
  return s;
}

Subgroup centralizer_in(const Subgroup &ambient, Elt x) {
  Subgroup point;
  point.parent = ambient.parent;
  point.members = Bitset(ambient.parent->size());
  point.members.set(0);
  point.members.set(x);
  point.gens = {x};
  // Member set of <x> is irrelevant for centralizing; generators drive it.
  return centralizer_in(ambient, point);
}

Subgroup normalizer_in(const Subgroup &ambient, const Subgroup &of) {
  const GroupTable &g = *ambient.parent;
  std::vector<Elt> gens(of.gens.begin(), of.gens.end());
  if (gens.empty()) gens = elt_members(of.members);
  Bitset members(g.size());
  ambient.members.for_each([&](std::size_t x) {
    for (Elt t : gens)
      if (!of.members.test(g.conj(t, static_cast<Elt>(x)))) return;
    members.set(x);
  });
  Subgroup s;
  s.parent = &g;
  s.members = std::move(members);
  s.gens = reduce_generators(g, s.members);
  return s;
}

Subgroup commutator_subgroup(const Subgroup &a, const Subgroup &b) {
  const GroupTable &g = *a.parent;
  auto am = elt_members(a.members);
  auto bm = elt_members(b.members);
  std::vector<Elt> comms;
  Bitset seen(g.size());
  for (Elt x : am)
    for (Elt y : bm) {
      Elt c = g.comm(x, y);
      if (!seen.test(c)) {
        seen.set(c);
        comms.push_back(c);
      }
    }
  Subgroup s = subgroup_closure(g, comms);
  // [A,B] is normal in <A,B>; verify and extend if the all-pairs closure
  // missed conjugates (cannot happen for subgroups, but keep the check).
  for (;;) {
    bool stable = true;
    std::vector<Elt> extra;
    for (Elt x : elt_members(s.members)) {
      for (Elt t : am)
        if (!s.members.test(g.conj(x, t))) {
          extra.push_back(g.conj(x, t));
          stable = false;
        }
      for (Elt t : bm)
        if (!s.members.test(g.conj(x, t))) {
          extra.push_back(g.conj(x, t));
          stable = false;
        }
    }
    if (stable) break;
    auto base = elt_members(s.members);
    for (Elt e : extra) base.push_back(e);
    s = subgroup_closure(g, base);
  }
  return s;
}

Subgroup derived_subgroup(const Subgroup &h) { return commutator_subgroup(h, h); }

Subgroup omega1(const Subgroup &h, unsigned p) {
  const GroupTable &g = *h.parent;
  std::vector<Elt> gens;
  h.members.for_each([&](std::size_t x) {
    unsigned o = g.element_order(static_cast<Elt>(x));
    if (o == p || o == 1) gens.push_back(static_cast<Elt>(x));
  });
  return subgroup_closure(g, gens);
}

Subgroup agemo1(const Subgroup &h, unsigned p) {
  const GroupTable &g = *h.parent;
  std::vector<Elt> gens;
  h.members.for_each([&](std::size_t x) {
    Elt xp = 0;
    for (unsigned k = 0; k < p; ++k) xp = g.mul(xp, static_cast<Elt>(x));
    gens.push_back(xp);
  });
  return subgroup_closure(g, gens);
}

Subgroup frattini_p_group(const Subgroup &h, unsigned p) {
  Subgroup d = derived_subgroup(h);
  Subgroup a = agemo1(h, p);
  auto gens = elt_members(d.members);
  for (Elt e : elt_members(a.members)) gens.push_back(e);
  return subgroup_closure(*h.parent, gens);
}

std::vector<Subgroup> lower_central_series(const Subgroup &h) {
  std::vector<Subgroup> series{h};
  for (;;) {
    Subgroup next = commutator_subgroup(series.back(), h);
    if (next.members == series.back().members) break;
    series.push_back(next);
    if (next.order() == 1) break;
  }
  return series;
}

unsigned nilpotency_class(const Subgroup &h) {
  if (h.order() == 1) return 0;
  auto series = lower_central_series(h);
  if (series.back().order() != 1)
    throw GroupTableError("group is not nilpotent");
  return static_cast<unsigned>(series.size() - 1);
}

bool is_abelian(const Subgroup &h) {
  auto m = elt_members(h.members);
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = i + 1; j < m.size(); ++j)
      if (h.parent->mul(m[i], m[j]) != h.parent->mul(m[j], m[i])) return false;
  return true;
}

bool is_elementary_abelian(const Subgroup &h, unsigned p) {
  if (!is_abelian(h)) return false;
  bool ok = true;
  h.members.for_each([&](std::size_t x) {
    unsigned o = h.parent->element_order(static_cast<Elt>(x));
    if (o != 1 && o != p) ok = false;
  });
  return ok;
}

Subgroup subgroup_product(const Subgroup &a, const Subgroup &b) {
  const GroupTable &g = *a.parent;
  Bitset members(g.size());
  a.members.for_each([&](std::size_t x) {
    b.members.for_each([&](std::size_t y) {
      members.set(g.mul(static_cast<Elt>(x), static_cast<Elt>(y)));
    });
  });
  return subgroup_from_members(g, std::move(members));
}

std::uint64_t product_order(const Subgroup &a, const Subgroup &b) {
  Bitset inter = a.members & b.members;
  return static_cast<std::uint64_t>(a.order()) * b.order() / inter.count();
}

Subgroup conjugate_subgroup(const Subgroup &h, Elt g0) {
  const GroupTable &g = *h.parent;
  Subgroup s;
  s.parent = &g;
  s.members = Bitset(g.size());
  h.members.for_each([&](std::size_t x) { s.members.set(g.conj(static_cast<Elt>(x), g0)); });
  for (Elt e : h.gens) s.gens.push_back(g.conj(e, g0));
  return s;
}

std::vector<Bitset> subgroup_conjugates(const Subgroup &h,
                                        const std::vector<Elt> &conj_gens) {
  const GroupTable &g = *h.parent;
  std::vector<Bitset> orbit{h.members};
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> seen;
  seen[h.members.hash()].push_back(0);
  auto known = [&](const Bitset &b) {
    auto it = seen.find(b.hash());
    if (it == seen.end()) return false;
    for (std::size_t i : it->second)
      if (orbit[i] == b) return true;
    return false;
  };
  if (conj_gens.empty()) return orbit;
  for (std::size_t i = 0; i < orbit.size(); ++i) {
    for (Elt g0 : conj_gens) {
      Bitset img(g.size());
      orbit[i].for_each([&](std::size_t x) { img.set(g.conj(static_cast<Elt>(x), g0)); });
      if (!known(img)) {
        seen[img.hash()].push_back(orbit.size());
        orbit.push_back(std::move(img));
      }
    }
  }
  return orbit;
}

std::vector<std::vector<Elt>> conjugacy_classes(const GroupTable &g) {
  std::vector<std::vector<Elt>> classes;
  std::vector<bool> seen(g.size(), false);
  for (std::size_t x = 0; x < g.size(); ++x) {
    if (seen[x]) continue;
    std::vector<Elt> cls;
    for (std::size_t y = 0; y < g.size(); ++y) {
      Elt c = g.conj(static_cast<Elt>(x), static_cast<Elt>(y));
      if (!seen[c]) {
        seen[c] = true;
        cls.push_back(c);
      }
    }
    std::sort(cls.begin(), cls.end());
    classes.push_back(std::move(cls));
  }
  return classes;
}

Subgroup sylow_subgroup_table(const GroupTable &g, unsigned p) {
  std::uint64_t n = g.size();
  std::uint64_t ppart = 1;
  while (n % p == 0) {
    n /= p;
    ppart *= p;
  }
  Subgroup cur = trivial_subgroup(g);
  while (cur.order() < ppart) {
    // Smallest p-element normalizing cur but outside it.
    bool found = false;
    for (std::size_t x = 1; x < g.size() && !found; ++x) {
      Elt e = static_cast<Elt>(x);
      unsigned o = g.element_order(e);
      bool ppow = true;
      while (o > 1) {
        if (o % p) {
          ppow = false;
          break;
        }
        o /= p;
      }
      if (!ppow || cur.contains(e)) continue;
      bool normalizes = true;
      for (Elt t : cur.gens)
        if (!cur.members.test(g.conj(t, e))) {
          normalizes = false;
          break;
        }
      if (!normalizes) continue;
      auto gens = cur.gens;
      gens.push_back(e);
      Subgroup next = subgroup_closure(g, gens);
      // e normalizes cur and is a p-element, so <cur, e> is a p-group.
      cur = std::move(next);
      found = true;
    }
    if (!found)
      throw GroupTableError("sylow growth failed"); // cannot happen in a group
  }
  return cur;
}

std::vector<Subgroup> all_subgroups(const GroupTable &g, std::uint64_t bound) {
  if (g.size() > bound) throw BoundExceeded("table group too large");
  // Cyclic extension: every subgroup of a nilpotent group has a normal
  // subgroup of prime index, so the layer-by-layer construction below is
  // complete.  Reject non-nilpotent input loudly.
  {
    Subgroup whole = full_subgroup(g);
    auto series = lower_central_series(whole);
    if (series.back().order() != 1)
      throw GroupTableError("all_subgroups requires a nilpotent group");
  }
  std::vector<unsigned> primes;
  {
    std::uint64_t n = g.size();
    for (unsigned p = 2; static_cast<std::uint64_t>(p) * p <= n; ++p)
      while (n % p == 0) {
        if (primes.empty() || primes.back() != p) primes.push_back(p);
        n /= p;
      }
    if (n > 1) primes.push_back(static_cast<unsigned>(n));
  }

  std::vector<Subgroup> found{trivial_subgroup(g)};
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> seen;
  seen[found[0].members.hash()].push_back(0);
  auto known = [&](const Bitset &b) {
    auto it = seen.find(b.hash());
    if (it == seen.end()) return false;
    for (std::size_t i : it->second)
      if (found[i].members == b) return true;
    return false;
  };

  for (std::size_t i = 0; i < found.size(); ++i) {
    Subgroup h = found[i]; // copy: found may reallocate
    Subgroup nrm = normalizer_in(full_subgroup(g), h);
    for (unsigned p : primes) {
      std::vector<std::size_t> candidates;
      nrm.members.for_each([&](std::size_t x) {
        if (h.members.test(x)) return;
        // x must have p-th power inside h for <h, x> to have index p over h.
        Elt xp = 0;
        for (unsigned k = 0; k < p; ++k) xp = g.mul(xp, static_cast<Elt>(x));
        if (h.members.test(xp)) candidates.push_back(x);
      });
      for (std::size_t x : candidates) {
        Bitset ext = h.members;
        Elt cur = static_cast<Elt>(x);
        for (unsigned k = 1; k < p; ++k) {
          h.members.for_each([&](std::size_t m) { ext.set(g.mul(static_cast<Elt>(m), cur)); });
          cur = g.mul(cur, static_cast<Elt>(x));
        }
        if (known(ext)) continue;
        Subgroup K;
        K.parent = &g;
        K.members = ext;
        K.gens = h.gens;
        K.gens.push_back(static_cast<Elt>(x));
        seen[ext.hash()].push_back(found.size());
        found.push_back(std::move(K));
      }
    }
  }
  std::sort(found.begin(), found.end(), [](const Subgroup &a, const Subgroup &b) {
    return a.members < b.members;
  });
  return found;
}

std::vector<Subgroup> normal_subgroups(const GroupTable &g, std::uint64_t bound) {
  auto subs = all_subgroups(g, bound);
  std::vector<Elt> gens = reduce_generators(g, full_subgroup(g).members);
  std::vector<Subgroup> out;
  for (auto &s : subs) {
    bool normal = true;
    for (Elt g0 : gens) {
      for (Elt t : s.gens)
        if (!s.members.test(g.conj(t, g0))) {
          normal = false;
          break;
        }
      if (!normal) break;
    }
    if (normal) out.push_back(std::move(s));
  }
  return out;
}

QuotientResult quotient_group(const GroupTable &g, const Subgroup &n) {
  // Normality check.
  for (std::size_t x = 0; x < g.size(); ++x)
    for (Elt t : n.gens)
      if (!n.members.test(g.conj(t, static_cast<Elt>(x))))
        throw GroupTableError("quotient by non-normal subgroup");

  std::vector<Elt> projection(g.size(), 0xffff);
  std::vector<Elt> section;
  for (std::size_t x = 0; x < g.size(); ++x) {
    if (projection[x] != 0xffff) continue;
    Elt id = static_cast<Elt>(section.size());
    section.push_back(static_cast<Elt>(x));
    n.members.for_each([&](std::size_t m) {
      projection[g.mul(static_cast<Elt>(m), static_cast<Elt>(x))] = id;
    });
  }
  std::size_t q = section.size();
  std::vector<Elt> table(q * q);
  for (std::size_t a = 0; a < q; ++a)
    for (std::size_t b = 0; b < q; ++b)
      table[a * q + b] = projection[g.mul(section[a], section[b])];
  QuotientResult r;
  r.group = std::make_shared<GroupTable>(q, std::move(table), q <= 64);
  r.projection = std::move(projection);
  r.section = std::move(section);
  return r;
}

// ---- morphism helpers --------------------------------------------------------

Morphism identity_morphism(const Subgroup &s) {
  Morphism m;
  m.source = s;
  m.target = s;
  m.images.assign(s.parent->size(), -1);
  s.members.for_each([&](std::size_t x) { m.images[x] = static_cast<std::int32_t>(x); });
  return m;
}

Morphism compose(const Morphism &first, const Morphism &then) {
  Morphism m;
  m.source = first.source;
  m.target = then.target;
  m.images.assign(first.source.parent->size(), -1);
  first.source.members.for_each([&](std::size_t x) {
    std::int32_t mid = first.images[x];
    m.images[x] = then.images[mid];
  });
  return m;
}

Morphism restrict_morphism(const Morphism &m, const Subgroup &smaller_source) {
  Morphism r;
  r.source = smaller_source;
  r.images.assign(m.images.size(), -1);
  Bitset image(m.target.parent->size());
  smaller_source.members.for_each([&](std::size_t x) {
    r.images[x] = m.images[x];
    image.set(static_cast<std::size_t>(m.images[x]));
  });
  r.target.parent = m.target.parent;
  r.target.members = std::move(image);
  r.target.gens = reduce_generators(*m.target.parent, r.target.members);
  return r;
}

std::optional<Morphism> invert_morphism(const Morphism &m) {
  Bitset image(m.target.parent->size());
  m.source.members.for_each([&](std::size_t x) { image.set(m.images[x]); });
  if (!(image == m.target.members)) return std::nullopt;
  Morphism r;
  r.source = m.target;
  r.target = m.source;
  r.images.assign(m.target.parent->size(), -1);
  m.source.members.for_each([&](std::size_t x) {
    r.images[m.images[x]] = static_cast<std::int32_t>(x);
  });
  return r;
}

bool is_injective_homomorphism(const Morphism &m) {
  const GroupTable &gs = *m.source.parent;
  const GroupTable &gt = *m.target.parent;
  auto mem = elt_members(m.source.members);
  Bitset hit(gt.size());
  for (Elt x : mem) {
    std::int32_t ix = m.images[x];
    if (ix < 0 || !m.target.members.test(ix)) return false;
    if (hit.test(ix)) return false;
    hit.set(ix);
  }
  for (Elt x : mem)
    for (Elt y : mem) {
      Elt xy = gs.mul(x, y);
      if (m.images[xy] != static_cast<std::int32_t>(
                              gt.mul(static_cast<Elt>(m.images[x]),
                                     static_cast<Elt>(m.images[y]))))
        return false;
    }
  return true;
}

std::uint64_t morphism_key(const Morphism &m) {
  std::uint64_t h = m.source.members.hash();
  m.source.members.for_each([&](std::size_t x) {
    h ^= (x * 0x9e3779b97f4a7c15ull) ^ static_cast<std::uint64_t>(m.images[x]);
    h *= 0x100000001b3ull;
  });
  return h;
}

} // namespace fusionkit
