#include "fusionkit/group_iso.hpp"

#include <algorithm>
#include <map>

namespace fusionkit {

Fingerprint fingerprint(const GroupTable &g) {
  Fingerprint f;
  f.order = g.size();
  f.exponent = g.exponent();
  std::map<unsigned, unsigned> profile;
  for (std::size_t i = 0; i < g.size(); ++i) ++profile[g.element_order(static_cast<Elt>(i))];
  f.order_profile.assign(profile.begin(), profile.end());
  f.center_order = center(g).order();
  Subgroup whole = full_subgroup(g);
  f.derived_order = derived_subgroup(whole).order();
  auto series = lower_central_series(whole);
  f.nilpotency = series.back().order() == 1 ? static_cast<int>(series.size() - 1) : -1;
  if (g.size() == 1) f.nilpotency = 0;
  for (const auto &cls : conjugacy_classes(g)) f.class_sizes.push_back(cls.size());
  std::sort(f.class_sizes.begin(), f.class_sizes.end());
  return f;
}

std::vector<std::uint64_t> element_signatures(const GroupTable &g, unsigned rounds) {
  std::size_t n = g.size();
  std::vector<std::uint64_t> sig(n);
  for (std::size_t x = 0; x < n; ++x)
    sig[x] = 0x9e3779b97f4a7c15ull ^ g.element_order(static_cast<Elt>(x));
  std::vector<std::uint64_t> next(n);
  std::vector<std::uint64_t> local;
  local.reserve(n);
  for (unsigned r = 0; r < rounds; ++r) {
    for (std::size_t x = 0; x < n; ++x) {
      local.clear();
      for (std::size_t y = 0; y < n; ++y) {
        std::uint64_t a = sig[y];
        std::uint64_t b = sig[g.mul(static_cast<Elt>(x), static_cast<Elt>(y))];
        std::uint64_t c = sig[g.conj(static_cast<Elt>(x), static_cast<Elt>(y))];
        std::uint64_t v = a * 0x100000001b3ull ^ b;
        v = v * 0x100000001b3ull ^ c;
        v ^= v >> 31;
        local.push_back(v);
      }
      std::sort(local.begin(), local.end());
      std::uint64_t h = sig[x] * 0x9e3779b97f4a7c15ull;
      for (std::uint64_t v : local) {
        h ^= v;
        h *= 0x100000001b3ull;
        h ^= h >> 29;
      }
      next[x] = h;
    }
    sig.swap(next);
  }
  return sig;
}

std::pair<GroupTable, std::vector<Elt>> subgroup_as_table(const Subgroup &h) {
  std::vector<Elt> mem;
  h.members.for_each([&](std::size_t i) { mem.push_back(static_cast<Elt>(i)); });
  std::vector<std::int32_t> to_local(h.parent->size(), -1);
  for (std::size_t i = 0; i < mem.size(); ++i) to_local[mem[i]] = static_cast<std::int32_t>(i);
  std::size_t n = mem.size();
  std::vector<Elt> table(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Elt prod = h.parent->mul(mem[i], mem[j]);
      table[i * n + j] = static_cast<Elt>(to_local[prod]);
    }
  GroupTable t(n, std::move(table), n <= 64);
  return {std::move(t), std::move(mem)};
}

namespace {

// Backtracking generator-image search with incremental closure and
// multiplication-consistency checking.
struct IsoSearch {
  const GroupTable &a, &b;
  std::vector<std::uint64_t> siga, sigb;
  std::vector<Elt> gen_seq; // generating sequence for a, fixed up front
  const std::function<bool(const std::vector<Elt> &)> &visit;
  bool stopped = false;

  IsoSearch(const GroupTable &a_, const GroupTable &b_,
            const std::function<bool(const std::vector<Elt> &)> &visit_)
      : a(a_), b(b_), visit(visit_) {
    siga = element_signatures(a);
    sigb = element_signatures(b);
    // Greedy generating sequence: among elements not yet in the closure,
    // prefer those whose signature class is rarest (fewest candidates).
    std::map<std::uint64_t, unsigned> freq;
    for (auto s : sigb) ++freq[s];
    Subgroup span = trivial_subgroup(a);
    while (span.order() < a.size()) {
      Elt best = 0;
      unsigned best_freq = ~0u;
      for (std::size_t x = 1; x < a.size(); ++x) {
        if (span.members.test(x)) continue;
        auto it = freq.find(siga[x]);
        unsigned fx = it == freq.end() ? ~0u : it->second;
        if (fx < best_freq) {
          best_freq = fx;
          best = static_cast<Elt>(x);
        }
      }
      gen_seq.push_back(best);
      auto gens = span.gens;
      gens.push_back(best);
      span = subgroup_closure(a, gens);
    }
  }

  struct State {
    std::vector<std::int32_t> map;  // a-element -> b-element or -1
    std::vector<bool> used;         // b-element already an image
    std::vector<Elt> elems;         // mapped subgroup of a, in closure order
  };

  bool define(State &st, Elt x, Elt y) {
    // Returns false on contradiction.
    std::vector<std::pair<Elt, Elt>> pending{{x, y}};
    while (!pending.empty()) {
      auto [g0, h0] = pending.back();
      pending.pop_back();
      if (st.map[g0] >= 0) {
        if (st.map[g0] != h0) return false;
        continue;
      }
      if (st.used[h0]) return false;
      if (a.element_order(g0) != b.element_order(h0)) return false;
      if (siga[g0] != sigb[h0]) return false;
      st.map[g0] = h0;
      st.used[h0] = true;
      for (Elt e : st.elems) {
        Elt p1 = a.mul(e, g0), q1 = b.mul(static_cast<Elt>(st.map[e]), h0);
        pending.push_back({p1, q1});
        Elt p2 = a.mul(g0, e), q2 = b.mul(h0, static_cast<Elt>(st.map[e]));
        pending.push_back({p2, q2});
      }
      st.elems.push_back(g0);
    }
    return true;
  }

  void dfs(State &st, std::size_t depth) {
    if (stopped) return;
    if (depth == gen_seq.size()) {
      std::vector<Elt> image(a.size());
      for (std::size_t x = 0; x < a.size(); ++x) image[x] = static_cast<Elt>(st.map[x]);
      if (visit(image)) stopped = true;
      return;
    }
    Elt g0 = gen_seq[depth];
    if (st.map[g0] >= 0) {
      dfs(st, depth + 1);
      return;
    }
    for (std::size_t y = 0; y < b.size(); ++y) {
      if (st.used[y] || sigb[y] != siga[g0]) continue;
      State copy = st;
      if (define(copy, g0, static_cast<Elt>(y))) {
        dfs(copy, depth + 1);
        if (stopped) return;
      }
    }
  }

  bool run() {
    State st;
    st.map.assign(a.size(), -1);
    st.used.assign(b.size(), false);
    if (!define(st, 0, 0)) return false;
    dfs(st, 0);
    return stopped;
  }
};

} // namespace

bool for_each_isomorphism(const GroupTable &a, const GroupTable &b,
                          const std::function<bool(const std::vector<Elt> &)> &visit) {
  if (a.size() != b.size()) return false;
  if (fingerprint(a) != fingerprint(b)) return false;
  {
    // Signature multisets must agree.
    auto sa = element_signatures(a);
    auto sb = element_signatures(b);
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) return false;
  }
  IsoSearch search(a, b, visit);
  return search.run();
}

std::optional<std::vector<Elt>> find_isomorphism(const GroupTable &a,
                                                 const GroupTable &b) {
  std::optional<std::vector<Elt>> out;
  for_each_isomorphism(a, b, [&](const std::vector<Elt> &img) {
    out = img;
    return true;
  });
  return out;
}

bool isomorphic(const GroupTable &a, const GroupTable &b) {
  return find_isomorphism(a, b).has_value();
}

bool isomorphic_subgroups(const Subgroup &a, const Subgroup &b) {
  if (a.order() != b.order()) return false;
  auto [ta, ma] = subgroup_as_table(a);
  auto [tb, mb] = subgroup_as_table(b);
  (void)ma;
  (void)mb;
  return isomorphic(ta, tb);
}

} // namespace fusionkit
