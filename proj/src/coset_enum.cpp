#include "fusionkit/coset_enum.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

#include "fusionkit/bounds.hpp"

namespace fusionkit {

Word inverse_word(const Word &w) {
  // The encoding is an involution: v and -v-1 name a generator and its
  // inverse.
  Word out;
  out.reserve(w.size());
  for (std::size_t i = w.size(); i-- > 0;) out.push_back(-w[i] - 1);
  return out;
}

Perm evaluate_word(const Word &w, const std::vector<Perm> &gens, unsigned degree) {
  Perm out(degree);
  for (int k : w) {
    if (k >= 0)
      out = out * gens[static_cast<std::size_t>(k)];
    else
      out = out * gens[static_cast<std::size_t>(-k - 1)].inverse();
  }
  return out;
}

namespace {

class Table {
public:
  Table(unsigned ngens, std::size_t max_cosets)
      : ngens_(ngens), cols_(2 * ngens), max_(max_cosets) {
    new_coset(); // coset 0 = the subgroup
  }

  unsigned col(int k) const {
    return k >= 0 ? 2 * static_cast<unsigned>(k)
                  : 2 * static_cast<unsigned>(-k - 1) + 1;
  }
  unsigned inv_col(unsigned c) const { return c ^ 1u; }

  std::int64_t get(std::size_t a, unsigned c) const { return tab_[a * cols_ + c]; }
  void set(std::size_t a, unsigned c, std::int64_t v) { tab_[a * cols_ + c] = v; }

  std::size_t new_coset() {
    if (live_ >= max_) throw BoundExceeded("coset table overflow");
    tab_.resize(tab_.size() + cols_, -1);
    rep_.push_back(rep_.size());
    ++live_;
    return rep_.size() - 1;
  }

  std::size_t rep(std::size_t a) {
    while (rep_[a] != a) {
      rep_[a] = rep_[rep_[a]];
      a = rep_[a];
    }
    return a;
  }
  bool alive(std::size_t a) { return rep(a) == a; }
  std::size_t count() const { return rep_.size(); }
  std::size_t live() const { return live_; }

  void join(std::size_t a, std::size_t b, std::deque<std::size_t> &queue) {
    a = rep(a);
    b = rep(b);
    if (a == b) return;
    if (a > b) std::swap(a, b);
    rep_[b] = a;
    --live_;
    queue.push_back(b);
  }

  void coincidence(std::size_t a, std::size_t b) {
    std::deque<std::size_t> queue;
    join(a, b, queue);
    while (!queue.empty()) {
      std::size_t dead = queue.front();
      queue.pop_front();
      for (unsigned c = 0; c < cols_; ++c) {
        std::int64_t e = get(dead, c);
        if (e < 0) continue;
        set(dead, c, -1);
        std::size_t er = rep(static_cast<std::size_t>(e));
        // Remove the back reference from e if it still points at dead.
        if (get(er, inv_col(c)) == static_cast<std::int64_t>(dead))
          set(er, inv_col(c), -1);
        std::size_t dr = rep(dead);
        std::int64_t existing = get(dr, c);
        if (existing >= 0) {
          join(er, static_cast<std::size_t>(existing), queue);
        } else {
          set(dr, c, static_cast<std::int64_t>(er));
        }
        er = rep(er);
        dr = rep(dr);
        std::int64_t back = get(er, inv_col(c));
        if (back >= 0) {
          join(dr, static_cast<std::size_t>(back), queue);
        } else {
          set(er, inv_col(c), static_cast<std::int64_t>(dr));
        }
      }
    }
  }

  // Scan word w at coset a, filling gaps; may trigger coincidences.
  void scan_and_fill(std::size_t a, const std::vector<unsigned> &wcols) {
    for (;;) {
      a = rep(a);
      std::size_t f = a;
      std::size_t i = 0;
      std::size_t n = wcols.size();
      while (i < n) {
        std::int64_t next = get(f, wcols[i]);
        if (next < 0) break;
        f = rep(static_cast<std::size_t>(next));
        ++i;
      }
      if (i == n) {
        if (f != a) coincidence(f, a);
        return;
      }
      std::size_t b = a;
      std::size_t j = n;
      while (j > i) {
        std::int64_t prev = get(b, inv_col(wcols[j - 1]));
        if (prev < 0) break;
        b = rep(static_cast<std::size_t>(prev));
        --j;
      }
      if (j == i) {
        if (f != b) coincidence(f, b);
        return;
      }
      if (j == i + 1) {
        // Deduction closes the scan.
        set(f, wcols[i], static_cast<std::int64_t>(b));
        set(b, inv_col(wcols[i]), static_cast<std::int64_t>(f));
        return;
      }
      // Fill one gap and rescan.
      std::size_t fresh = new_coset();
      set(f, wcols[i], static_cast<std::int64_t>(fresh));
      set(fresh, inv_col(wcols[i]), static_cast<std::int64_t>(f));
    }
  }

  unsigned cols() const { return cols_; }

private:
  unsigned ngens_, cols_;
  std::size_t max_;
  std::size_t live_ = 0;
  std::vector<std::int64_t> tab_;
  std::vector<std::size_t> rep_;
};

} // namespace

CosetEnumeration enumerate_cosets(unsigned ngens,
                                  const std::vector<Word> &relators,
                                  const std::vector<Word> &subgens,
                                  std::size_t max_cosets) {
  Table t(ngens, max_cosets);
  auto to_cols = [&](const Word &w) {
    std::vector<unsigned> cols;
    cols.reserve(w.size());
    for (int k : w) cols.push_back(t.col(k));
    return cols;
  };
  std::vector<std::vector<unsigned>> rel_cols;
  for (const Word &w : relators) rel_cols.push_back(to_cols(w));

  for (const Word &w : subgens) t.scan_and_fill(0, to_cols(w));

  for (std::size_t a = 0; a < t.count(); ++a) {
    if (!t.alive(a)) continue;
    for (const auto &r : rel_cols) {
      if (!t.alive(a)) break;
      t.scan_and_fill(a, r);
    }
    if (!t.alive(a)) continue;
    for (unsigned c = 0; c < t.cols(); ++c) {
      if (!t.alive(a)) break;
      if (t.get(t.rep(a), c) < 0) {
        std::size_t fresh = t.new_coset();
        t.set(t.rep(a), c, static_cast<std::int64_t>(fresh));
        t.set(fresh, t.inv_col(c), static_cast<std::int64_t>(t.rep(a)));
      }
    }
  }

  // Renumber live cosets in discovery order and verify the table closes.
  std::vector<std::int64_t> number(t.count(), -1);
  std::vector<std::size_t> order;
  for (std::size_t a = 0; a < t.count(); ++a)
    if (t.alive(a) && number[a] < 0) {
      number[a] = static_cast<std::int64_t>(order.size());
      order.push_back(a);
    }

  CosetEnumeration out;
  out.index = order.size();
  if (out.index > 65535) throw BoundExceeded("coset space too large for Perm points");
  for (unsigned g = 0; g < ngens; ++g) {
    std::vector<Point> img(out.index);
    for (std::size_t i = 0; i < order.size(); ++i) {
      std::int64_t to = t.get(order[i], 2 * g);
      if (to < 0) throw PermError("coset table incomplete");
      img[i] = static_cast<Point>(number[t.rep(static_cast<std::size_t>(to))]);
    }
    out.action.emplace_back(std::move(img));
  }
  // Relator verification on the final action.
  for (const Word &w : relators) {
    Perm p = evaluate_word(w, out.action, static_cast<unsigned>(std::max<std::size_t>(out.index, 1)));
    if (!p.is_identity()) throw PermError("relator fails on the coset action");
  }
  return out;
}

} // namespace fusionkit
