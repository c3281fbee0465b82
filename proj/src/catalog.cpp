#include "fusionkit/catalog.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

#include "fusionkit/gf.hpp"

namespace fusionkit {

namespace {

std::uint64_t gcd64(std::uint64_t a, std::uint64_t b) { return std::gcd(a, b); }

// ---- tiny dense matrices over a small field ---------------------------------

struct Mat {
  unsigned n = 0;
  std::array<std::uint8_t, 16> e{}; // row-major

  static Mat eye(unsigned n) {
    Mat m;
    m.n = n;
    for (unsigned i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }
  std::uint8_t &at(unsigned i, unsigned j) { return e[i * n + j]; }
  std::uint8_t at(unsigned i, unsigned j) const { return e[i * n + j]; }
};

Mat mat_mul(const GF &f, const Mat &a, const Mat &b) {
  Mat c;
  c.n = a.n;
  for (unsigned i = 0; i < a.n; ++i)
    for (unsigned j = 0; j < a.n; ++j) {
      std::uint8_t s = 0;
      for (unsigned k = 0; k < a.n; ++k)
        s = f.add(s, f.mul(a.at(i, k), b.at(k, j)));
      c.at(i, j) = s;
    }
  return c;
}

using Vec = std::array<std::uint8_t, 4>;

Vec vec_mul(const GF &f, const Vec &x, const Mat &m) {
  Vec y{};
  for (unsigned j = 0; j < m.n; ++j) {
    std::uint8_t s = 0;
    for (unsigned i = 0; i < m.n; ++i) s = f.add(s, f.mul(x[i], m.at(i, j)));
    y[j] = s;
  }
  return y;
}

// ---- projective point sets ----------------------------------------------------

struct PointSet {
  const GF *field;
  unsigned dim;
  std::vector<Vec> points; // normalized, sorted lexicographically
  std::map<Vec, Point> index;

  void finish() {
    std::sort(points.begin(), points.end());
    for (std::size_t i = 0; i < points.size(); ++i)
      index[points[i]] = static_cast<Point>(i);
  }
};

Vec normalize(const GF &f, Vec v, unsigned dim) {
  for (unsigned i = 0; i < dim; ++i) {
    if (v[i]) {
      std::uint8_t c = f.inv(v[i]);
      for (unsigned j = 0; j < dim; ++j) v[j] = f.mul(v[j], c);
      return v;
    }
  }
  throw CatalogError("zero vector has no projective point");
}

// All points of PG(dim-1, q).
PointSet projective_space(const GF &f, unsigned dim) {
  PointSet ps;
  ps.field = &f;
  ps.dim = dim;
  unsigned q = f.size();
  std::uint64_t total = 1;
  for (unsigned i = 0; i < dim; ++i) total *= q;
  for (std::uint64_t code = 1; code < total; ++code) {
    Vec v{};
    std::uint64_t c = code;
    for (unsigned i = 0; i < dim; ++i) {
      v[i] = static_cast<std::uint8_t>(c % q);
      c /= q;
    }
    Vec nv = normalize(f, v, dim);
    if (nv == v) ps.points.push_back(v);
  }
  ps.finish();
  return ps;
}

Perm perm_of_matrix(const PointSet &ps, const Mat &m) {
  const GF &f = *ps.field;
  std::vector<Point> img(ps.points.size());
  for (std::size_t i = 0; i < ps.points.size(); ++i) {
    Vec y = normalize(f, vec_mul(f, ps.points[i], m), ps.dim);
    auto it = ps.index.find(y);
    if (it == ps.index.end())
      throw CatalogError("matrix does not preserve the point set");
    img[i] = it->second;
  }
  return Perm(std::move(img));
}

// All vectors of F_q^dim including zero (module actions).
PointSet vector_space(const GF &f, unsigned dim) {
  PointSet ps;
  ps.field = &f;
  ps.dim = dim;
  unsigned q = f.size();
  std::uint64_t total = 1;
  for (unsigned i = 0; i < dim; ++i) total *= q;
  for (std::uint64_t code = 0; code < total; ++code) {
    Vec v{};
    std::uint64_t c = code;
    for (unsigned i = 0; i < dim; ++i) {
      v[i] = static_cast<std::uint8_t>(c % q);
      c /= q;
    }
    ps.points.push_back(v);
  }
  ps.finish();
  return ps;
}

Perm perm_of_matrix_linear(const PointSet &ps, const Mat &m) {
  const GF &f = *ps.field;
  std::vector<Point> img(ps.points.size());
  for (std::size_t i = 0; i < ps.points.size(); ++i) {
    Vec y = vec_mul(f, ps.points[i], m);
    auto it = ps.index.find(y);
    if (it == ps.index.end()) throw CatalogError("linear action escaped the set");
    img[i] = it->second;
  }
  return Perm(std::move(img));
}

// F_p-spanning set of the field: 1, g, g^2, ..., g^{k-1}.
std::vector<std::uint8_t> field_basis(const GF &f) {
  std::vector<std::uint8_t> basis;
  std::uint8_t x = 1;
  for (unsigned i = 0; i < f.degree(); ++i) {
    basis.push_back(x);
    x = f.mul(x, f.primitive());
  }
  return basis;
}

// ---- special linear families ---------------------------------------------------

Mat transvection_sl(const GF &f, unsigned n, unsigned i, unsigned j, std::uint8_t lam) {
  Mat m = Mat::eye(n);
  m.at(i, j) = lam;
  return m;
}

std::vector<Mat> sl_generators(const GF &f, unsigned n) {
  std::vector<Mat> gens;
  for (std::uint8_t lam : field_basis(f)) {
    for (unsigned i = 0; i + 1 < n; ++i) {
      gens.push_back(transvection_sl(f, n, i, i + 1, lam));
      gens.push_back(transvection_sl(f, n, i + 1, i, lam));
    }
  }
  return gens;
}

std::vector<Mat> sl_sylow2_generators(const GF &f, unsigned n) {
  // Upper unitriangular group.
  std::vector<Mat> gens;
  for (std::uint8_t lam : field_basis(f))
    for (unsigned i = 0; i < n; ++i)
      for (unsigned j = i + 1; j < n; ++j)
        gens.push_back(transvection_sl(f, n, i, j, lam));
  return gens;
}

// ---- symplectic ------------------------------------------------------------------

// Alternating form on F_q^4 (q even): <x,y> = x1y4 + x2y3 + x3y2 + x4y1.
std::uint8_t symp_form(const GF &f, const Vec &x, const Vec &y) {
  std::uint8_t s = 0;
  for (unsigned i = 0; i < 4; ++i) s = f.add(s, f.mul(x[i], y[3 - i]));
  return s;
}

Mat symp_transvection(const GF &f, const Vec &v) {
  // x -> x + <x,v> v
  Mat m = Mat::eye(4);
  for (unsigned i = 0; i < 4; ++i) {
    Vec e{};
    e[i] = 1;
    std::uint8_t c = symp_form(f, e, v);
    for (unsigned j = 0; j < 4; ++j) m.at(i, j) = f.add(m.at(i, j), f.mul(c, v[j]));
  }
  return m;
}

bool preserves_symp_form(const GF &f, const Mat &m) {
  for (unsigned i = 0; i < 4; ++i)
    for (unsigned j = 0; j < 4; ++j) {
      Vec a{}, b{};
      a[i] = 1;
      b[j] = 1;
      if (symp_form(f, vec_mul(f, a, m), vec_mul(f, b, m)) != symp_form(f, a, b))
        return false;
    }
  return true;
}

// ---- unitary ---------------------------------------------------------------------

// Hermitian form on F_{q^2}^3: <x,y> = x1 c(y3) + x2 c(y2) + x3 c(y1),
// with c the order-two field automorphism a -> a^q.
struct Unitary {
  const GF *f; // field of size q^2
  unsigned q;
  std::uint8_t cbar(std::uint8_t a) const { return f->pow(a, q); }
  std::uint8_t form(const Vec &x, const Vec &y) const {
    std::uint8_t s = 0;
    for (unsigned i = 0; i < 3; ++i) s = f->add(s, f->mul(x[i], cbar(y[2 - i])));
    return s;
  }
  bool preserves(const Mat &m) const {
    for (unsigned i = 0; i < 3; ++i)
      for (unsigned j = 0; j < 3; ++j) {
        Vec a{}, b{};
        a[i] = 1;
        b[j] = 1;
        if (form(vec_mul(*f, a, m), vec_mul(*f, b, m)) != form(a, b)) return false;
      }
    return true;
  }
};

// Lower unitriangular unitary matrices (the unipotent radical fixing <e1>).
std::vector<Mat> unitary_unipotents(const Unitary &u) {
  const GF &f = *u.f;
  std::vector<Mat> out;
  for (unsigned a = 0; a < f.size(); ++a)
    for (unsigned b = 0; b < f.size(); ++b) {
      Mat m = Mat::eye(3);
      m.at(1, 0) = static_cast<std::uint8_t>(a);
      m.at(2, 1) = u.cbar(static_cast<std::uint8_t>(a));
      m.at(2, 0) = static_cast<std::uint8_t>(b);
      if (u.preserves(m)) out.push_back(m);
    }
  return out;
}

// ---- Suzuki ----------------------------------------------------------------------

struct Suzuki {
  const GF *f; // F_q, q = 2^(2n+1)
  unsigned theta; // 2^(n+1)
  std::uint8_t po(std::uint8_t a) const { return f->pow(a, theta); }
  std::uint8_t ovoid_tail(std::uint8_t a, std::uint8_t b) const {
    // f(a,b) = a^(theta+2) + ab + b^theta
    const GF &k = *f;
    std::uint8_t t = k.mul(k.pow(a, theta + 2), 1);
    t = k.add(t, k.mul(a, b));
    t = k.add(t, k.pow(b, theta));
    return t;
  }
  PointSet ovoid() const {
    PointSet ps;
    ps.field = f;
    ps.dim = 4;
    ps.points.push_back(Vec{0, 0, 0, 1});
    for (unsigned a = 0; a < f->size(); ++a)
      for (unsigned b = 0; b < f->size(); ++b)
        ps.points.push_back(Vec{1, static_cast<std::uint8_t>(a),
                                static_cast<std::uint8_t>(b), ovoid_tail(a, b)});
    ps.finish();
    return ps;
  }
  Mat unipotent(std::uint8_t a, std::uint8_t b) const {
    const GF &k = *f;
    Mat m = Mat::eye(4);
    m.at(1, 0) = a;
    m.at(2, 0) = b;
    m.at(2, 1) = po(a);
    m.at(3, 0) = ovoid_tail(a, b);
    m.at(3, 1) = k.add(k.pow(a, theta + 1), b);
    m.at(3, 2) = a;
    return m;
  }
  Mat swap() const {
    Mat m;
    m.n = 4;
    for (unsigned i = 0; i < 4; ++i) m.at(i, 3 - i) = 1;
    return m;
  }
};

// ---- generating-set reduction ---------------------------------------------------

std::vector<Perm> dedup_perms(const std::vector<Perm> &in) {
  std::vector<Perm> out;
  for (const Perm &p : in) {
    if (p.is_identity()) continue;
    bool seen = false;
    for (const Perm &q : out)
      if (p == q) {
        seen = true;
        break;
      }
    if (!seen) out.push_back(p);
  }
  return out;
}

} // namespace

PermGroup shrink_generating_set(const PermGroup &g, const Bounds &bounds) {
  if (g.generators().size() <= 4) return g;
  std::uint64_t target = g.order();

  // Candidate pool: a spread of the generators plus deterministic short
  // products, preferring large element orders (more likely to generate
  // together).
  std::vector<Perm> base = dedup_perms(g.generators());
  std::vector<Perm> pool = base;
  std::uint64_t mix = 0x9e3779b97f4a7c15ull;
  for (unsigned round = 0; round < 600 && pool.size() < 120; ++round) {
    mix = mix * 6364136223846793005ull + 1442695040888963407ull;
    std::size_t i = (mix >> 33) % base.size();
    std::size_t j = (mix >> 13) % base.size();
    std::size_t k = mix % base.size();
    pool.push_back(base[i] * base[j]);
    pool.push_back(base[i] * base[j] * base[k]);
  }
  pool = dedup_perms(pool);
  std::stable_sort(pool.begin(), pool.end(), [](const Perm &a, const Perm &b) {
    return a.order() > b.order();
  });
  if (pool.size() > 36) pool.resize(36);

  auto try_set = [&](std::vector<Perm> cand) -> std::optional<PermGroup> {
    try {
      PermGroup h(g.degree(), std::move(cand), bounds);
      if (h.order() == target) return h;
    } catch (const BoundExceeded &) {
    }
    return std::nullopt;
  };

  for (std::size_t i = 0; i < pool.size(); ++i)
    for (std::size_t j = i + 1; j < pool.size(); ++j)
      if (auto h = try_set({pool[i], pool[j]})) return *h;

  // Greedy fallback (groups needing more than two generators): add pool
  // elements that enlarge the span, then drop redundant ones.  The
  // original generators are appended so the sweep always reaches the
  // whole group.
  for (const Perm &p : base) pool.push_back(p);
  std::vector<Perm> cur;
  std::uint64_t cur_order = 1;
  for (const Perm &cand : pool) {
    auto trial = cur;
    trial.push_back(cand);
    PermGroup h(g.degree(), trial, bounds);
    if (h.order() > cur_order) {
      cur = std::move(trial);
      cur_order = h.order();
      if (cur_order == target) break;
    }
  }
  if (cur_order != target) return g;
  for (std::size_t i = 0; i < cur.size();) {
    std::vector<Perm> trial;
    for (std::size_t j = 0; j < cur.size(); ++j)
      if (j != i) trial.push_back(cur[j]);
    PermGroup h(g.degree(), trial, bounds);
    if (h.order() == target) {
      cur = std::move(trial);
    } else {
      ++i;
    }
  }
  return PermGroup(g.degree(), cur, bounds);
}

// ---- public constructors ---------------------------------------------------------

GroupSpec GroupSpec::parse(const std::string &text) {
  auto split = [](const std::string &s) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    for (;;) {
      std::size_t colon = s.find(':', start);
      if (colon == std::string::npos) {
        parts.push_back(s.substr(start));
        break;
      }
      parts.push_back(s.substr(start, colon - start));
      start = colon + 1;
    }
    return parts;
  };
  auto parts = split(text);
  GroupSpec spec;
  if (parts[0] == "builtin" && parts.size() >= 2) {
    static const std::map<std::string, Family> names = {
        {"psl3", Family::psl3},       {"psp4", Family::psp4},
        {"psl2", Family::psl2},       {"sl2", Family::sl2},
        {"psu3", Family::psu3},       {"sz", Family::sz},
        {"alt", Family::alt},         {"sym", Family::sym},
        {"dihedral", Family::dihedral}, {"quaternion", Family::quaternion},
        {"extraspecial", Family::extraspecial}};
    auto it = names.find(parts[1]);
    if (it == names.end()) throw CatalogError("unknown family: " + parts[1]);
    spec.family = it->second;
    if (parts.size() < 3) throw CatalogError("missing parameter in " + text);
    spec.q = static_cast<unsigned>(std::stoul(parts[2]));
    if (spec.family == Family::extraspecial) {
      spec.aux = 1;
      if (parts.size() >= 4) {
        if (parts[3] == "p") spec.aux = 1;
        else if (parts[3] == "p2") spec.aux = 2;
        else if (parts[3] == "minus") spec.aux = 3;
        else throw CatalogError("bad extraspecial exponent: " + parts[3]);
      }
    }
    return spec;
  }
  if (parts[0] == "catalog" && parts.size() == 3) {
    spec.family = Family::catalog_id;
    spec.q = static_cast<unsigned>(std::stoul(parts[1]));
    spec.aux = static_cast<unsigned>(std::stoul(parts[2]));
    return spec;
  }
  if (parts[0] == "file" && parts.size() >= 2) {
    spec.family = Family::file;
    spec.path = text.substr(5);
    return spec;
  }
  // Bare path.
  spec.family = Family::file;
  spec.path = text;
  return spec;
}

std::string GroupSpec::to_string() const {
  auto name = [&]() -> std::string {
    switch (family) {
      case Family::psl3: return "psl3";
      case Family::psp4: return "psp4";
      case Family::psl2: return "psl2";
      case Family::sl2: return "sl2";
      case Family::psu3: return "psu3";
      case Family::sz: return "sz";
      case Family::alt: return "alt";
      case Family::sym: return "sym";
      case Family::dihedral: return "dihedral";
      case Family::quaternion: return "quaternion";
      case Family::extraspecial: return "extraspecial";
      case Family::catalog_id: return "catalog";
      case Family::file: return "file";
    }
    return "?";
  }();
  if (family == Family::file) return "file:" + path;
  if (family == Family::catalog_id)
    return "catalog:" + std::to_string(q) + ":" + std::to_string(aux);
  std::string s = "builtin:" + name + ":" + std::to_string(q);
  if (family == Family::extraspecial) s += aux == 1 ? ":p" : (aux == 2 ? ":p2" : ":minus");
  return s;
}

std::uint64_t expected_order(const GroupSpec &spec) {
  std::uint64_t q = spec.q;
  switch (spec.family) {
    case Family::psl2:
      return q * (q - 1) * (q + 1) / gcd64(2, q - 1);
    case Family::sl2:
      return q * (q - 1) * (q + 1);
    case Family::psl3:
      return q * q * q * (q * q * q - 1) * (q * q - 1) / gcd64(3, q - 1);
    case Family::psp4:
      return q * q * q * q * (q * q - 1) * (q * q * q * q - 1);
    case Family::psu3:
      return q * q * q * (q * q * q + 1) * (q * q - 1) / gcd64(3, q + 1);
    case Family::sz:
      return q * q * (q * q + 1) * (q - 1);
    case Family::alt: {
      std::uint64_t f = 1;
      for (unsigned i = 2; i <= spec.q; ++i) f *= i;
      return f / 2;
    }
    case Family::sym: {
      std::uint64_t f = 1;
      for (unsigned i = 2; i <= spec.q; ++i) f *= i;
      return f;
    }
    case Family::dihedral:
      return q;
    case Family::quaternion:
      return q;
    case Family::extraspecial:
      return static_cast<std::uint64_t>(q) * q * q;
    default:
      throw CatalogError("no order formula for this spec");
  }
}

namespace {

PermGroup finish_group(unsigned degree, std::vector<Perm> gens,
                       const GroupSpec &spec, const Bounds &bounds) {
  PermGroup g(degree, dedup_perms(gens), bounds);
  std::uint64_t want = expected_order(spec);
  if (g.order() != want)
    throw CatalogError(spec.to_string() + ": constructed order " +
                       std::to_string(g.order()) + " != expected " +
                       std::to_string(want));
  return shrink_generating_set(g, bounds);
}

PermGroup regular_representation(const GroupTable &t, const Bounds &bounds) {
  std::vector<Perm> gens;
  Subgroup whole = full_subgroup(t);
  for (Elt g0 : whole.gens) {
    std::vector<Point> img(t.size());
    for (std::size_t x = 0; x < t.size(); ++x)
      img[x] = static_cast<Point>(t.mul(static_cast<Elt>(x), g0));
    gens.emplace_back(std::move(img));
  }
  if (gens.empty()) gens.emplace_back(Perm(std::max<std::size_t>(t.size(), 1)));
  return PermGroup(static_cast<unsigned>(t.size()), std::move(gens), bounds);
}

GroupTable quaternion_table(unsigned order) {
  // <a, b | a^(m) = 1, b^2 = a^(m/2), a^b = a^-1>, m = order/2.
  unsigned m = order / 2;
  auto code = [m](unsigned i, unsigned j) { return j * m + i; }; // a^i b^j
  std::size_t n = order;
  std::vector<Elt> table(n * n);
  for (unsigned j1 = 0; j1 < 2; ++j1)
    for (unsigned i1 = 0; i1 < m; ++i1)
      for (unsigned j2 = 0; j2 < 2; ++j2)
        for (unsigned i2 = 0; i2 < m; ++i2) {
          // (a^i1 b^j1)(a^i2 b^j2) = a^(i1 + s*i2 + c) b^(j1+j2 mod 2)
          // where s = -1 if j1 = 1 else +1, and c = m/2 when j1 = j2 = 1.
          unsigned i = j1 ? (i1 + m - i2 % m) % m : (i1 + i2) % m;
          unsigned j = (j1 + j2) % 2;
          if (j1 && j2) i = (i + m / 2) % m;
          table[code(i1, j1) * n + code(i2, j2)] = static_cast<Elt>(code(i, j));
        }
  return GroupTable(n, std::move(table), n <= 64);
}

GroupTable heisenberg_table(unsigned p) {
  // Exponent-p extraspecial group of order p^3 (p odd).
  auto code = [p](unsigned x, unsigned y, unsigned z) { return (x * p + y) * p + z; };
  std::size_t n = static_cast<std::size_t>(p) * p * p;
  std::vector<Elt> table(n * n);
  for (unsigned x1 = 0; x1 < p; ++x1)
    for (unsigned y1 = 0; y1 < p; ++y1)
      for (unsigned z1 = 0; z1 < p; ++z1)
        for (unsigned x2 = 0; x2 < p; ++x2)
          for (unsigned y2 = 0; y2 < p; ++y2)
            for (unsigned z2 = 0; z2 < p; ++z2) {
              unsigned x = (x1 + x2) % p;
              unsigned y = (y1 + y2) % p;
              unsigned z = (z1 + z2 + x1 * y2) % p;
              table[code(x1, y1, z1) * n + code(x2, y2, z2)] =
                  static_cast<Elt>(code(x, y, z));
            }
  return GroupTable(n, std::move(table), n <= 64);
}

GroupTable modular_p3_table(unsigned p) {
  // <a, b | a^(p^2) = b^p = 1, a^b = a^(1+p)>, order p^3, exponent p^2.
  unsigned p2 = p * p;
  auto code = [p2](unsigned i, unsigned j) { return j * p2 + i; }; // a^i b^j
  std::size_t n = static_cast<std::size_t>(p2) * p;
  std::vector<Elt> table(n * n);
  auto powmod = [&](unsigned base, unsigned e, unsigned mod) {
    std::uint64_t r = 1, b = base % mod;
    while (e) {
      if (e & 1) r = r * b % mod;
      b = b * b % mod;
      e >>= 1;
    }
    return static_cast<unsigned>(r);
  };
  for (unsigned j1 = 0; j1 < p; ++j1)
    for (unsigned i1 = 0; i1 < p2; ++i1)
      for (unsigned j2 = 0; j2 < p; ++j2)
        for (unsigned i2 = 0; i2 < p2; ++i2) {
          // a^i1 b^j1 a^i2 b^j2 = a^(i1 + i2*(1+p)^j1) b^(j1+j2)
          unsigned t = powmod(1 + p, j1, p2);
          unsigned i = (i1 + static_cast<std::uint64_t>(i2) * t) % p2;
          unsigned j = (j1 + j2) % p;
          table[code(i1, j1) * n + code(i2, j2)] = static_cast<Elt>(code(i, j));
        }
  return GroupTable(n, std::move(table), n <= 64);
}

} // namespace

PermGroup symmetric_group(unsigned n, const Bounds &bounds) {
  if (n < 1) throw CatalogError("sym degree must be >= 1");
  std::vector<Perm> gens;
  if (n >= 2) {
    gens.push_back(Perm::from_cycles(n, {{0, 1}}));
    if (n >= 3) {
      std::vector<unsigned> cyc(n);
      std::iota(cyc.begin(), cyc.end(), 0);
      gens.push_back(Perm::from_cycles(n, {cyc}));
    }
  }
  if (gens.empty()) gens.push_back(Perm(n));
  return PermGroup(n, std::move(gens), bounds);
}

PermGroup alternating_group(unsigned n, const Bounds &bounds) {
  if (n < 3) return PermGroup(std::max(n, 1u), {Perm(std::max(n, 1u))}, bounds);
  std::vector<Perm> gens;
  gens.push_back(Perm::from_cycles(n, {{0, 1, 2}}));
  if (n > 3) {
    std::vector<unsigned> cyc;
    if (n % 2 == 1) {
      cyc.resize(n);
      std::iota(cyc.begin(), cyc.end(), 0);
    } else {
      cyc.resize(n - 1);
      std::iota(cyc.begin(), cyc.end(), 1);
    }
    gens.push_back(Perm::from_cycles(n, {cyc}));
  }
  return PermGroup(n, std::move(gens), bounds);
}

PermGroup dihedral_group(unsigned order, const Bounds &bounds) {
  if (order < 4 || order % 2) throw CatalogError("dihedral order must be even >= 4");
  unsigned m = order / 2;
  std::vector<unsigned> rot(m);
  std::iota(rot.begin(), rot.end(), 0);
  std::vector<Point> refl(m);
  for (unsigned i = 0; i < m; ++i) refl[i] = static_cast<Point>((m - i) % m);
  std::vector<Perm> gens{Perm::from_cycles(m, {rot}), Perm(std::vector<Point>(refl))};
  return PermGroup(m, std::move(gens), bounds);
}

PermGroup direct_product(const PermGroup &a, const PermGroup &b, const Bounds &bounds) {
  unsigned n = a.degree() + b.degree();
  std::vector<Perm> gens;
  for (const Perm &g : a.generators()) {
    std::vector<Point> img(n);
    for (unsigned i = 0; i < a.degree(); ++i) img[i] = g[i];
    for (unsigned i = 0; i < b.degree(); ++i)
      img[a.degree() + i] = static_cast<Point>(a.degree() + i);
    gens.emplace_back(std::move(img));
  }
  for (const Perm &g : b.generators()) {
    std::vector<Point> img(n);
    for (unsigned i = 0; i < a.degree(); ++i) img[i] = static_cast<Point>(i);
    for (unsigned i = 0; i < b.degree(); ++i)
      img[a.degree() + i] = static_cast<Point>(a.degree() + g[i]);
    gens.emplace_back(std::move(img));
  }
  return PermGroup(n, std::move(gens), bounds);
}

PermGroup build_group(const GroupSpec &spec, const Bounds &bounds) {
  switch (spec.family) {
    case Family::psl2: {
      GF f(spec.q);
      PointSet ps = projective_space(f, 2);
      std::vector<Perm> gens;
      for (const Mat &m : sl_generators(f, 2)) gens.push_back(perm_of_matrix(ps, m));
      return finish_group(static_cast<unsigned>(ps.points.size()), gens, spec, bounds);
    }
    case Family::sl2: {
      GF f(spec.q);
      PointSet ps = vector_space(f, 2);
      std::vector<Perm> gens;
      for (const Mat &m : sl_generators(f, 2))
        gens.push_back(perm_of_matrix_linear(ps, m));
      return finish_group(static_cast<unsigned>(ps.points.size()), gens, spec, bounds);
    }
    case Family::psl3: {
      GF f(spec.q);
      PointSet ps = projective_space(f, 3);
      std::vector<Perm> gens;
      for (const Mat &m : sl_generators(f, 3)) gens.push_back(perm_of_matrix(ps, m));
      return finish_group(static_cast<unsigned>(ps.points.size()), gens, spec, bounds);
    }
    case Family::psp4: {
      if (spec.q % 2) throw CatalogError("psp4 supported for even q only");
      GF f(spec.q);
      PointSet ps = projective_space(f, 4);
      std::vector<Perm> gens;
      for (const Vec &v : ps.points) gens.push_back(perm_of_matrix(ps, symp_transvection(f, v)));
      return finish_group(static_cast<unsigned>(ps.points.size()), gens, spec, bounds);
    }
    case Family::psu3: {
      GF f(spec.q * spec.q);
      Unitary u{&f, spec.q};
      PointSet iso;
      iso.field = &f;
      iso.dim = 3;
      {
        PointSet all = projective_space(f, 3);
        for (const Vec &v : all.points)
          if (u.form(v, v) == 0) iso.points.push_back(v);
      }
      iso.finish();
      if (iso.points.size() != static_cast<std::size_t>(spec.q) * spec.q * spec.q + 1)
        throw CatalogError("isotropic point count mismatch");
      std::vector<Perm> gens;
      for (const Mat &m : unitary_unipotents(u)) gens.push_back(perm_of_matrix(iso, m));
      {
        Mat w;
        w.n = 3;
        w.at(0, 2) = w.at(1, 1) = w.at(2, 0) = 1;
        gens.push_back(perm_of_matrix(iso, w));
        // Torus diag(l, l^(q-1), l^(-q)).
        std::uint8_t l = f.primitive();
        Mat t = Mat::eye(3);
        t.at(0, 0) = l;
        t.at(1, 1) = f.pow(l, spec.q - 1);
        t.at(2, 2) = f.inv(f.pow(l, spec.q));
        if (u.preserves(t)) gens.push_back(perm_of_matrix(iso, t));
      }
      return finish_group(static_cast<unsigned>(iso.points.size()), gens, spec, bounds);
    }
    case Family::sz: {
      unsigned n = 0, q = spec.q;
      while (q > 2 && q % 2 == 0) {
        q /= 4;
        ++n;
      }
      if (q != 2) throw CatalogError("sz parameter must be 2^(2n+1)");
      GF f(spec.q);
      Suzuki sz{&f, 1u << (n + 1)};
      PointSet ps = sz.ovoid();
      std::vector<Perm> gens;
      for (std::uint8_t a : field_basis(f)) {
        gens.push_back(perm_of_matrix(ps, sz.unipotent(a, 0)));
        gens.push_back(perm_of_matrix(ps, sz.unipotent(0, a)));
      }
      gens.push_back(perm_of_matrix(ps, sz.swap()));
      return finish_group(static_cast<unsigned>(ps.points.size()), gens, spec, bounds);
    }
    case Family::alt: {
      PermGroup g = alternating_group(spec.q, bounds);
      if (g.order() != expected_order(spec)) throw CatalogError("alt order mismatch");
      return g;
    }
    case Family::sym: {
      PermGroup g = symmetric_group(spec.q, bounds);
      if (g.order() != expected_order(spec)) throw CatalogError("sym order mismatch");
      return g;
    }
    case Family::dihedral:
      return dihedral_group(spec.q, bounds);
    case Family::quaternion: {
      if (spec.q < 8 || (spec.q & (spec.q - 1)))
        throw CatalogError("quaternion order must be a power of two >= 8");
      return regular_representation(quaternion_table(spec.q), bounds);
    }
    case Family::extraspecial: {
      unsigned p = spec.q;
      if (p == 2) {
        if (spec.aux == 3) return regular_representation(quaternion_table(8), bounds);
        return dihedral_group(8, bounds);
      }
      if (p != 3 && p != 5 && p != 7)
        throw CatalogError("extraspecial characteristic not supported");
      if (spec.aux == 2) return regular_representation(modular_p3_table(p), bounds);
      return regular_representation(heisenberg_table(p), bounds);
    }
    case Family::catalog_id:
      throw CatalogError("catalog specs need an explicit entry list; use the cli");
    case Family::file:
      return load_perm_group(spec.path, bounds);
  }
  throw CatalogError("unreachable");
}

PermGroup build_sylow_2_standalone(const GroupSpec &spec, const Bounds &bounds) {
  switch (spec.family) {
    case Family::psl2: {
      GF f(spec.q);
      if (spec.q % 2) throw CatalogError("sylow-2 construction expects even q here");
      PointSet ps = projective_space(f, 2);
      std::vector<Perm> gens;
      for (std::uint8_t lam : field_basis(f))
        gens.push_back(perm_of_matrix(ps, transvection_sl(f, 2, 0, 1, lam)));
      return PermGroup(static_cast<unsigned>(ps.points.size()), dedup_perms(gens), bounds);
    }
    case Family::psl3: {
      GF f(spec.q);
      if (spec.q % 2) throw CatalogError("sylow-2 construction expects even q here");
      PointSet ps = projective_space(f, 3);
      std::vector<Perm> gens;
      for (const Mat &m : sl_sylow2_generators(f, 3)) gens.push_back(perm_of_matrix(ps, m));
      return PermGroup(static_cast<unsigned>(ps.points.size()), dedup_perms(gens), bounds);
    }
    case Family::psp4: {
      if (spec.q % 2) throw CatalogError("psp4 supported for even q only");
      GF f(spec.q);
      PointSet ps = projective_space(f, 4);
      // Unipotent radical of a Borel: all lower unitriangular matrices
      // preserving the form (short-root elements are not transvections,
      // so enumerate rather than specialize).
      std::vector<Perm> gens;
      unsigned q = spec.q;
      std::uint64_t total = 1;
      for (int e = 0; e < 6; ++e) total *= q;
      for (std::uint64_t code = 0; code < total; ++code) {
        Mat m = Mat::eye(4);
        std::uint64_t c = code;
        std::uint8_t *slots[6] = {&m.at(1, 0), &m.at(2, 0), &m.at(2, 1),
                                  &m.at(3, 0), &m.at(3, 1), &m.at(3, 2)};
        for (auto *s : slots) {
          *s = static_cast<std::uint8_t>(c % q);
          c /= q;
        }
        if (preserves_symp_form(f, m)) gens.push_back(perm_of_matrix(ps, m));
      }
      PermGroup u(static_cast<unsigned>(ps.points.size()), dedup_perms(gens), bounds);
      std::uint64_t want = static_cast<std::uint64_t>(q) * q * q * q;
      if (u.order() != want)
        throw CatalogError("psp4 unipotent radical has wrong order " +
                           std::to_string(u.order()));
      return shrink_generating_set(u, bounds);
    }
    case Family::psu3: {
      GF f(spec.q * spec.q);
      Unitary u{&f, spec.q};
      PointSet iso;
      iso.field = &f;
      iso.dim = 3;
      {
        PointSet all = projective_space(f, 3);
        for (const Vec &v : all.points)
          if (u.form(v, v) == 0) iso.points.push_back(v);
      }
      iso.finish();
      std::vector<Perm> gens;
      for (const Mat &m : unitary_unipotents(u)) gens.push_back(perm_of_matrix(iso, m));
      return shrink_generating_set(
          PermGroup(static_cast<unsigned>(iso.points.size()), dedup_perms(gens), bounds),
          bounds);
    }
    case Family::sz: {
      unsigned n = 0, q = spec.q;
      while (q > 2 && q % 2 == 0) {
        q /= 4;
        ++n;
      }
      if (q != 2) throw CatalogError("sz parameter must be 2^(2n+1)");
      GF f(spec.q);
      Suzuki sz{&f, 1u << (n + 1)};
      PointSet ps = sz.ovoid();
      std::vector<Perm> gens;
      for (unsigned a = 0; a < f.size(); ++a)
        for (unsigned b = 0; b < f.size(); ++b)
          if (a || b)
            gens.push_back(perm_of_matrix(
                ps, sz.unipotent(static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b))));
      return shrink_generating_set(
          PermGroup(static_cast<unsigned>(ps.points.size()), dedup_perms(gens), bounds),
          bounds);
    }
    default:
      throw CatalogError("no standard unipotent sylow for this family");
  }
}

// ---- small-groups catalog ----------------------------------------------------

std::vector<CatalogEntry> read_catalog(std::istream &in) {
  std::string line;
  auto next_line = [&](std::string &out) -> bool {
    while (std::getline(in, out)) {
      std::size_t pos = out.find('#');
      if (pos != std::string::npos) out.erase(pos);
      if (out.find_first_not_of(" \t\r\n") != std::string::npos) return true;
    }
    return false;
  };
  if (!next_line(line)) throw CatalogError("missing header");
  {
    std::istringstream h(line);
    std::string a, b;
    h >> a >> b;
    if (a != "smallgroups" || b != "v1") throw CatalogError("missing header");
  }
  std::vector<CatalogEntry> entries;
  while (next_line(line)) {
    std::istringstream h(line);
    std::string kw;
    unsigned order = 0, index = 0;
    h >> kw >> order >> index;
    if (kw != "group" || order == 0) throw CatalogError("expected `group <order> <index>`");
    std::vector<Elt> table(static_cast<std::size_t>(order) * order);
    for (unsigned r = 0; r < order; ++r) {
      if (!next_line(line)) throw CatalogError("truncated table");
      std::istringstream row(line);
      for (unsigned c = 0; c < order; ++c) {
        long v;
        if (!(row >> v) || v < 0 || static_cast<unsigned long>(v) >= order)
          throw CatalogError("bad table entry");
        table[static_cast<std::size_t>(r) * order + c] = static_cast<Elt>(v);
      }
    }
    CatalogEntry e;
    e.order = order;
    e.index = index;
    e.table = std::make_shared<GroupTable>(order, std::move(table), order <= 64);
    e.provenance = "catalog " + std::to_string(order) + "#" + std::to_string(index);
    entries.push_back(std::move(e));
  }
  // Expected counts of 2-groups per order.
  std::map<unsigned, unsigned> counts;
  for (const auto &e : entries) ++counts[e.order];
  const std::pair<unsigned, unsigned> expected[] = {{16, 14}, {32, 51}, {64, 267}};
  for (auto [o, c] : expected)
    if (counts[o] != c)
      throw CatalogError("order-" + std::to_string(o) + " section has " +
                         std::to_string(counts[o]) + " groups, expected " +
                         std::to_string(c));
  return entries;
}

std::vector<CatalogEntry> load_catalog(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw CatalogError("cannot open catalog: " + path);
  return read_catalog(in);
}

void write_catalog(std::ostream &out, const std::vector<CatalogEntry> &entries) {
  out << "smallgroups v1\n";
  for (const auto &e : entries) {
    out << "group " << e.order << " " << e.index << "\n";
    for (unsigned r = 0; r < e.order; ++r) {
      for (unsigned c = 0; c < e.order; ++c) {
        if (c) out << ' ';
        out << e.table->mul(static_cast<Elt>(r), static_cast<Elt>(c));
      }
      out << "\n";
    }
  }
}

std::vector<CatalogEntry>
catalog_search(const std::vector<CatalogEntry> &entries,
               const std::function<bool(const CatalogEntry &)> &predicate) {
  std::vector<CatalogEntry> out;
  for (const auto &e : entries)
    if (predicate(e)) out.push_back(e);
  return out;
}

} // namespace fusionkit
