#include "fusionkit/perm_group.hpp"

#include <deque>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace fusionkit {

PermGroup::PermGroup(unsigned degree, std::vector<Perm> generators,
                     const Bounds &bounds)
    : degree_(degree), gens_(std::move(generators)) {
  if (degree_ == 0) throw PermError("degree must be positive");
  if (degree_ > bounds.max_degree) throw BoundExceeded("degree exceeds bound");
  for (const Perm &g : gens_)
    if (g.degree() != degree_) throw PermError("generator degree mismatch");
  build_chain(bounds);
}

bool PermGroup::strip(const Perm &g, Perm *residue, std::size_t *level) const {
  Perm h = g;
  for (std::size_t l = 0; l < chain_.size(); ++l) {
    const ChainLevel &lvl = chain_[l];
    Point image = h[lvl.base_point];
    if (lvl.where[image] < 0) {
      *residue = std::move(h);
      *level = l;
      return false;
    }
    h = h * lvl.transversal[lvl.where[image]].inverse();
  }
  if (h.is_identity()) return true;
  *residue = std::move(h);
  *level = chain_.size();
  return false;
}

void PermGroup::build_chain(const Bounds &bounds) {
  chain_.clear();

  // chain_[k].generators holds every strong generator fixing base points
  // 0..k-1, so each level's orbit is taken under the full stabilizer's
  // generating set.  Frontier counters avoid re-emitting Schreier
  // generators for (orbit point, generator) pairs already processed.
  std::vector<std::size_t> orbit_done, gens_done;

  std::deque<Perm> work;
  for (const Perm &g : gens_)
    if (!g.is_identity()) work.push_back(g);

  while (!work.empty()) {
    Perm g = std::move(work.front());
    work.pop_front();

    Perm residue;
    std::size_t level;
    if (strip(g, &residue, &level)) continue;

    if (level == chain_.size()) {
      unsigned bp = 0;
      for (unsigned i = 0; i < degree_; ++i)
        if (residue[i] != i) {
          bp = i;
          break;
        }
      ChainLevel lvl;
      lvl.base_point = bp;
      lvl.where.assign(degree_, -1);
      lvl.where[bp] = 0;
      lvl.orbit.push_back(static_cast<Point>(bp));
      lvl.transversal.push_back(Perm(degree_));
      chain_.push_back(std::move(lvl));
      orbit_done.push_back(0);
      gens_done.push_back(0);
    }

    // The residue fixes base points 0..level-1, so it is a generator of
    // every stabilizer down to `level`.
    for (std::size_t k = 0; k <= level; ++k) chain_[k].generators.push_back(residue);

    for (std::size_t k = 0; k <= level; ++k) {
      ChainLevel &lvl = chain_[k];
      for (std::size_t i = 0; i < lvl.orbit.size(); ++i) {
        for (const Perm &h : lvl.generators) {
          Point image = h[lvl.orbit[i]];
          if (lvl.where[image] < 0) {
            lvl.where[image] = static_cast<std::int32_t>(lvl.orbit.size());
            lvl.orbit.push_back(image);
            lvl.transversal.push_back(lvl.transversal[i] * h);
          }
        }
      }
      std::size_t oi = orbit_done[k], gi = gens_done[k];
      for (std::size_t i = 0; i < lvl.orbit.size(); ++i) {
        for (std::size_t j = 0; j < lvl.generators.size(); ++j) {
          if (i < oi && j < gi) continue;
          const Perm &h = lvl.generators[j];
          Point image = h[lvl.orbit[i]];
          Perm schreier =
              lvl.transversal[i] * h * lvl.transversal[lvl.where[image]].inverse();
          if (!schreier.is_identity()) work.push_back(std::move(schreier));
        }
      }
      orbit_done[k] = lvl.orbit.size();
      gens_done[k] = lvl.generators.size();
    }
  }

  order_ = chain_order();
  if (order_ > bounds.ambient_order)
    throw BoundExceeded("group order " + std::to_string(order_) +
                        " exceeds ambient bound");

  for (const Perm &g : gens_)
    if (!contains(g)) throw PermError("stabilizer chain rejects a generator");
}

std::uint64_t PermGroup::chain_order() const {
  std::uint64_t o = 1;
  for (const ChainLevel &lvl : chain_) o *= lvl.orbit.size();
  return o;
}

bool PermGroup::contains(const Perm &g) const {
  if (g.degree() != degree_) return false;
  Perm residue;
  std::size_t level;
  return strip(g, &residue, &level);
}

PermGroup read_perm_group(std::istream &in, const Bounds &bounds) {
  auto next_line = [&](std::string &line) -> bool {
    while (std::getline(in, line)) {
      std::size_t pos = line.find('#');
      if (pos != std::string::npos) line.erase(pos);
      std::size_t a = line.find_first_not_of(" \t\r\n");
      if (a == std::string::npos) continue;
      return true;
    }
    return false;
  };

  std::string line;
  if (!next_line(line)) throw PermError("missing header");
  std::istringstream h1(line);
  std::string kw;
  unsigned degree = 0;
  h1 >> kw >> degree;
  if (kw != "degree" || degree == 0) throw PermError("expected `degree N`");
  if (!next_line(line)) throw PermError("missing generator count");
  std::istringstream h2(line);
  std::size_t count = 0;
  h2 >> kw >> count;
  if (kw != "count") throw PermError("expected `count K`");

  std::vector<Perm> gens;
  gens.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    if (!next_line(line)) throw PermError("missing generator line");
    std::istringstream ls(line);
    std::vector<Point> img;
    img.reserve(degree);
    long v;
    while (ls >> v) {
      if (v < 0 || static_cast<unsigned long>(v) >= degree)
        throw PermError("image out of range");
      img.push_back(static_cast<Point>(v));
    }
    if (img.size() != degree) throw PermError("image list length mismatch");
    gens.emplace_back(std::move(img));
  }
  return PermGroup(degree, std::move(gens), bounds);
}

PermGroup load_perm_group(const std::string &path, const Bounds &bounds) {
  std::ifstream in(path);
  if (!in) throw PermError("cannot open group file: " + path);
  return read_perm_group(in, bounds);
}

void write_perm_group(std::ostream &out, const PermGroup &g,
                      const std::string &comment) {
  if (!comment.empty()) {
    std::istringstream cs(comment);
    std::string line;
    while (std::getline(cs, line)) out << "# " << line << "\n";
  }
  out << "degree " << g.degree() << "\n";
  out << "count " << g.generators().size() << "\n";
  for (const Perm &p : g.generators()) {
    for (unsigned i = 0; i < g.degree(); ++i) {
      if (i) out << ' ';
      out << p[i];
    }
    out << "\n";
  }
}

} // namespace fusionkit
