#include "fusionkit/subsystems.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

namespace fusionkit {

namespace {
std::vector<Elt> member_list_of(const Subgroup &s) {
  std::vector<Elt> out;
  s.members.for_each([&](std::size_t x) { out.push_back(static_cast<Elt>(x)); });
  return out;
}
} // namespace

std::vector<Elt> member_listing(const Subgroup &s) { return member_list_of(s); }

std::uint32_t FusionFace::id_of(const Bitset &members) const {
  for (std::uint32_t i = 0; i < subgroups.size(); ++i)
    if (subgroups[i].members == members) return i;
  throw GroupTableError("subgroup missing from the face lattice");
}

FusionFace face_of(const FusionSystem &f) {
  FusionFace face;
  face.support = std::make_shared<GroupTable>(f.sylow());
  face.subgroups.reserve(f.num_subgroups());
  for (SubId id = 0; id < f.num_subgroups(); ++id) face.subgroups.push_back(f.subgroup(id));
  face.homs.resize(f.num_subgroups());
  for (SubId id = 0; id < f.num_subgroups(); ++id)
    for (const FMap &m : f.hom_set(id, f.whole_id()))
      face.homs[id].emplace_back(m.dst, m.img);
  return face;
}

bool is_normal_in_fusion(const FusionSystem &f, SubId q) {
  if (!f.is_strongly_closed(q)) return false;
  const Bitset &qm = f.subgroup(q).members;
  for (const auto &rec : f.essential_subgroups()) {
    for (SubId e : f.fclass_members(f.fclass_of(rec.subgroup)))
      if (!qm.is_subset_of(f.subgroup(e).members)) return false;
    for (const FMap &m : f.aut_group(rec.subgroup).maps)
      if (!(f.apply_to_set(m, qm) == qm)) return false;
  }
  for (const FMap &m : f.aut_group(f.whole_id()).maps)
    if (!(f.apply_to_set(m, qm) == qm)) return false;
  return true;
}

// ---- quotient systems ---------------------------------------------------------

QuotientFusion::QuotientFusion(const FusionSystem &f, SubId q)
    : parent_(&f), q_(q) {
  if (!is_normal_in_fusion(f, q))
    throw GroupTableError("quotient by a subgroup not normal in the fusion system");
  Subgroup n = f.subgroup(q);
  QuotientResult res = quotient_group(f.sylow(), n);
  bar_ = res.group;
  proj_ = res.projection;
}

FusionFace QuotientFusion::face() const {
  const FusionSystem &f = *parent_;
  FusionFace face;
  face.support = bar_;
  auto subs = all_subgroups(*bar_, f.bounds().lattice);
  face.subgroups = subs;
  face.homs.resize(subs.size());

  // Preimage of each quotient subgroup.
  std::size_t sz = f.sylow().size();
  for (std::uint32_t i = 0; i < subs.size(); ++i) {
    Bitset pre(sz);
    for (std::size_t x = 0; x < sz; ++x)
      if (subs[i].members.test(proj_[x])) pre.set(x);
    SubId pid = f.id_of(pre);
    // Project all morphisms from the preimage; morphisms fix Q setwise
    // because Q is normal in F, so the projection is well defined.
    std::vector<Elt> pre_members = f.members_of(pid);
    std::unordered_map<std::uint64_t, std::vector<std::size_t>> seen;
    for (const FMap &m : f.hom_set(pid, f.whole_id())) {
      std::vector<Elt> bar_members;
      for (Elt x : member_listing(subs[i])) bar_members.push_back(x);
      // image vector over the quotient subgroup's member list
      std::vector<Elt> img(bar_members.size(), 0);
      bool consistent = true;
      // build map: for each parent member x, bar(x) -> bar(m(x)) must be
      // a function.
      std::vector<std::int32_t> partial(bar_->size(), -1);
      for (std::size_t k = 0; k < pre_members.size(); ++k) {
        Elt bx = proj_[pre_members[k]];
        Elt by = proj_[m.img[k]];
        if (partial[bx] < 0)
          partial[bx] = by;
        else if (partial[bx] != by)
          consistent = false;
      }
      if (!consistent)
        throw GroupTableError("quotient projection is not well defined");
      for (std::size_t k = 0; k < bar_members.size(); ++k)
        img[k] = static_cast<Elt>(partial[bar_members[k]]);
      Bitset image(bar_->size());
      for (Elt y : img) image.set(y);
      std::uint32_t dst = face.id_of(image);
      std::uint64_t h = 0x9e3779b97f4a7c15ull ^ dst;
      for (Elt y : img) {
        h ^= y;
        h *= 0x100000001b3ull;
      }
      bool dup = false;
      for (std::size_t j : seen[h])
        if (face.homs[i][j].first == dst && face.homs[i][j].second == img) dup = true;
      if (!dup) {
        seen[h].push_back(face.homs[i].size());
        face.homs[i].emplace_back(dst, std::move(img));
      }
    }
  }
  return face;
}

// ---- generic face audit --------------------------------------------------------

FusionSystem::AuditReport face_saturation_audit(const FusionFace &face, unsigned p) {
  FusionSystem::AuditReport report;
  const GroupTable &t = *face.support;
  std::size_t nsub = face.subgroups.size();

  // Fusion classes of subgroups from image subgroups of the hom sets.
  std::vector<std::uint32_t> cls(nsub);
  std::iota(cls.begin(), cls.end(), 0);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::uint32_t i = 0; i < nsub; ++i)
      for (const auto &[dst, img] : face.homs[i]) {
        if (face.subgroups[dst].order() != face.subgroups[i].order()) continue;
        std::uint32_t a = std::min(cls[i], cls[dst]);
        if (cls[i] != a || cls[dst] != a) {
          cls[i] = cls[dst] = a;
          changed = true;
        }
      }
  }

  Subgroup whole = full_subgroup(t);
  std::map<std::uint32_t, std::vector<std::uint32_t>> classes;
  for (std::uint32_t i = 0; i < nsub; ++i) classes[cls[i]].push_back(i);

  for (auto &[root, members] : classes) {
    ++report.classesChecked;
    // Fully normalized representative.
    std::uint32_t rep = members.front();
    std::uint64_t best = 0;
    for (std::uint32_t id : members) {
      std::uint64_t n = normalizer_in(whole, face.subgroups[id]).order();
      if (n > best) {
        best = n;
        rep = id;
      }
    }
    auto rep_members = member_list_of(face.subgroups[rep]);

    // Fully automized.
    std::uint64_t aut_f = 0;
    for (const auto &[dst, img] : face.homs[rep])
      if (dst == rep) ++aut_f;
    Subgroup nrm = normalizer_in(whole, face.subgroups[rep]);
    Subgroup cent = centralizer_in(whole, face.subgroups[rep]);
    std::uint64_t aut_s = nrm.order() / cent.order();
    std::uint64_t ppart = 1;
    for (std::uint64_t n = aut_f; n % p == 0; n /= p) ppart *= p;
    if (aut_s != ppart) {
      report.passed = false;
      if (report.firstFailure.empty()) report.firstFailure = "not fully automized";
      continue;
    }

    // Receptive.
    std::vector<std::vector<Elt>> aut_s_maps;
    nrm.members.for_each([&](std::size_t g0) {
      std::vector<Elt> m;
      for (Elt x : rep_members) m.push_back(t.conj(x, static_cast<Elt>(g0)));
      aut_s_maps.push_back(std::move(m));
    });
    std::sort(aut_s_maps.begin(), aut_s_maps.end());
    aut_s_maps.erase(std::unique(aut_s_maps.begin(), aut_s_maps.end()), aut_s_maps.end());

    for (std::uint32_t q : members) {
      auto q_members = member_list_of(face.subgroups[q]);
      for (const auto &[dst, img] : face.homs[q]) {
        if (dst != rep) continue;
        ++report.morphismsChecked;
        // phi : Q -> rep with images img.  N_phi inside N(Q).
        Subgroup nq = normalizer_in(whole, face.subgroups[q]);
        Bitset nphi(t.size());
        std::vector<std::int32_t> pos(t.size(), -1);
        for (std::size_t k = 0; k < rep_members.size(); ++k) pos[rep_members[k]] = static_cast<std::int32_t>(k);
        nq.members.for_each([&](std::size_t g0) {
          // composite x -> phi(conj(phi^-1(x), g0)) over rep.
          std::vector<Elt> composite(rep_members.size());
          for (std::size_t k = 0; k < q_members.size(); ++k) {
            Elt x_img = img[k]; // phi(q_members[k])
            Elt conj_src = t.conj(q_members[k], static_cast<Elt>(g0));
            // find position of conj_src in q_members
            auto it = std::lower_bound(q_members.begin(), q_members.end(), conj_src);
            composite[static_cast<std::size_t>(pos[x_img])] =
                img[static_cast<std::size_t>(it - q_members.begin())];
          }
          if (std::binary_search(aut_s_maps.begin(), aut_s_maps.end(), composite))
            nphi.set(g0);
        });
        // Extension: some morphism from N_phi restricting to phi.
        std::uint32_t nphi_id = face.id_of(nphi);
        if (nphi_id == q) continue;
        auto n_members = member_list_of(face.subgroups[nphi_id]);
        std::vector<std::int32_t> qpos(t.size(), -1);
        for (std::size_t k = 0; k < n_members.size(); ++k) qpos[n_members[k]] = static_cast<std::int32_t>(k);
        bool extended = false;
        for (const auto &[dst2, img2] : face.homs[nphi_id]) {
          bool match = true;
          for (std::size_t k = 0; k < q_members.size() && match; ++k)
            if (img2[static_cast<std::size_t>(qpos[q_members[k]])] != img[k]) match = false;
          if (match) {
            extended = true;
            break;
          }
        }
        if (!extended) {
          report.passed = false;
          if (report.firstFailure.empty()) report.firstFailure = "not receptive";
        }
      }
    }
  }
  return report;
}

// ---- ambient-realized local subsystems ------------------------------------------

LocalSubsystem normalizer_subsystem(const FusionSystem &f, SubId q) {
  LocalSubsystem out;
  SubId anchor = q;
  if (!f.is_fully_normalized(q)) {
    anchor = f.fclass_rep(f.fclass_of(q));
    out.substituted = true;
  }
  out.anchor = anchor;

  const EnumeratedGroup &g = f.ambient();
  EnumSubgroup handle;
  handle.parent = &g;
  handle.members = Bitset(g.size());
  for (Elt x : f.members_of(anchor)) handle.members.set(f.to_ambient(x));
  handle.gens = handle.members.members();

  EnumSubgroup n = g.normalizer_of(handle);
  std::vector<Perm> gens;
  for (GIdx i : n.gens) gens.push_back(g.element(i));
  if (gens.empty()) gens.push_back(Perm(g.degree()));
  auto sub = std::make_shared<EnumeratedGroup>(PermGroup(g.degree(), gens, f.bounds()),
                                               f.bounds());

  // N_S(anchor) is a Sylow p-subgroup of the normalizer when the anchor is
  // fully normalized; hand it over explicitly so the subsystem is
  // supported on the expected group.
  Subgroup whole = full_subgroup(f.sylow());
  Subgroup ns = normalizer_in(whole, f.subgroup(anchor));
  std::vector<GIdx> sylow_gens;
  ns.members.for_each([&](std::size_t x) {
    GIdx amb = f.to_ambient(static_cast<Elt>(x));
    std::int64_t local = sub->index_of(g.element(amb));
    if (local < 0) throw GroupTableError("normalizer lost a Sylow element");
    sylow_gens.push_back(static_cast<GIdx>(local));
  });
  out.system = std::make_shared<FusionSystem>(sub, f.prime(), f.bounds(), &sylow_gens);
  return out;
}

LocalSubsystem centralizer_subsystem(const FusionSystem &f, Elt x) {
  LocalSubsystem out;
  // Substitute a fully centralized representative of the element's class.
  Elt pick = x;
  {
    Subgroup whole = full_subgroup(f.sylow());
    std::uint64_t best = 0;
    for (Elt y : f.element_class_members(f.element_class(x))) {
      std::uint64_t c = centralizer_in(whole, y).order();
      if (c > best) {
        best = c;
        pick = y;
      }
    }
    std::uint64_t mine = centralizer_in(whole, x).order();
    out.substituted = pick != x && best > mine;
    if (!out.substituted) pick = x;
  }
  Bitset anchor_set(f.sylow().size());
  anchor_set.set(0);
  {
    Elt cur = pick;
    while (cur != 0) {
      anchor_set.set(cur);
      cur = f.sylow().mul(cur, pick);
    }
  }
  out.anchor = f.id_of(anchor_set);

  const EnumeratedGroup &g = f.ambient();
  EnumSubgroup c = g.centralizer_of_elements({f.to_ambient(pick)});
  std::vector<Perm> gens;
  for (GIdx i : c.gens) gens.push_back(g.element(i));
  if (gens.empty()) gens.push_back(Perm(g.degree()));
  auto sub = std::make_shared<EnumeratedGroup>(PermGroup(g.degree(), gens, f.bounds()),
                                               f.bounds());
  Subgroup whole = full_subgroup(f.sylow());
  Subgroup cs = centralizer_in(whole, pick);
  std::vector<GIdx> sylow_gens;
  cs.members.for_each([&](std::size_t y) {
    std::int64_t local = sub->index_of(g.element(f.to_ambient(static_cast<Elt>(y))));
    if (local < 0) throw GroupTableError("centralizer lost a Sylow element");
    sylow_gens.push_back(static_cast<GIdx>(local));
  });
  out.system = std::make_shared<FusionSystem>(sub, f.prime(), f.bounds(), &sylow_gens);
  return out;
}

ParabolicReport is_parabolic_char_p(const FusionSystem &f) {
  ParabolicReport report;
  auto nrms = normal_subgroups(f.sylow(), f.bounds().lattice);
  Subgroup whole = full_subgroup(f.sylow());
  for (const auto &q : nrms) {
    if (q.order() == 1) continue;
    ++report.checked;
    SubId qid = f.id_of(q.members);
    Subgroup cent = centralizer_in(whole, q);
    if (cent.members.is_subset_of(q.members)) {
      // Q <= O_p(N_F(Q)) always, so C_S(O_p) <= C_S(Q) <= Q <= O_p.
      ++report.fastPath;
      continue;
    }
    LocalSubsystem local = normalizer_subsystem(f, qid);
    if (!local.system->is_constrained()) {
      report.parabolic = false;
      if (report.firstFailure.empty())
        report.firstFailure = "N_F(Q) not constrained for |Q| = " + std::to_string(q.order());
    }
  }
  return report;
}

// ---- generated subsystems --------------------------------------------------------

GeneratedSubsystem::GeneratedSubsystem(
    const FusionSystem &f, SubId support,
    std::vector<std::pair<SubId, std::vector<FMap>>> seeds)
    : parent_(&f), support_(support), seeds_(std::move(seeds)) {
  support_members_ = f.members_of(support);
  // Inner maps of the support are morphisms of every subsystem on it.
  {
    std::vector<FMap> inner;
    std::vector<Elt> gens;
    {
      Subgroup s = f.subgroup(support);
      gens = s.gens;
    }
    for (Elt t : gens) inner.push_back(f.restrict_map(f.inner_map(f.whole_id(), t), support));
    seeds_.emplace_back(support, std::move(inner));
  }
  for (SubId id = 0; id < f.num_subgroups(); ++id)
    if (f.subgroup(id).members.is_subset_of(f.subgroup(support).members))
      sources_.push_back(id);
  close();
}

FMap GeneratedSubsystem::canonical(const FMap &m) const {
  const FusionSystem &f = *parent_;
  std::vector<Elt> best = m.img;
  Elt best_u = 0;
  for (Elt u : support_members_) {
    if (u == 0) continue;
    bool smaller = false;
    for (std::size_t i = 0; i < m.img.size(); ++i) {
      Elt c = f.conj_elt(m.img[i], u);
      if (c < best[i]) {
        smaller = true;
        break;
      }
      if (c > best[i]) break;
    }
    if (smaller) {
      for (std::size_t i = 0; i < m.img.size(); ++i) best[i] = f.conj_elt(m.img[i], u);
      best_u = u;
    }
  }
  FMap out;
  out.src = m.src;
  out.img = std::move(best);
  Bitset image(f.sylow().size());
  for (Elt y : out.img) image.set(y);
  out.dst = f.id_of(image);
  out.witness = static_cast<GIdx>(f.ambient().mul(m.witness, f.to_ambient(best_u)));
  return out;
}

void GeneratedSubsystem::close() {
  const FusionSystem &f = *parent_;
  std::uint64_t steps = 0;
  const Bitset &supp = f.subgroup(support_).members;
  for (SubId src : sources_) {
    std::vector<FMap> states{canonical(f.identity_map(src))};
    std::unordered_map<std::uint64_t, std::vector<std::size_t>> seen;
    seen[f.map_key(states[0])].push_back(0);
    auto push = [&](const FMap &m) {
      FMap canon = canonical(m);
      auto &bucket = seen[f.map_key(canon)];
      for (std::size_t i : bucket)
        if (states[i].img == canon.img) return;
      bucket.push_back(states.size());
      states.push_back(std::move(canon));
    };
    for (std::size_t i = 0; i < states.size(); ++i) {
      FMap cur = states[i];
      Bitset image = f.subgroup(cur.dst).members;
      Subgroup cimg = centralizer_in(full_subgroup(f.sylow()), f.subgroup(cur.dst));
      for (const auto &[eid, maps] : seeds_) {
        const Bitset &em = f.subgroup(eid).members;
        Bitset seen_cosets(f.sylow().size());
        for (Elt t : support_members_) {
          if (seen_cosets.test(t)) continue;
          cimg.members.for_each([&](std::size_t x) {
            Elt coset = f.sylow().mul(static_cast<Elt>(x), t);
            if (supp.test(coset)) seen_cosets.set(coset);
          });
          Bitset moved = f.conj_bitset(image, t);
          if (!moved.is_subset_of(em)) continue;
          FMap shifted;
          shifted.src = cur.src;
          shifted.img.reserve(cur.img.size());
          for (Elt y : cur.img) shifted.img.push_back(f.conj_elt(y, t));
          shifted.dst = f.id_of(moved);
          shifted.witness =
              static_cast<GIdx>(f.ambient().mul(cur.witness, f.to_ambient(t)));
          for (const FMap &alpha : maps) {
            if (++steps > f.bounds().closure_steps)
              throw BoundExceeded("closure budget exceeded");
            FMap next;
            next.src = cur.src;
            next.img.reserve(cur.img.size());
            Bitset nimg(f.sylow().size());
            for (Elt y : shifted.img) {
              Elt z = f.apply(alpha, y);
              next.img.push_back(z);
              nimg.set(z);
            }
            next.dst = f.id_of(nimg);
            next.witness =
                static_cast<GIdx>(f.ambient().mul(shifted.witness, alpha.witness));
            push(next);
          }
        }
      }
    }
    std::sort(states.begin(), states.end(),
              [](const FMap &a, const FMap &b) { return a.img < b.img; });
    homs_.emplace(src, std::move(states));
  }
}

const std::vector<FMap> &GeneratedSubsystem::homs_mod_inner(SubId p) const {
  auto it = homs_.find(p);
  if (it == homs_.end()) throw GroupTableError("source outside the support");
  return it->second;
}

std::vector<FMap> GeneratedSubsystem::aut_set(SubId p) const {
  const FusionSystem &f = *parent_;
  std::vector<FMap> out;
  const Bitset &pm = f.subgroup(p).members;
  for (const FMap &psi : homs_mod_inner(p)) {
    // Expand by inner maps of the support and keep automorphisms.
    for (Elt u : support_members_) {
      Bitset moved = f.conj_bitset(f.subgroup(psi.dst).members, u);
      if (!(moved == pm)) continue;
      FMap full;
      full.src = p;
      full.dst = p;
      full.img.reserve(psi.img.size());
      for (Elt y : psi.img) full.img.push_back(f.conj_elt(y, u));
      full.witness = static_cast<GIdx>(f.ambient().mul(psi.witness, f.to_ambient(u)));
      bool dup = false;
      for (const FMap &m : out)
        if (m.img == full.img) {
          dup = true;
          break;
        }
      if (!dup) out.push_back(std::move(full));
    }
  }
  return out;
}

bool GeneratedSubsystem::equals_parent_on_support() const {
  const FusionSystem &f = *parent_;
  if (support_ != f.whole_id()) return false;
  for (SubId src : sources_) {
    const auto &mine = homs_mod_inner(src);
    const auto &full = f.homs_mod_inner(src);
    if (mine.size() != full.size()) return false;
    for (std::size_t i = 0; i < mine.size(); ++i)
      if (mine[i].img != full[i].img) return false;
  }
  return true;
}

FusionFace GeneratedSubsystem::face() const {
  const FusionSystem &f = *parent_;
  FusionFace face;
  Subgroup support_sub = f.subgroup(support_);
  auto [table, back] = subgroup_as_table(support_sub);
  face.support = std::make_shared<GroupTable>(std::move(table));
  std::vector<std::int32_t> to_local(f.sylow().size(), -1);
  for (std::size_t i = 0; i < back.size(); ++i) to_local[back[i]] = static_cast<std::int32_t>(i);

  face.subgroups = all_subgroups(*face.support, f.bounds().lattice);
  face.homs.resize(face.subgroups.size());
  for (std::uint32_t i = 0; i < face.subgroups.size(); ++i) {
    // Corresponding parent subgroup.
    Bitset parent_members(f.sylow().size());
    face.subgroups[i].members.for_each(
        [&](std::size_t x) { parent_members.set(back[x]); });
    SubId pid = f.id_of(parent_members);
    auto p_members = f.members_of(pid);
    for (const FMap &psi : homs_mod_inner(pid)) {
      for (Elt u : support_members_) {
        Bitset moved = f.conj_bitset(f.subgroup(psi.dst).members, u);
        std::vector<Elt> img;
        img.reserve(psi.img.size());
        for (Elt y : psi.img) img.push_back(static_cast<Elt>(to_local[f.conj_elt(y, u)]));
        Bitset image(face.support->size());
        for (Elt y : img) image.set(y);
        std::uint32_t dst = face.id_of(image);
        bool dup = false;
        for (const auto &[d0, i0] : face.homs[i])
          if (d0 == dst && i0 == img) {
            dup = true;
            break;
          }
        if (!dup) face.homs[i].emplace_back(dst, std::move(img));
      }
    }
    std::sort(face.homs[i].begin(), face.homs[i].end());
  }
  return face;
}

MinimalSubsystems minimal_subsystems(const FusionSystem &f) {
  MinimalSubsystems out;
  unsigned p = f.prime();

  auto part_maps = [&](SubId rep, bool p_part) {
    const FusionSystem::AutGroup &ag = f.aut_group(rep);
    std::vector<Elt> gens;
    for (std::size_t i = 1; i < ag.table->size(); ++i) {
      unsigned o = ag.table->element_order(static_cast<Elt>(i));
      bool is_p = true;
      while (o % p == 0) o /= p;
      is_p = o == 1;
      if (p_part == is_p) gens.push_back(static_cast<Elt>(i));
    }
    Subgroup part = subgroup_closure(*ag.table, gens);
    std::vector<Elt> small = part.gens;
    std::vector<FMap> maps;
    for (Elt g0 : small) maps.push_back(ag.maps[g0]);
    return maps;
  };

  // O^{p'}(F): generated on S by the subgroups generated by p-elements of
  // each automorphism group.
  {
    std::vector<std::pair<SubId, std::vector<FMap>>> seeds;
    for (std::uint32_t c = 0; c < f.num_fclasses(); ++c) {
      SubId rep = f.fclass_rep(c);
      auto maps = part_maps(rep, true);
      if (!maps.empty()) seeds.emplace_back(rep, std::move(maps));
    }
    out.oPPrime = std::make_shared<GeneratedSubsystem>(f, f.whole_id(), std::move(seeds));
    out.oPPrimeIsWhole = out.oPPrime->equals_parent_on_support();
  }

  // O^p(F): supported on the hyperfocal subgroup, generated by the
  // p'-part closures O^p(Aut_F(P)).
  Subgroup hyp = f.hyperfocal_subgroup();
  out.hyperfocal = f.id_of(hyp.members);
  {
    std::vector<std::pair<SubId, std::vector<FMap>>> seeds;
    for (std::uint32_t c = 0; c < f.num_fclasses(); ++c) {
      SubId rep = f.fclass_rep(c);
      if (!f.subgroup(rep).members.is_subset_of(hyp.members)) continue;
      // O^p(X) is generated by the p'-elements of X.
      auto maps = part_maps(rep, false);
      if (!maps.empty()) seeds.emplace_back(rep, std::move(maps));
    }
    out.oP = std::make_shared<GeneratedSubsystem>(f, out.hyperfocal, std::move(seeds));
  }

  // Index characterization re-verified: O^p(Aut_F(P)) lies inside the
  // subsystem's automorphism group for every subgroup of the support.
  for (std::uint32_t c = 0; c < f.num_fclasses(); ++c) {
    SubId rep = f.fclass_rep(c);
    if (!f.subgroup(rep).members.is_subset_of(hyp.members)) continue;
    auto want = part_maps(rep, false);
    auto have = out.oP->aut_set(rep);
    for (const FMap &w : want) {
      bool found = false;
      for (const FMap &h : have)
        if (h.img == w.img) {
          found = true;
          break;
        }
      if (!found)
        throw GroupTableError("p-power-index characterization failed");
    }
  }
  return out;
}

// ---- comparisons -----------------------------------------------------------------

std::optional<std::vector<Elt>> fusion_isomorphism(const FusionFace &a,
                                                   const FusionFace &b) {
  if (a.support->size() != b.support->size()) return std::nullopt;
  if (a.subgroups.size() != b.subgroups.size()) return std::nullopt;

  // Per-subgroup hom-set sizes must match as multisets keyed by order.
  {
    std::map<std::pair<std::uint64_t, std::size_t>, long> tally;
    for (std::size_t i = 0; i < a.subgroups.size(); ++i)
      ++tally[{a.subgroups[i].order(), a.homs[i].size()}];
    for (std::size_t i = 0; i < b.subgroups.size(); ++i)
      --tally[{b.subgroups[i].order(), b.homs[i].size()}];
    for (auto &[k, v] : tally)
      if (v) return std::nullopt;
  }

  // Pre-index b's hom sets for transport lookups.
  std::vector<std::unordered_map<std::uint64_t, char>> b_keys(b.subgroups.size());
  for (std::size_t i = 0; i < b.subgroups.size(); ++i)
    for (const auto &[dst, img] : b.homs[i]) {
      std::uint64_t h = 0xcbf29ce484222325ull;
      for (Elt y : img) {
        h ^= y;
        h *= 0x100000001b3ull;
      }
      b_keys[i][h] = 1;
    }

  std::optional<std::vector<Elt>> result;
  for_each_isomorphism(*a.support, *b.support, [&](const std::vector<Elt> &phi) {
    // Transport every morphism of a and look it up in b.
    for (std::size_t i = 0; i < a.subgroups.size(); ++i) {
      Bitset image(b.support->size());
      a.subgroups[i].members.for_each([&](std::size_t x) { image.set(phi[x]); });
      std::uint32_t bi;
      try {
        bi = b.id_of(image);
      } catch (const GroupTableError &) {
        return false;
      }
      if (a.homs[i].size() != b.homs[bi].size()) return false;
      auto a_members = member_listing(a.subgroups[i]);
      auto b_members = member_listing(b.subgroups[bi]);
      // position of phi(x) in b_members for each source member x
      std::vector<std::size_t> perm(a_members.size());
      for (std::size_t k = 0; k < a_members.size(); ++k) {
        Elt y = phi[a_members[k]];
        auto it = std::lower_bound(b_members.begin(), b_members.end(), y);
        perm[k] = static_cast<std::size_t>(it - b_members.begin());
      }
      for (const auto &[dst, img] : a.homs[i]) {
        std::vector<Elt> timg(img.size());
        for (std::size_t k = 0; k < img.size(); ++k) timg[perm[k]] = phi[img[k]];
        std::uint64_t h = 0xcbf29ce484222325ull;
        for (Elt y : timg) {
          h ^= y;
          h *= 0x100000001b3ull;
        }
        if (!b_keys[bi].count(h)) return false;
      }
    }
    result = phi;
    return true;
  });
  return result;
}

// ---- products --------------------------------------------------------------------

std::vector<FactorizationResult> direct_factorization(const FusionSystem &f) {
  std::vector<FactorizationResult> out;
  std::vector<SubId> closed;
  for (SubId id = 0; id < f.num_subgroups(); ++id)
    if (f.is_strongly_closed(id)) closed.push_back(id);

  std::size_t total = f.sylow_order();
  for (std::size_t i = 0; i < closed.size(); ++i)
    for (std::size_t j = i; j < closed.size(); ++j) {
      SubId a = closed[i], b = closed[j];
      const Subgroup &sa = f.subgroup(a);
      const Subgroup &sb = f.subgroup(b);
      if (sa.order() * sb.order() != total) continue;
      Bitset meet = sa.members & sb.members;
      if (meet.count() != 1) continue;
      if (sa.order() == 1 || sb.order() == 1) continue;
      // Componentwise criterion: the component of the image depends only
      // on the component of the argument, and the component maps are
      // morphisms again.
      bool componentwise = true;
      for (std::uint32_t c = 0; c < f.num_fclasses() && componentwise; ++c) {
        SubId rep = f.fclass_rep(c);
        auto mem = f.members_of(rep);
        for (const FMap &m : f.homs_mod_inner(rep)) {
          // Split each x = x1 x2 with x1 in Q1 and x2 in Q2.
          std::vector<std::pair<Elt, Elt>> split(mem.size());
          bool ok = true;
          for (std::size_t k = 0; k < mem.size() && ok; ++k) {
            bool found = false;
            sa.members.for_each([&](std::size_t x1) {
              if (found) return;
              Elt x2 = f.sylow().mul(f.sylow().inv(static_cast<Elt>(x1)), mem[k]);
              if (sb.members.test(x2)) {
                split[k] = {static_cast<Elt>(x1), x2};
                found = true;
              }
            });
            if (!found) ok = false;
          }
          if (!ok) {
            componentwise = false;
            break;
          }
          // Check the image components depend only on the matching
          // argument components.
          std::map<Elt, Elt> c1, c2;
          for (std::size_t k = 0; k < mem.size(); ++k) {
            Elt y = m.img[k];
            Elt y1 = 0, y2 = 0;
            bool found = false;
            sa.members.for_each([&](std::size_t x1) {
              if (found) return;
              Elt cand = f.sylow().mul(f.sylow().inv(static_cast<Elt>(x1)), y);
              if (sb.members.test(cand)) {
                y1 = static_cast<Elt>(x1);
                y2 = cand;
                found = true;
              }
            });
            if (!found) {
              componentwise = false;
              break;
            }
            auto [it1, fresh1] = c1.try_emplace(split[k].first, y1);
            auto [it2, fresh2] = c2.try_emplace(split[k].second, y2);
            if ((!fresh1 && it1->second != y1) || (!fresh2 && it2->second != y2)) {
              componentwise = false;
              break;
            }
          }
          if (!componentwise) break;
        }
      }
      if (componentwise) {
        FactorizationResult r;
        r.decomposable = true;
        r.q1 = a;
        r.q2 = b;
        out.push_back(r);
      }
    }
  return out;
}

// ---- the chain criterion ----------------------------------------------------------

ChainVerdict chain_criterion(const FusionSystem &f, SubId e,
                             const std::vector<SubId> &chain, SubId q) {
  ChainVerdict v;
  if (!f.is_centric(e) || !f.is_radical(e)) {
    v.detail = "E is not centric radical";
    return v;
  }
  if (chain.empty() || f.subgroup(chain.front()).order() != 1 ||
      chain.back() != e) {
    v.detail = "chain must run from the trivial group to E";
    return v;
  }
  for (std::size_t i = 0; i + 1 < chain.size(); ++i)
    if (!f.subgroup(chain[i]).members.is_subset_of(f.subgroup(chain[i + 1]).members)) {
      v.detail = "chain is not ascending";
      return v;
    }
  for (SubId link : chain)
    for (const FMap &m : f.aut_group(e).maps)
      if (!(f.apply_to_set(m, f.subgroup(link).members) ==
            f.subgroup(link).members)) {
        v.detail = "chain member not invariant under Aut_F(E)";
        return v;
      }
  v.preconditionsMet = true;

  v.hypothesisHolds = true;
  for (std::size_t i = 1; i < chain.size(); ++i) {
    Subgroup comm = commutator_subgroup(f.subgroup(q), f.subgroup(chain[i]));
    if (!comm.members.is_subset_of(f.subgroup(chain[i - 1]).members)) {
      v.hypothesisHolds = false;
      break;
    }
  }
  v.contained = f.subgroup(q).members.is_subset_of(f.subgroup(e).members);
  return v;
}

} // namespace fusionkit
