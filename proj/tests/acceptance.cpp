// Acceptance suite: one check per criterion, each printed as a pass/fail
// line.  Exit status is nonzero when any criterion fails.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <sstream>

#include "fusionkit/catalog.hpp"
#include "fusionkit/classify.hpp"
#include "fusionkit/coset_enum.hpp"
#include "fusionkit/extensions.hpp"
#include "fusionkit/fusion.hpp"
#include "fusionkit/group_iso.hpp"
#include "fusionkit/pgroup.hpp"
#include "fusionkit/report.hpp"
#include "fusionkit/subsystems.hpp"

using namespace fusionkit;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int criterion, const std::string &name, bool ok,
            const std::string &detail, double seconds) {
  std::printf("criterion %d [%s]: %s (%s; %.1fs)\n", criterion,
              name.c_str(), ok ? "PASS" : "FAIL", detail.c_str(), seconds);
  std::fflush(stdout);
  if (!ok) ++failures;
}

template <typename F>
void run(int criterion, const std::string &name, F &&body) {
  auto start = Clock::now();
  bool ok = false;
  std::string detail;
  try {
    auto r = body();
    ok = r.first;
    detail = r.second;
  } catch (const std::exception &e) {
    detail = std::string("exception: ") + e.what();
  }
  double secs = std::chrono::duration<double>(Clock::now() - start).count();
  report(criterion, name, ok, detail, secs);
}

std::string fixtures_dir() {
  const char *env = std::getenv("FUSIONKIT_FIXTURES");
  return env ? env : "data";
}

struct Corpus {
  std::map<std::string, std::shared_ptr<FusionSystem>> systems;
  std::map<std::string, std::shared_ptr<EnumeratedGroup>> groups;

  const FusionSystem &fusion(const std::string &spec) {
    if (!systems.count(spec)) {
      auto g = std::make_shared<EnumeratedGroup>(build_group(GroupSpec::parse(spec)));
      groups[spec] = g;
      systems[spec] = std::make_shared<FusionSystem>(g, 2);
    }
    return *systems[spec];
  }
};

Corpus corpus;
std::vector<CatalogEntry> catalog;

} // namespace

int main() {

  // ---- criterion 1: the order <= 64 lemma sweeps --------------------------------
  run(1, "lemma-sweep", []() {
    catalog = load_catalog(fixtures_dir() + "/smallgroups.dat");
    GroupTable d8ref = GroupTable::from_perms(dihedral_group(8).generators());
    std::size_t e2 = 0, dc = 0, nw = 0, bad = 0;
    for (const auto &entry : catalog) {
      const GroupTable &s = *entry.table;
      auto maxes = max_elem_abelian(s, 2);
      for (std::size_t i = 0; i < maxes.size(); ++i)
        for (std::size_t j = i; j < maxes.size(); ++j) {
          if (product_order(maxes[i], maxes[j]) != s.size()) continue;
          CheckReport r = elementary2_check(s, maxes[i], maxes[j]);
          if (r.verdict == Verdict::preconditionViolated) continue;
          ++e2;
          if (r.hypothesisHolds && !r.conclusionHolds) ++bad;
        }
      Subgroup whole = full_subgroup(s);
      auto series = lower_central_series(whole);
      bool class_two = series.back().order() == 1 && series.size() == 3;
      if (class_two) {
        for (const auto &p : normal_subgroups(s)) {
          if (p.order() != 8) continue;
          auto tab = subgroup_as_table(p).first;
          if (!isomorphic(tab, d8ref)) continue;
          CheckReport r = dihcent_check(s, p);
          if (r.verdict == Verdict::preconditionViolated) continue;
          ++dc;
          if (r.hypothesisHolds && !r.conclusionHolds) ++bad;
        }
        // Factor-permutation instances: pairs of commuting isomorphic
        // class-two subgroups spanning a normal direct product.
        auto subs = all_subgroups(s);
        for (std::size_t i = 0; i < subs.size(); ++i)
          for (std::size_t j = i + 1; j < subs.size(); ++j) {
            if (subs[i].order() < 8 || subs[i].order() != subs[j].order()) continue;
            if (subs[i].order() * subs[j].order() > s.size()) continue;
            for (std::size_t x = 1; x < s.size(); ++x) {
              CheckReport r = nowreath_check(s, {subs[i], subs[j]}, static_cast<Elt>(x));
              if (r.verdict == Verdict::preconditionViolated) continue;
              ++nw;
              if (r.hypothesisHolds && !r.conclusionHolds) ++bad;
            }
          }
      }
    }
    std::ostringstream d;
    d << e2 << " two-maximal instances, " << dc << " dihedral instances, " << nw
      << " factor instances, " << bad << " counterexamples";
    return std::make_pair(bad == 0 && e2 > 0 && dc > 0, d.str());
  });

  // ---- criterion 2: the commutator sweep at b = 2 --------------------------------
  run(2, "psp4-commutators", []() {
    PermGroup syl = build_sylow_2_standalone(GroupSpec::parse("builtin:psp4:4"));
    GroupTable s = GroupTable::from_perms(syl.generators(), 1 << 12);
    auto maxes = max_elem_abelian(s, 2);
    if (maxes.size() != 2)
      return std::make_pair(false, std::string("expected two maximal members"));
    std::ostringstream d;
    bool ok = true;
    for (const auto &a : maxes) {
      CommutatorSweep sweep = psp4_commutator_check(s, a, 2);
      ok = ok && sweep.verdict == Verdict::holds && sweep.derivedOrder == 16;
      d << "checked " << sweep.checked << ", |S'| = " << sweep.derivedOrder << "; ";
    }
    return std::make_pair(ok, d.str());
  });

  // ---- criterion 3: essential structure and the generation theorem ---------------
  run(3, "essential-structure", []() {
    std::ostringstream d;
    bool ok = true;
    {
      const FusionSystem &f = corpus.fusion("builtin:psl3:2");
      const auto &ess = f.essential_subgroups();
      ok = ok && ess.size() == 2;
      for (const auto &e : ess)
        ok = ok && f.subgroup(e.subgroup).order() == 4 &&
             is_elementary_abelian(f.subgroup(e.subgroup), 2);
      ok = ok && f.verify_alperin_goldschmidt();
      d << "psl3:2 classes=" << ess.size() << "; ";
    }
    for (const char *spec : {"builtin:psl3:4", "builtin:psp4:4"}) {
      const FusionSystem &f = corpus.fusion(spec);
      const auto &ess = f.essential_subgroups();
      auto maxes = max_elem_abelian(f.sylow(), 2);
      std::vector<Bitset> essential_sets;
      for (const auto &e : ess)
        for (SubId id : f.fclass_members(f.fclass_of(e.subgroup)))
          essential_sets.push_back(f.subgroup(id).members);
      bool equal = essential_sets.size() == maxes.size() && maxes.size() == 2;
      for (const auto &m : maxes) {
        bool found = false;
        for (const auto &e : essential_sets)
          if (e == m.members) found = true;
        equal = equal && found;
      }
      ok = ok && equal && f.verify_alperin_goldschmidt();
      d << spec << " essentials=A(S):" << (equal ? "yes" : "NO") << "; ";
    }
    return std::make_pair(ok, d.str());
  });

  // ---- criterion 4: categorical isomorphisms -------------------------------------
  run(4, "fusion-isomorphisms", []() {
    bool ok = true;
    std::ostringstream d;
    {
      FusionFace a = face_of(corpus.fusion("builtin:alt:6"));
      FusionFace b = face_of(corpus.fusion("builtin:psl3:2"));
      bool iso = fusion_isomorphism(a, b).has_value();
      ok = ok && iso;
      d << "F(Alt6)~F(PSL3(2)): " << (iso ? "yes" : "NO") << "; ";
    }
    {
      const FusionSystem &sym6 = corpus.fusion("builtin:sym:6");
      MinimalSubsystems min = minimal_subsystems(sym6);
      bool support8 = sym6.subgroup(min.hyperfocal).order() == 8;
      FusionFace a = min.oP->face();
      FusionFace b = face_of(corpus.fusion("builtin:alt:6"));
      bool iso = fusion_isomorphism(a, b).has_value();
      ok = ok && support8 && iso;
      d << "O2(F(Sym6))~F(Alt6) on Dih(8): " << (support8 && iso ? "yes" : "NO");
    }
    return std::make_pair(ok, d.str());
  });

  // ---- criterion 5: the order-16 search and the cover fixture ---------------------
  run(5, "l34-searches", []() {
    bool ok = true;
    std::ostringstream d;
    GroupTable d8 = GroupTable::from_perms(dihedral_group(8).generators());
    auto predicate = [&](const GroupTable &g) {
      Subgroup whole = full_subgroup(g);
      auto series = lower_central_series(whole);
      if (series.back().order() != 1 || series.size() != 3) return false;
      Subgroup z = center(g);
      Subgroup der = derived_subgroup(whole);
      if (!(z.members == der.members) || z.order() != 4) return false;
      bool admits = false;
      z.members.for_each([&](std::size_t x) {
        if (admits || !x || g.element_order(static_cast<Elt>(x)) != 2) return;
        Subgroup c = subgroup_closure(g, {static_cast<Elt>(x)});
        QuotientResult q = quotient_group(g, c);
        if (isomorphic(*q.group, d8)) admits = true;
      });
      return admits;
    };
    std::size_t catalog_hits = 0;
    for (const auto &e : catalog)
      if (e.order == 16 && predicate(*e.table)) ++catalog_hits;
    auto cocycle_hits = enumerate_extensions(d8, 2, 1, predicate).size();
    ok = ok && catalog_hits == 0 && cocycle_hits == 0;
    d << "order-16 profile hits: catalog " << catalog_hits << ", cocycles "
      << cocycle_hits << " (agree: " << (catalog_hits == cocycle_hits ? "yes" : "NO")
      << "); ";

    // The cover fixture: class-two Sylow, Omega_1(S) = S, quotient system.
    PermGroup cover = load_perm_group(fixtures_dir() + "/psl34_cover22.grp");
    auto g = std::make_shared<EnumeratedGroup>(cover);
    FusionSystem f(g, 2);
    Subgroup whole = full_subgroup(f.sylow());
    auto series = lower_central_series(whole);
    bool class2 = series.size() == 3 && series.back().order() == 1;
    bool omega = omega1(whole, 2).order() == f.sylow_order();
    EnumSubgroup z = g->centralizer_of_elements(g->generator_ids());
    Bitset zloc(f.sylow_order());
    z.members.for_each([&](std::size_t x) { zloc.set(f.to_local(static_cast<GIdx>(x))); });
    QuotientFusion quo(f, f.id_of(zloc));
    FusionFace bar = quo.face();
    FusionFace ref = face_of(corpus.fusion("builtin:psl3:4"));
    bool iso = fusion_isomorphism(bar, ref).has_value();
    ok = ok && class2 && omega && iso;
    d << "cover: class2 " << (class2 ? "yes" : "NO") << ", Omega1=S "
      << (omega ? "yes" : "NO") << ", F/Z ~ F(PSL3(4)) " << (iso ? "yes" : "NO");
    return std::make_pair(ok, d.str());
  });

  // ---- criterion 6: the taxonomy --------------------------------------------------
  run(6, "taxonomy", []() {
    struct Row {
      const char *spec;
      GGCase expected;
    };
    const Row rows[] = {
        {"builtin:psl2:8", GGCase::abelian_i}, {"builtin:psl3:2", GGCase::dih8_ii},
        {"builtin:alt:6", GGCase::dih8_ii},    {"builtin:sz:8", GGCase::rank2_iii},
        {"builtin:psu3:4", GGCase::rank2_iii}, {"builtin:psl3:4", GGCase::rank2_iii},
        {"builtin:psp4:4", GGCase::rank2_iii}, {"builtin:sym:8", GGCase::classtoobig},
    };
    bool ok = true;
    std::ostringstream d;
    for (const Row &r : rows) {
      auto g = std::make_shared<EnumeratedGroup>(build_group(GroupSpec::parse(r.spec)));
      GGResult res = gg_classify(g);
      bool match = res.tag == r.expected;
      if (res.tag == GGCase::rank2_iii &&
          (res.shape.shape == Shape::sylowPSL3 || res.shape.shape == Shape::sylowPSp4))
        match = match && res.crossChecked;
      ok = ok && match;
      d << r.spec << "=" << gg_case_name(res.tag) << (match ? " " : "(MISMATCH) ");
    }
    return std::make_pair(ok, d.str());
  });

  // ---- criterion 7: engine property suites ----------------------------------------
  run(7, "property-suites", []() {
    const char *corpus_specs[] = {"builtin:psl3:2", "builtin:alt:6",  "builtin:sym:6",
                                  "builtin:sym:4",  "builtin:psl3:4", "builtin:psp4:2",
                                  "builtin:sz:8",   "builtin:psu3:4", "builtin:psl2:8",
                                  "builtin:psp4:4"};
    bool ok = true;
    std::ostringstream d;
    for (const char *spec : corpus_specs) {
      const FusionSystem &f = corpus.fusion(spec);
      auto audit = f.saturation_audit();
      bool focal_ok;
      {
        Subgroup focal = f.focal_subgroup();
        EnumSubgroup derived = f.ambient().derived_subgroup();
        Bitset expected(f.sylow_order());
        for (std::size_t x = 0; x < f.sylow_order(); ++x)
          if (derived.members.test(f.to_ambient(static_cast<Elt>(x)))) expected.set(x);
        focal_ok = focal.members == expected;
      }
      bool ecr = true;
      for (const auto &e : f.essential_subgroups())
        ecr = ecr && f.is_centric(e.subgroup) && f.is_radical(e.subgroup);
      ok = ok && audit.passed && focal_ok && ecr;
      if (!audit.passed || !focal_ok || !ecr) d << spec << " FAILED; ";
    }
    d << "audits+focal+essential on 10 systems; ";
    // Strongly-closed-abelian <-> normal on the Dih(8)- and order-64
    // supported systems, exhaustively over abelian subgroups.
    std::size_t checked = 0;
    for (const char *spec :
         {"builtin:psl3:2", "builtin:alt:6", "builtin:psl3:4", "builtin:sz:8",
          "builtin:psu3:4"}) {
      const FusionSystem &f = corpus.fusion(spec);
      for (SubId id = 0; id < f.num_subgroups(); ++id) {
        if (!is_abelian(f.subgroup(id))) continue;
        ++checked;
        if (f.is_strongly_closed(id) != is_normal_in_fusion(f, id)) {
          ok = false;
          d << spec << " normality mismatch; ";
        }
      }
    }
    d << checked << " abelian subgroups for the normality criterion";
    return std::make_pair(ok, d.str());
  });

  // ---- criterion 8: parabolic characteristic --------------------------------------
  run(8, "parabolic-characteristic", []() {
    bool ok = true;
    std::ostringstream d;
    for (const char *spec : {"builtin:psp4:4", "builtin:psl3:4"}) {
      const FusionSystem &f = corpus.fusion(spec);
      std::uint64_t core = f.subgroup(f.largest_normal_subgroup()).order();
      ParabolicReport pr = is_parabolic_char_p(f);
      ok = ok && core == 1 && pr.parabolic;
      d << spec << ": O2=" << core << " parabolic=" << (pr.parabolic ? "yes" : "NO")
        << " (" << pr.checked << " normal subgroups, " << pr.fastPath
        << " by containment); ";
    }
    return std::make_pair(ok, d.str());
  });

  // ---- criterion 9: cocycle consistency --------------------------------------------
  run(9, "cocycle-consistency", []() {
    bool ok = true;
    std::size_t checked = 0;
    std::ostringstream d;
    for (const auto &p_entry : catalog) {
      if (p_entry.order > 16) continue;
      const GroupTable &p = *p_entry.table;
      auto found = enumerate_extensions(p, 2, 1, [](const GroupTable &) { return true; });
      std::size_t catalog_count = 0;
      for (const auto &h_entry : catalog) {
        if (h_entry.order != 2 * p_entry.order) continue;
        const GroupTable &h = *h_entry.table;
        Subgroup z = center(h);
        bool admits = false;
        z.members.for_each([&](std::size_t x) {
          if (admits || !x || h.element_order(static_cast<Elt>(x)) != 2) return;
          Subgroup c = subgroup_closure(h, {static_cast<Elt>(x)});
          QuotientResult q = quotient_group(h, c);
          if (isomorphic(*q.group, p)) admits = true;
        });
        if (admits) ++catalog_count;
      }
      ++checked;
      if (found.size() != catalog_count) {
        ok = false;
        d << "mismatch at " << p_entry.order << "#" << p_entry.index << ": "
          << found.size() << " vs " << catalog_count << "; ";
      }
    }
    d << checked << " base groups";
    return std::make_pair(ok, d.str());
  });

  std::printf("acceptance: %s (%d failure%s)\n", failures ? "FAIL" : "PASS", failures,
              failures == 1 ? "" : "s");
  return failures ? 1 : 0;
}
