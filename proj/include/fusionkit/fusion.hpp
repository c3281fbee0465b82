#ifndef FUSIONKIT_FUSION_HPP_
#define FUSIONKIT_FUSION_HPP_

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "fusionkit/enumerated_group.hpp"
#include "fusionkit/group_iso.hpp"
#include "fusionkit/group_table.hpp"

namespace fusionkit {

using SubId = std::uint32_t;

// A conjugation-induced morphism between subgroups of the Sylow group,
// stored by element-wise images over the source's sorted member list.
// `witness` is an ambient group element inducing the map.
struct FMap {
  SubId src = 0;
  SubId dst = 0;
  std::vector<Elt> img; // parallel to the source's sorted member list
  GIdx witness = 0;
};

// Strongly p-embedded certificate inside an outer automorphism group.
struct SpeCertificate {
  bool present = false;
  Bitset subgroup;          // H inside the Out table
  std::size_t sylowCount = 0;
  std::size_t componentCount = 0;
};

struct NaturalModuleData {
  unsigned q = 0;
  std::vector<Elt> groupIso;  // L/C_L(W) -> reference SL2(q) element map
  std::vector<Elt> moduleIso; // W/C_W(O^p(L)) -> F_q^2 vector map
};

struct EssentialRecord {
  SubId subgroup = 0;
  std::uint64_t autOrder = 0;
  std::uint64_t outOrder = 0;
  SpeCertificate witness;
  std::optional<NaturalModuleData> moduleData;
};

// The fusion category F_S(G) for S a Sylow p-subgroup of an enumerated
// ambient group G.  All Hom-sets are realized by transporter elements of
// G, organized through the S-S double coset decomposition: every
// morphism is an inner map of S composed with one of the double-coset
// maps and another inner map.
class FusionSystem {
public:
  FusionSystem(std::shared_ptr<EnumeratedGroup> ambient, unsigned p,
               const Bounds &bounds = Bounds{},
               const std::vector<GIdx> *sylow_gens = nullptr);

  const EnumeratedGroup &ambient() const { return *ambient_; }
  std::shared_ptr<EnumeratedGroup> ambient_ptr() const { return ambient_; }
  unsigned prime() const { return p_; }
  const Bounds &bounds() const { return bounds_; }

  // ---- the S-world ----
  const GroupTable &sylow() const { return *stable_; }
  std::size_t sylow_order() const { return stable_->size(); }
  GIdx to_ambient(Elt x) const { return local_to_ambient_[x]; }
  Elt to_local(GIdx g) const; // throws when g lies outside S
  const EnumSubgroup &sylow_in_ambient() const { return sylow_ambient_; }

  // ---- subgroup index ----
  std::size_t num_subgroups() const { return subgroups_.size(); }
  const Subgroup &subgroup(SubId id) const { return subgroups_[id]; }
  const std::vector<Elt> &members_of(SubId id) const { return member_lists_[id]; }
  SubId id_of(const Bitset &members) const;
  SubId whole_id() const { return whole_id_; }
  SubId trivial_id() const { return trivial_id_; }

  // S-conjugacy and F-conjugacy classes of subgroups.
  std::uint32_t sclass_of(SubId id) const { return sclass_[id]; }
  std::uint32_t fclass_of(SubId id) const { return fclass_[id]; }
  const std::vector<SubId> &fclass_members(std::uint32_t fcls) const {
    return fclass_members_[fcls];
  }
  std::size_t num_fclasses() const { return fclass_members_.size(); }
  // Fully normalized representative with minimal canonical bit-set.
  SubId fclass_rep(std::uint32_t fcls) const { return fclass_rep_[fcls]; }

  // ---- element-level fusion ----
  std::uint32_t element_class(Elt x) const { return eclass_[x]; }
  const std::vector<Elt> &element_class_members(std::uint32_t c) const {
    return eclass_members_[c];
  }

  // ---- morphisms ----
  const std::vector<FMap> &double_coset_maps() const { return dcmaps_; }
  // Morphisms P -> S up to post-composition with Inn(S) (canonical reps).
  const std::vector<FMap> &homs_mod_inner(SubId p) const;
  // Full deduplicated Hom-sets and automorphism sets.
  std::vector<FMap> hom_set(SubId p, SubId q) const;
  std::vector<FMap> aut_set(SubId p) const;

  struct AutGroup {
    std::shared_ptr<GroupTable> table; // abstract group on the maps
    std::vector<FMap> maps;            // maps[i] realizes table element i
    Bitset inner;                      // Inn(P) inside the table
    Bitset sylow_part;                 // Aut_S(P) inside the table
  };
  const AutGroup &aut_group(SubId p) const;

  // ---- conjugation helpers inside S ----
  Elt conj_elt(Elt x, Elt s) const { return conj_table_[s][x]; }
  Bitset conj_bitset(const Bitset &b, Elt s) const;
  std::vector<Elt> transporter_in_s(const Bitset &from, const Bitset &to) const;

  // ---- categorical predicates ----
  bool is_centric(SubId p) const;
  bool is_radical(SubId p) const;
  bool is_strongly_closed(SubId p) const;
  bool is_fully_normalized(SubId p) const;

  const std::vector<EssentialRecord> &essential_subgroups() const;

  // Largest subgroup normal in the whole fusion system (the p-core).
  SubId largest_normal_subgroup() const;
  bool is_constrained() const;

  Subgroup focal_subgroup() const;
  Subgroup hyperfocal_subgroup() const;

  // FMap utilities.
  Elt apply(const FMap &m, Elt x) const;
  Bitset apply_to_set(const FMap &m, const Bitset &b) const;
  FMap compose_maps(const FMap &first, const FMap &then) const;
  FMap restrict_map(const FMap &m, SubId smaller) const;
  FMap inner_map(SubId p, Elt s) const; // c_s restricted to P
  FMap identity_map(SubId p) const;
  std::uint64_t map_key(const FMap &m) const;
  FMap canonical_mod_inner(const FMap &m) const;
  Morphism to_morphism(const FMap &m) const; // public element-wise form

  // Verification helpers (reported, not assumed).
  struct AuditReport {
    bool passed = true;
    std::string firstFailure;
    std::size_t classesChecked = 0;
    std::size_t morphismsChecked = 0;
  };
  AuditReport saturation_audit() const;
  bool verify_alperin_goldschmidt() const;

  // Spec-facing wrapper: checks |Aut_F(P)| * |C_G(P)| = |N_G(P)| against
  // ambient scans.
  std::uint64_t aut_order_checked(SubId p) const;

private:
  void build_sylow_world(const std::vector<GIdx> *sylow_gens);
  void build_lattice();
  void build_double_cosets();
  void build_classes();

  std::shared_ptr<EnumeratedGroup> ambient_;
  unsigned p_;
  Bounds bounds_;

  EnumSubgroup sylow_ambient_;
  std::shared_ptr<GroupTable> stable_;
  std::vector<GIdx> local_to_ambient_;
  std::unordered_map<GIdx, Elt> ambient_to_local_;
  std::vector<std::vector<Elt>> conj_table_; // conj_table_[s][x] = x^s

  std::vector<Subgroup> subgroups_;
  std::vector<std::vector<Elt>> member_lists_;
  std::unordered_map<std::uint64_t, std::vector<SubId>> sub_index_;
  SubId whole_id_ = 0, trivial_id_ = 0;

  std::vector<std::uint32_t> sclass_;
  std::vector<std::vector<SubId>> sclass_members_;
  std::vector<std::uint32_t> fclass_;
  std::vector<std::vector<SubId>> fclass_members_;
  std::vector<SubId> fclass_rep_;

  std::vector<std::uint32_t> eclass_;
  std::vector<std::vector<Elt>> eclass_members_;

  std::vector<FMap> dcmaps_;           // double-coset partial maps
  std::vector<Bitset> dcdomain_;       // U_g = S n S^(g^-1) as bitsets

  mutable std::map<SubId, std::vector<FMap>> homs_cache_;
  mutable std::map<SubId, AutGroup> aut_cache_;
  mutable std::optional<std::vector<EssentialRecord>> essentials_;
  mutable std::optional<SubId> core_;
};

// Build F_S(G) with S = the canonical Sylow p-subgroup of G.
FusionSystem build_fusion(std::shared_ptr<EnumeratedGroup> g, unsigned p,
                          const Bounds &bounds = Bounds{});

// Transporter decomposition: representatives g with {h : P^h <= Q} the
// disjoint union of C_G(P) g over the induced-morphism classes.
struct TransporterDecomposition {
  std::vector<GIdx> reps;          // one per induced morphism
  std::uint64_t centralizer_order; // |C_G(P)|
  std::uint64_t total;             // |{h : P^h <= Q}|
};
TransporterDecomposition transporter(const FusionSystem &f, SubId p, SubId q);

// Strongly p-embedded detection on an abstract finite group.
SpeCertificate strongly_p_embedded(const GroupTable &out, unsigned p);

} // namespace fusionkit

#endif
