#pragma once

#include <unordered_map>
#include <vector>

#include "dlex/concept.hpp"
#include "dlex/limits.hpp"
#include "dlex/util.hpp"

namespace dlex {

// A literal over the positive closure index space: a positive concept or
// its single negation.
struct ClosureLit {
  int idx = -1;
  bool positive = true;
};

// Indexed closure-under-single-negation of sub(T) (plus optional extra
// concepts), with the Boolean structure of each entry resolved to indices.
// Types are bit sets over the positive entries; Boolean entries (⊤, ⊥, ⊓,
// ⊔) are determined, names and modal entries are free.
//
// Only ⊤, ⊥, names, ¬, ⊓, ⊔, ∃, ∀ may occur: the type machinery serves the
// ALC/ALCI procedures.  Number restrictions and nominals are routed through
// the bounded model finder instead.
class ClosureTable {
 public:
  ClosureTable(const TBox& t, const std::vector<Concept>& extra, const Limits& lim);

  const std::vector<Concept>& positives() const { return positives_; }
  size_t size() const { return positives_.size(); }

  int index_of(const Concept& c) const;
  // The concept (or its stripped negation) as a literal; throws if absent.
  ClosureLit lit_of(const Concept& c) const;
  bool member(const DynBitset& type, const ClosureLit& l) const {
    return type.test(static_cast<size_t>(l.idx)) == l.positive;
  }
  bool member(const DynBitset& type, const Concept& c) const { return member(type, lit_of(c)); }

  int rd_of(int idx) const { return depth_[idx]; }
  const DynBitset& name_mask() const { return name_mask_; }
  // Mask of positions with role depth <= m.
  DynBitset depth_mask(int m) const;

  struct Modal {
    int idx;
    Role role;
    ClosureLit child;
    bool is_forall;
    int depth;
  };
  const std::vector<Modal>& modal_nodes() const { return modal_; }

  struct Obligation {
    Role role;
    ClosureLit child;  // the witness must contain this literal
  };
  // Existential obligations of a type: positive ∃ entries and negative ∀
  // entries.  With bounded_depth >= 0 only entries of that role depth or
  // less are considered (used by the role-depth-stratified eliminator).
  std::vector<Obligation> obligations(const DynBitset& type, int bounded_depth = -1) const;

  // t1 ⇝_r t2: no value restriction violated in either direction.  The
  // bounded variant restricts each side's constraints to entries within
  // its role-depth level.
  bool coherent(const DynBitset& t1, const Role& r, const DynBitset& t2) const;
  bool coherent_bounded(const DynBitset& t1, int m1, const Role& r, const DynBitset& t2,
                        int m2) const;

  // All locally consistent types (the set tp).  Throws ResourceLimitError
  // when more than 2^max_type_bits candidates would arise.
  std::vector<DynBitset> all_types() const;
  size_t free_bits() const { return free_.size(); }

  // Signed index pairs for the CIs of a TBox (lhs, rhs per CI).
  std::vector<std::pair<ClosureLit, ClosureLit>> ci_lits(const TBox& t) const;
  bool respects(const DynBitset& type,
                const std::vector<std::pair<ClosureLit, ClosureLit>>& cis) const;

  // Role names mentioned by modal entries, sorted.
  const std::vector<std::string>& role_names() const { return role_names_; }

 private:
  enum class EKind : uint8_t { True, False, Atom, AndE, OrE, Modal };
  struct Entry {
    EKind kind;
    int a = -1, b = -1;       // child indices for ⊓/⊔ (signed via lits)
    ClosureLit la, lb;        // literal forms of the children
  };

  std::vector<Concept> positives_;
  std::unordered_map<Concept, int, ConceptHash> index_;
  std::vector<Entry> entries_;
  std::vector<int> depth_;
  std::vector<int> free_;  // indices of free (atom/modal) entries
  std::vector<Modal> modal_;
  DynBitset name_mask_;
  std::vector<std::string> role_names_;
  int max_type_bits_;
};

// Removes types with an unwitnessed existential obligation until stable;
// witnesses must be coherent in the obligation's direction (inverse
// obligations look for predecessor types).
std::vector<DynBitset> eliminate_types(const ClosureTable& ct, std::vector<DynBitset> types);

}  // namespace dlex
