#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "dlex/error.hpp"

namespace dlex {

// A role name or its inverse.  Double inversion is normalized away by
// construction: inverse() flips the flag.
struct Role {
  std::string name;
  bool inverted = false;

  Role() = default;
  explicit Role(std::string n, bool inv = false) : name(std::move(n)), inverted(inv) {}

  Role inverse() const { return Role(name, !inverted); }

  friend bool operator==(const Role&, const Role&) = default;
  friend auto operator<=>(const Role&, const Role&) = default;
};

enum class ConceptKind : uint8_t {
  Top,
  Bot,
  Name,
  Nominal,
  Not,
  And,
  Or,
  Exists,
  Forall,
  AtLeast,
  AtMost,
};

// Immutable concept AST with value semantics; nodes are shared.
class Concept {
 public:
  Concept() : Concept(top()) {}

  static Concept top();
  static Concept bot();
  static Concept name(std::string n);
  static Concept nominal(std::string n);
  static Concept negation(Concept c);
  static Concept conj(Concept l, Concept r);
  static Concept disj(Concept l, Concept r);
  static Concept exists(Role r, Concept c);
  static Concept forall(Role r, Concept c);
  static Concept at_least(unsigned n, Role r, Concept c);
  static Concept at_most(unsigned n, Role r, Concept c);

  ConceptKind kind() const { return node_->kind; }
  const std::string& label() const { return node_->label; }
  const Role& role() const { return node_->role; }
  unsigned bound() const { return node_->bound; }
  const Concept& child() const { return node_->children[0]; }
  const Concept& lhs() const { return node_->children[0]; }
  const Concept& rhs() const { return node_->children[1]; }
  size_t num_children() const { return node_->children.size(); }
  const Concept& child_at(size_t i) const { return node_->children[i]; }

  // Number of nestings of existential restrictions (with ∀ and number
  // restrictions counting as such, being abbreviations).
  int role_depth() const { return node_->depth; }

  size_t hash() const { return node_->hash; }

  bool operator==(const Concept& o) const;
  bool operator!=(const Concept& o) const { return !(*this == o); }
  // Deterministic structural total order.
  bool operator<(const Concept& o) const { return compare(o) < 0; }
  int compare(const Concept& o) const;

  template <typename F>
  void for_each_subconcept(F&& f) const {
    f(*this);
    for (const Concept& c : node_->children) c.for_each_subconcept(f);
  }

 private:
  struct Node {
    ConceptKind kind;
    unsigned bound = 0;
    Role role;
    std::string label;
    std::vector<Concept> children;
    size_t hash = 0;
    int depth = 0;
  };

  explicit Concept(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static Concept make(Node n);

  std::shared_ptr<const Node> node_;
};

struct ConceptHash {
  size_t operator()(const Concept& c) const { return c.hash(); }
};

struct ConceptInclusion {
  Concept lhs;
  Concept rhs;

  bool operator==(const ConceptInclusion& o) const { return lhs == o.lhs && rhs == o.rhs; }
  bool operator<(const ConceptInclusion& o) const {
    int c = lhs.compare(o.lhs);
    return c != 0 ? c < 0 : rhs.compare(o.rhs) < 0;
  }
};

// Finite, duplicate-free, ordered set of concept inclusions.
class TBox {
 public:
  TBox() = default;
  explicit TBox(std::vector<ConceptInclusion> cis) {
    for (auto& ci : cis) add(std::move(ci));
  }

  void add(ConceptInclusion ci);
  const std::vector<ConceptInclusion>& inclusions() const { return inclusions_; }
  bool empty() const { return inclusions_.empty(); }
  size_t size() const { return inclusions_.size(); }
  int role_depth() const;

  bool operator==(const TBox& o) const { return inclusions_ == o.inclusions_; }

 private:
  std::vector<ConceptInclusion> inclusions_;
};

// Boolean combination of concept inclusions.
class BooleanTBox {
 public:
  enum class Kind : uint8_t { Atom, Not, And, Or };

  static BooleanTBox atom(ConceptInclusion ci);
  static BooleanTBox negation(BooleanTBox b);
  static BooleanTBox conj(BooleanTBox l, BooleanTBox r);
  static BooleanTBox disj(BooleanTBox l, BooleanTBox r);
  // Conjunction of the TBox's CIs; the empty TBox maps to ⊤⊑⊤.
  static BooleanTBox from_tbox(const TBox& t);

  Kind kind() const { return node_->kind; }
  const ConceptInclusion& ci() const { return node_->ci; }
  const BooleanTBox& child() const { return node_->children[0]; }
  const BooleanTBox& lhs() const { return node_->children[0]; }
  const BooleanTBox& rhs() const { return node_->children[1]; }

  std::vector<ConceptInclusion> atoms() const;

  template <typename F>
  void for_each_atom(F&& f) const {
    if (node_->kind == Kind::Atom) {
      f(node_->ci);
    } else {
      for (const BooleanTBox& b : node_->children) b.for_each_atom(f);
    }
  }

 private:
  struct Node {
    Kind kind;
    ConceptInclusion ci;
    std::vector<BooleanTBox> children;
  };
  explicit BooleanTBox(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

// Sorted, duplicate-free name sets.
struct Signature {
  std::vector<std::string> concept_names;
  std::vector<std::string> role_names;
  std::vector<std::string> individual_names;

  void add_concept_name(const std::string& n);
  void add_role_name(const std::string& n);
  void add_individual_name(const std::string& n);
  void merge(const Signature& o);

  bool operator==(const Signature&) const = default;
};

Signature signature_of(const Concept& c);
Signature signature_of(const TBox& t);
Signature signature_of(const BooleanTBox& b);

// Negation normal form: negation only on concept names and nominals;
// extension-equal to the input on every interpretation.
Concept nnf(const Concept& c);

// Smart negation: strips a double negation instead of stacking Not nodes.
Concept negate(const Concept& c);

// Closure under single negation of the subconcepts of T, with ⊤ and ⊥
// always present.  Deterministic order: all positive concepts (⊤, ⊥, then
// first occurrence in post-order over the CIs), followed by their single
// negations in the same order.
std::vector<Concept> sub_closure(const TBox& t);
// Just the positive half, in the same deterministic order.  This is the
// index space used for type bit sets.
std::vector<Concept> sub_closure_positives(const TBox& t);
std::vector<Concept> sub_closure_positives(const TBox& t, const std::vector<Concept>& extra);

// {⊤, ⊥} ∪ {A | A ∈ sig} ∪ {∃r.⊤, ∃r⁻.⊤ | r ∈ sig}, deterministic order.
std::vector<Concept> basic_concepts(const Signature& sig);
bool is_basic_concept(const Concept& c);

// Relativization of φ to a guard concept: models of the result are exactly
// the interpretations whose restriction to the guard's extension models φ.
// The public form takes a fresh concept name; the guard form is used
// internally with disjunctions of fresh names.
BooleanTBox relativize(const BooleanTBox& phi, const std::string& concept_name);
BooleanTBox relativize_to(const BooleanTBox& phi, const Concept& guard);
Concept relativize_concept(const Concept& c, const Concept& guard);

}  // namespace dlex
