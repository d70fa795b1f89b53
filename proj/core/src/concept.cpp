#include "dlex/concept.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <set>
#include <unordered_set>

namespace dlex {

namespace {

size_t combine(size_t seed, size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

Concept Concept::make(Node n) {
  size_t h = static_cast<size_t>(n.kind);
  h = combine(h, std::hash<std::string>{}(n.label));
  h = combine(h, std::hash<std::string>{}(n.role.name));
  h = combine(h, n.role.inverted ? 1 : 0);
  h = combine(h, n.bound);
  int depth = 0;
  for (const Concept& c : n.children) {
    h = combine(h, c.hash());
    depth = std::max(depth, c.role_depth());
  }
  switch (n.kind) {
    case ConceptKind::Exists:
    case ConceptKind::Forall:
    case ConceptKind::AtLeast:
    case ConceptKind::AtMost:
      depth += 1;
      break;
    default:
      break;
  }
  n.hash = h;
  n.depth = depth;
  return Concept(std::make_shared<const Node>(std::move(n)));
}

Concept Concept::top() {
  static const Concept c = make(Node{ConceptKind::Top, 0, {}, {}, {}, 0, 0});
  return c;
}

Concept Concept::bot() {
  static const Concept c = make(Node{ConceptKind::Bot, 0, {}, {}, {}, 0, 0});
  return c;
}

Concept Concept::name(std::string n) {
  return make(Node{ConceptKind::Name, 0, {}, std::move(n), {}, 0, 0});
}

Concept Concept::nominal(std::string n) {
  return make(Node{ConceptKind::Nominal, 0, {}, std::move(n), {}, 0, 0});
}

Concept Concept::negation(Concept c) {
  return make(Node{ConceptKind::Not, 0, {}, {}, {std::move(c)}, 0, 0});
}

Concept Concept::conj(Concept l, Concept r) {
  return make(Node{ConceptKind::And, 0, {}, {}, {std::move(l), std::move(r)}, 0, 0});
}

Concept Concept::disj(Concept l, Concept r) {
  return make(Node{ConceptKind::Or, 0, {}, {}, {std::move(l), std::move(r)}, 0, 0});
}

Concept Concept::exists(Role r, Concept c) {
  return make(Node{ConceptKind::Exists, 0, std::move(r), {}, {std::move(c)}, 0, 0});
}

Concept Concept::forall(Role r, Concept c) {
  return make(Node{ConceptKind::Forall, 0, std::move(r), {}, {std::move(c)}, 0, 0});
}

Concept Concept::at_least(unsigned n, Role r, Concept c) {
  return make(Node{ConceptKind::AtLeast, n, std::move(r), {}, {std::move(c)}, 0, 0});
}

Concept Concept::at_most(unsigned n, Role r, Concept c) {
  return make(Node{ConceptKind::AtMost, n, std::move(r), {}, {std::move(c)}, 0, 0});
}

bool Concept::operator==(const Concept& o) const {
  if (node_ == o.node_) return true;
  if (node_->hash != o.node_->hash) return false;
  return compare(o) == 0;
}

int Concept::compare(const Concept& o) const {
  if (node_ == o.node_) return 0;
  if (node_->kind != o.node_->kind) return node_->kind < o.node_->kind ? -1 : 1;
  if (node_->bound != o.node_->bound) return node_->bound < o.node_->bound ? -1 : 1;
  if (node_->role != o.node_->role) return node_->role < o.node_->role ? -1 : 1;
  if (int c = node_->label.compare(o.node_->label); c != 0) return c < 0 ? -1 : 1;
  if (node_->children.size() != o.node_->children.size())
    return node_->children.size() < o.node_->children.size() ? -1 : 1;
  for (size_t i = 0; i < node_->children.size(); ++i) {
    if (int c = node_->children[i].compare(o.node_->children[i]); c != 0) return c;
  }
  return 0;
}

void TBox::add(ConceptInclusion ci) {
  if (std::find(inclusions_.begin(), inclusions_.end(), ci) == inclusions_.end())
    inclusions_.push_back(std::move(ci));
}

int TBox::role_depth() const {
  int d = 0;
  for (const auto& ci : inclusions_)
    d = std::max({d, ci.lhs.role_depth(), ci.rhs.role_depth()});
  return d;
}

BooleanTBox BooleanTBox::atom(ConceptInclusion ci) {
  return BooleanTBox(std::make_shared<const Node>(Node{Kind::Atom, std::move(ci), {}}));
}

BooleanTBox BooleanTBox::negation(BooleanTBox b) {
  return BooleanTBox(std::make_shared<const Node>(Node{Kind::Not, {}, {std::move(b)}}));
}

BooleanTBox BooleanTBox::conj(BooleanTBox l, BooleanTBox r) {
  return BooleanTBox(
      std::make_shared<const Node>(Node{Kind::And, {}, {std::move(l), std::move(r)}}));
}

BooleanTBox BooleanTBox::disj(BooleanTBox l, BooleanTBox r) {
  return BooleanTBox(
      std::make_shared<const Node>(Node{Kind::Or, {}, {std::move(l), std::move(r)}}));
}

BooleanTBox BooleanTBox::from_tbox(const TBox& t) {
  if (t.empty()) return atom({Concept::top(), Concept::top()});
  BooleanTBox b = atom(t.inclusions()[0]);
  for (size_t i = 1; i < t.size(); ++i) b = conj(std::move(b), atom(t.inclusions()[i]));
  return b;
}

std::vector<ConceptInclusion> BooleanTBox::atoms() const {
  std::vector<ConceptInclusion> out;
  for_each_atom([&](const ConceptInclusion& ci) { out.push_back(ci); });
  return out;
}

namespace {

void insert_sorted(std::vector<std::string>& v, const std::string& n) {
  auto it = std::lower_bound(v.begin(), v.end(), n);
  if (it == v.end() || *it != n) v.insert(it, n);
}

}  // namespace

void Signature::add_concept_name(const std::string& n) { insert_sorted(concept_names, n); }
void Signature::add_role_name(const std::string& n) { insert_sorted(role_names, n); }
void Signature::add_individual_name(const std::string& n) { insert_sorted(individual_names, n); }

void Signature::merge(const Signature& o) {
  for (const auto& n : o.concept_names) add_concept_name(n);
  for (const auto& n : o.role_names) add_role_name(n);
  for (const auto& n : o.individual_names) add_individual_name(n);
}

Signature signature_of(const Concept& c) {
  Signature sig;
  c.for_each_subconcept([&](const Concept& s) {
    switch (s.kind()) {
      case ConceptKind::Name:
        sig.add_concept_name(s.label());
        break;
      case ConceptKind::Nominal:
        sig.add_individual_name(s.label());
        break;
      case ConceptKind::Exists:
      case ConceptKind::Forall:
      case ConceptKind::AtLeast:
      case ConceptKind::AtMost:
        sig.add_role_name(s.role().name);
        break;
      default:
        break;
    }
  });
  return sig;
}

Signature signature_of(const TBox& t) {
  Signature sig;
  for (const auto& ci : t.inclusions()) {
    sig.merge(signature_of(ci.lhs));
    sig.merge(signature_of(ci.rhs));
  }
  return sig;
}

Signature signature_of(const BooleanTBox& b) {
  Signature sig;
  b.for_each_atom([&](const ConceptInclusion& ci) {
    sig.merge(signature_of(ci.lhs));
    sig.merge(signature_of(ci.rhs));
  });
  return sig;
}

Concept negate(const Concept& c) {
  if (c.kind() == ConceptKind::Not) return c.child();
  return Concept::negation(c);
}

Concept nnf(const Concept& c) {
  switch (c.kind()) {
    case ConceptKind::Top:
    case ConceptKind::Bot:
    case ConceptKind::Name:
    case ConceptKind::Nominal:
      return c;
    case ConceptKind::And:
      return Concept::conj(nnf(c.lhs()), nnf(c.rhs()));
    case ConceptKind::Or:
      return Concept::disj(nnf(c.lhs()), nnf(c.rhs()));
    case ConceptKind::Exists:
      return Concept::exists(c.role(), nnf(c.child()));
    case ConceptKind::Forall:
      return Concept::forall(c.role(), nnf(c.child()));
    case ConceptKind::AtLeast:
      return Concept::at_least(c.bound(), c.role(), nnf(c.child()));
    case ConceptKind::AtMost:
      return Concept::at_most(c.bound(), c.role(), nnf(c.child()));
    case ConceptKind::Not:
      break;
  }
  const Concept& d = c.child();
  switch (d.kind()) {
    case ConceptKind::Top:
      return Concept::bot();
    case ConceptKind::Bot:
      return Concept::top();
    case ConceptKind::Name:
    case ConceptKind::Nominal:
      return c;
    case ConceptKind::Not:
      return nnf(d.child());
    case ConceptKind::And:
      return Concept::disj(nnf(negate(d.lhs())), nnf(negate(d.rhs())));
    case ConceptKind::Or:
      return Concept::conj(nnf(negate(d.lhs())), nnf(negate(d.rhs())));
    case ConceptKind::Exists:
      return Concept::forall(d.role(), nnf(negate(d.child())));
    case ConceptKind::Forall:
      return Concept::exists(d.role(), nnf(negate(d.child())));
    case ConceptKind::AtLeast:
      // ¬(⩾0 r C) has empty extension.
      if (d.bound() == 0) return Concept::bot();
      return Concept::at_most(d.bound() - 1, d.role(), nnf(d.child()));
    case ConceptKind::AtMost:
      return Concept::at_least(d.bound() + 1, d.role(), nnf(d.child()));
  }
  return c;
}

namespace {

void collect_post_order(const Concept& c, std::vector<Concept>& out,
                        std::unordered_set<Concept, ConceptHash>& seen) {
  // Subconcepts of a negation are collected through the stripped form so
  // the positive index space never contains Not-rooted entries.
  if (c.kind() == ConceptKind::Not) {
    collect_post_order(c.child(), out, seen);
    return;
  }
  for (size_t i = 0; i < c.num_children(); ++i) collect_post_order(c.child_at(i), out, seen);
  if (seen.insert(c).second) out.push_back(c);
}

}  // namespace

std::vector<Concept> sub_closure_positives(const TBox& t, const std::vector<Concept>& extra) {
  std::vector<Concept> out;
  std::unordered_set<Concept, ConceptHash> seen;
  collect_post_order(Concept::top(), out, seen);
  collect_post_order(Concept::bot(), out, seen);
  for (const auto& ci : t.inclusions()) {
    collect_post_order(ci.lhs, out, seen);
    collect_post_order(ci.rhs, out, seen);
  }
  for (const auto& c : extra) collect_post_order(c, out, seen);
  return out;
}

std::vector<Concept> sub_closure_positives(const TBox& t) {
  return sub_closure_positives(t, {});
}

std::vector<Concept> sub_closure(const TBox& t) {
  std::vector<Concept> pos = sub_closure_positives(t);
  std::vector<Concept> out = pos;
  out.reserve(2 * pos.size());
  for (const auto& c : pos) out.push_back(Concept::negation(c));
  return out;
}

std::vector<Concept> basic_concepts(const Signature& sig) {
  std::vector<Concept> out{Concept::top(), Concept::bot()};
  for (const auto& a : sig.concept_names) out.push_back(Concept::name(a));
  for (const auto& r : sig.role_names) {
    out.push_back(Concept::exists(Role(r), Concept::top()));
    out.push_back(Concept::exists(Role(r, true), Concept::top()));
  }
  return out;
}

bool is_basic_concept(const Concept& c) {
  switch (c.kind()) {
    case ConceptKind::Top:
    case ConceptKind::Bot:
    case ConceptKind::Name:
      return true;
    case ConceptKind::Exists:
      return c.child().kind() == ConceptKind::Top;
    default:
      return false;
  }
}

Concept relativize_concept(const Concept& c, const Concept& guard) {
  switch (c.kind()) {
    case ConceptKind::Top:
    case ConceptKind::Bot:
    case ConceptKind::Name:
    case ConceptKind::Nominal:
      return c;
    case ConceptKind::Not:
      return Concept::negation(relativize_concept(c.child(), guard));
    case ConceptKind::And:
      return Concept::conj(relativize_concept(c.lhs(), guard),
                           relativize_concept(c.rhs(), guard));
    case ConceptKind::Or:
      return Concept::disj(relativize_concept(c.lhs(), guard),
                           relativize_concept(c.rhs(), guard));
    case ConceptKind::Exists:
      return Concept::exists(c.role(),
                             Concept::conj(guard, relativize_concept(c.child(), guard)));
    case ConceptKind::Forall:
      return Concept::forall(
          c.role(), Concept::disj(negate(guard), relativize_concept(c.child(), guard)));
    case ConceptKind::AtLeast:
      return Concept::at_least(c.bound(), c.role(),
                               Concept::conj(guard, relativize_concept(c.child(), guard)));
    case ConceptKind::AtMost:
      return Concept::at_most(c.bound(), c.role(),
                              Concept::conj(guard, relativize_concept(c.child(), guard)));
  }
  return c;
}

BooleanTBox relativize_to(const BooleanTBox& phi, const Concept& guard) {
  switch (phi.kind()) {
    case BooleanTBox::Kind::Atom: {
      const ConceptInclusion& ci = phi.ci();
      Concept rhs = relativize_concept(ci.rhs, guard);
      if (ci.lhs == Concept::top()) return BooleanTBox::atom({guard, rhs});
      Concept lhs = Concept::conj(guard, relativize_concept(ci.lhs, guard));
      return BooleanTBox::atom({lhs, rhs});
    }
    case BooleanTBox::Kind::Not:
      return BooleanTBox::negation(relativize_to(phi.child(), guard));
    case BooleanTBox::Kind::And:
      return BooleanTBox::conj(relativize_to(phi.lhs(), guard),
                               relativize_to(phi.rhs(), guard));
    case BooleanTBox::Kind::Or:
      return BooleanTBox::disj(relativize_to(phi.lhs(), guard),
                               relativize_to(phi.rhs(), guard));
  }
  return phi;
}

BooleanTBox relativize(const BooleanTBox& phi, const std::string& concept_name) {
  Signature sig = signature_of(phi);
  if (std::binary_search(sig.concept_names.begin(), sig.concept_names.end(), concept_name))
    throw SemanticError("relativization name '" + concept_name + "' occurs in the input");
  return relativize_to(phi, Concept::name(concept_name));
}

}  // namespace dlex
