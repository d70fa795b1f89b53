#pragma once

#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "dlex/concept.hpp"
#include "dlex/util.hpp"

namespace dlex {

// A finite interpretation: non-empty ordered domain of opaque element ids,
// concept-name and role-name extensions, and a partial assignment of
// individual names.  Immutable by convention once built.
class Interpretation {
 public:
  Interpretation() = default;

  int add_element(const std::string& id);
  void set_concept(const std::string& name, const std::string& id);
  void declare_concept(const std::string& name);
  void add_role_edge(const std::string& role, const std::string& from, const std::string& to);
  void declare_role(const std::string& role);
  void assign_individual(const std::string& name, const std::string& id);

  size_t size() const { return domain_.size(); }
  const std::vector<std::string>& domain() const { return domain_; }
  // -1 when the id is not in the domain.
  int index_of(const std::string& id) const;

  const std::map<std::string, DynBitset>& concepts() const { return concepts_; }
  const std::map<std::string, std::vector<std::pair<int, int>>>& roles() const {
    return roles_;
  }
  const std::map<std::string, int>& individuals() const { return individuals_; }

  bool in_concept(const std::string& name, int elem) const;
  // Forward (or converse, for inverted roles) adjacency lists.
  std::vector<std::vector<int>> adjacency(const Role& r) const;

  // Throws SemanticError when the structure is ill-formed (empty domain,
  // dangling ids).
  void validate() const;

 private:
  int require(const std::string& id) const;

  std::vector<std::string> domain_;
  std::unordered_map<std::string, int> index_;
  std::map<std::string, DynBitset> concepts_;
  std::map<std::string, std::vector<std::pair<int, int>>> roles_;
  std::map<std::string, int> individuals_;
};

struct ComponentInterpretation {
  Interpretation base;
  // Nom(J): the individual names this component interprets.
  std::vector<std::string> nom;
};

// Bottom-up evaluation of a concept; throws SemanticError on a nominal
// that the interpretation does not assign.
DynBitset extension(const Interpretation& i, const Concept& c);
std::vector<std::string> extension_ids(const Interpretation& i, const Concept& c);

bool satisfies(const Interpretation& i, const ConceptInclusion& ci);
bool satisfies(const Interpretation& i, const TBox& t);
bool satisfies(const Interpretation& i, const BooleanTBox& b);

// Direct product; nominal assignments are dropped (products are a
// nominal-free construction).
Interpretation product(const Interpretation& a, const Interpretation& b);
Interpretation product(const std::vector<Interpretation>& is);

// Tags element ids with the input index.  A nominal assigned by two
// inputs makes the disjoint union undefined.
Interpretation disjoint_union(const std::vector<Interpretation>& is);

// Non-disjoint union: shared element ids denote the same object.
Interpretation union_of(const std::vector<Interpretation>& is);
bool compatible(const std::vector<Interpretation>& is, const Signature& sig);

// Partition into connected components under the union of all roles and
// their converses.
std::vector<ComponentInterpretation> components(const Interpretation& i);

Interpretation nominal_disjoint_union(const std::vector<ComponentInterpretation>& js);

// Interchange format (JSON text with sorted keys):
//   {"domain": [...], "concepts": {...}, "individuals": {...}, "roles": {...}}
std::string to_text(const Interpretation& i);
Interpretation parse_interpretation(std::string_view text);

}  // namespace dlex
