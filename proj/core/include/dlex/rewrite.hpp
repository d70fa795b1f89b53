#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dlex/dialect.hpp"
#include "dlex/interp.hpp"
#include "dlex/limits.hpp"

namespace dlex {

enum class Outcome : uint8_t { Rewritable, NotRewritable, Unknown };
const char* outcome_name(Outcome o);

struct Verdict {
  Outcome outcome = Outcome::Unknown;
  std::optional<TBox> rewriting;
  // Named counterexample interpretations, machine-checkable.
  std::vector<std::pair<std::string, Interpretation>> witnesses;
  std::string detail;
};

enum class Tri : uint8_t { True, False, Unknown };
const char* tri_name(Tri t);

struct InvarianceResult {
  Tri value = Tri::Unknown;
  std::vector<std::pair<std::string, Interpretation>> witnesses;
  std::string detail;
};

// Validity of χ → (φ_A1 ∧ φ_A2 ↔ φ) over a two-part partition schema.
// Exact for alc/alci; alcq/alcqi go through the bounded model finder and
// may come back unknown.
InvarianceResult invariant_under_disjoint_unions(const BooleanTBox& phi, Dialect dialect,
                                                 const Limits& lim = Limits::defaults());

// Nominal disjoint unions (alcio/alcqio): partition enumeration over the
// nominals of φ with the φ_Ξ¹/φ_Ξ² validity checks, decided by the bounded
// model finder.  False is definite (witness attached); True reports the
// bound it holds under.
InvarianceResult invariant_under_nominal_du(const BooleanTBox& phi, Dialect dialect,
                                            const Limits& lim = Limits::defaults());

// Invariance of an ALC TBox under global EL-equisimulation, by the
// stratified tuple elimination.  Exact.
bool el_global_invariance(const TBox& t, const Limits& lim = Limits::defaults());

// Preservation of an ALC TBox under binary products: bounded search for a
// pair of initial interpretation trees whose product breaks T at the root
// pair.  False carries two verified model witnesses; True means the input
// is an EL TBox, unsatisfiable, or the search was complete for the
// theoretical bound.
InvarianceResult product_preservation(const TBox& t, const Limits& lim = Limits::defaults());

Verdict rewrite_alci_to_alc(const TBox& t, const Limits& lim = Limits::defaults());
Verdict rewrite_alc_to_el(const TBox& t, const Limits& lim = Limits::defaults());
Verdict rewrite_to_dllite_horn(const TBox& t, const Limits& lim = Limits::defaults());
Verdict rewrite_to_dllite_core(const TBox& t, bool with_disjointness,
                               const Limits& lim = Limits::defaults());

// Fresh-name helpers shared by the constructions and the test harness.
std::string fresh_concept_name(const Signature& sig, const std::string& base);
std::string fresh_role_name(const Signature& sig, const std::string& base);

}  // namespace dlex
