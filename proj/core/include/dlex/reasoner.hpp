#pragma once

#include <memory>
#include <optional>

#include "dlex/closure.hpp"
#include "dlex/dialect.hpp"
#include "dlex/interp.hpp"

namespace dlex {

// tp(T): the T-types satisfiable in a model of T, over the sub-closure
// index space, together with the coherence relation ⇝_r.
struct TypeSet {
  std::shared_ptr<const ClosureTable> closure;
  std::vector<DynBitset> types;

  bool coherent(const DynBitset& a, const Role& r, const DynBitset& b) const {
    return closure->coherent(a, r, b);
  }
  bool contains(const DynBitset& t) const {
    return std::binary_search(types.begin(), types.end(), t);
  }
};

TypeSet satisfiable_types(const TBox& t, Dialect dialect,
                          const Limits& lim = Limits::defaults());
// Like satisfiable_types but with extra concepts seeded into the closure.
TypeSet satisfiable_types_with(const TBox& t, const std::vector<Concept>& extra,
                               Dialect dialect, const Limits& lim = Limits::defaults());

bool tbox_satisfiable(const TBox& t, Dialect dialect, const Limits& lim = Limits::defaults());

bool entails(const TBox& t, const ConceptInclusion& ci, Dialect dialect,
             const Limits& lim = Limits::defaults());

// DNF over CI literals; a disjunct is satisfiable iff its positive part is
// and each negated CI is separately satisfiable w.r.t. the positive part
// (sound without nominals, where models combine by disjoint union).
bool boolean_satisfiable(const BooleanTBox& phi, Dialect dialect,
                         const Limits& lim = Limits::defaults());

// Type-graph model over tp(T): realizes exactly tp(T).  Requires T
// satisfiable.
Interpretation canonical_model(const TBox& t, Dialect dialect,
                               const Limits& lim = Limits::defaults());
Interpretation canonical_model(const TypeSet& ts);
// The fragment of the canonical model reachable from one type.
Interpretation canonical_model_fragment(const TypeSet& ts, const DynBitset& root,
                                        const std::string& id_prefix);

}  // namespace dlex
