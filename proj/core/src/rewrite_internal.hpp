#pragma once

#include <map>
#include <string>
#include <vector>

#include "dlex/closure.hpp"
#include "dlex/interp.hpp"
#include "dlex/reasoner.hpp"

namespace dlex::internal {

// Graph over a type set: one element per type, r-edges between coherent
// types.  A model whenever every type's obligations are witnessed inside.
Interpretation type_graph(const ClosureTable& ct, const std::vector<DynBitset>& types,
                          const std::string& prefix);

// Induced subinterpretation on the extension of a concept.
Interpretation restrict_to_extension(const Interpretation& i, const Concept& c);

Concept rename_individuals(const Concept& c, const std::map<std::string, std::string>& m);
BooleanTBox rename_individuals(const BooleanTBox& b,
                               const std::map<std::string, std::string>& m);

Concept conj_fold(const std::vector<Concept>& cs);
Concept disj_fold(const std::vector<Concept>& cs);

}  // namespace dlex::internal
