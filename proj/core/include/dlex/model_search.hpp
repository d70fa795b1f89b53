#pragma once

#include <optional>

#include "dlex/interp.hpp"
#include "dlex/limits.hpp"

namespace dlex {

// Complete search for a model of φ with at most max_size elements over
// sig(φ), all dialects included.  Absence of a model within the bound is
// not unsatisfiability.  Backed by a SAT encoding of the fixed-size model
// existence problem, searched size by size; deterministic.
std::optional<Interpretation> bounded_model_search(const BooleanTBox& phi, int max_size);
std::optional<Interpretation> bounded_model_search(const TBox& t, int max_size);

}  // namespace dlex
