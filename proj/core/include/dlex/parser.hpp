#pragma once

#include <string_view>

#include "dlex/concept.hpp"

namespace dlex {

Concept parse_concept(std::string_view text);
// One "C [= D." per line, '#' starts a comment.
TBox parse_tbox(std::string_view text);
BooleanTBox parse_boolean_tbox(std::string_view text);
// A single inclusion, with or without the trailing dot.
ConceptInclusion parse_inclusion(std::string_view text);

}  // namespace dlex
