#pragma once

#include <string>

#include "dlex/concept.hpp"

namespace dlex {

enum class RenderStyle { Ascii, Unicode, Fo };

// Ascii output round-trips through the parser; Fo emits the first-order
// translation (documentation only).
std::string render(const Role& r, RenderStyle style = RenderStyle::Ascii);
std::string render(const Concept& c, RenderStyle style = RenderStyle::Ascii);
std::string render(const ConceptInclusion& ci, RenderStyle style = RenderStyle::Ascii);
std::string render(const TBox& t, RenderStyle style = RenderStyle::Ascii);
std::string render(const BooleanTBox& b, RenderStyle style = RenderStyle::Ascii);

}  // namespace dlex
