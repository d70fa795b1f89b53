#include "dlex/render.hpp"

#include <sstream>

namespace dlex {

namespace {

// Precedence levels: or < and < unary.
int precedence(const Concept& c) {
  switch (c.kind()) {
    case ConceptKind::Or:
      return 1;
    case ConceptKind::And:
      return 2;
    case ConceptKind::Not:
    case ConceptKind::Exists:
    case ConceptKind::Forall:
    case ConceptKind::AtLeast:
    case ConceptKind::AtMost:
      return 3;
    default:
      return 4;
  }
}

void render_ascii(const Concept& c, int min_prec, std::string& out) {
  bool paren = precedence(c) < min_prec;
  if (paren) out += "(";
  switch (c.kind()) {
    case ConceptKind::Top:
      out += "top";
      break;
    case ConceptKind::Bot:
      out += "bot";
      break;
    case ConceptKind::Name:
      out += c.label();
      break;
    case ConceptKind::Nominal:
      out += "{" + c.label() + "}";
      break;
    case ConceptKind::Not:
      out += "not ";
      render_ascii(c.child(), 3, out);
      break;
    case ConceptKind::And:
      render_ascii(c.lhs(), 2, out);
      out += " and ";
      render_ascii(c.rhs(), 3, out);
      break;
    case ConceptKind::Or:
      render_ascii(c.lhs(), 1, out);
      out += " or ";
      render_ascii(c.rhs(), 2, out);
      break;
    case ConceptKind::Exists:
      out += "some " + render(c.role()) + " ";
      render_ascii(c.child(), 3, out);
      break;
    case ConceptKind::Forall:
      out += "only " + render(c.role()) + " ";
      render_ascii(c.child(), 3, out);
      break;
    case ConceptKind::AtLeast:
      out += "atleast " + std::to_string(c.bound()) + " " + render(c.role()) + " ";
      render_ascii(c.child(), 3, out);
      break;
    case ConceptKind::AtMost:
      out += "atmost " + std::to_string(c.bound()) + " " + render(c.role()) + " ";
      render_ascii(c.child(), 3, out);
      break;
  }
  if (paren) out += ")";
}

std::string role_unicode(const Role& r) { return r.inverted ? r.name + "⁻" : r.name; }

void render_unicode(const Concept& c, int min_prec, std::string& out) {
  bool paren = precedence(c) < min_prec;
  if (paren) out += "(";
  switch (c.kind()) {
    case ConceptKind::Top:
      out += "⊤";
      break;
    case ConceptKind::Bot:
      out += "⊥";
      break;
    case ConceptKind::Name:
      out += c.label();
      break;
    case ConceptKind::Nominal:
      out += "{" + c.label() + "}";
      break;
    case ConceptKind::Not:
      out += "¬";
      render_unicode(c.child(), 3, out);
      break;
    case ConceptKind::And:
      render_unicode(c.lhs(), 2, out);
      out += " ⊓ ";
      render_unicode(c.rhs(), 3, out);
      break;
    case ConceptKind::Or:
      render_unicode(c.lhs(), 1, out);
      out += " ⊔ ";
      render_unicode(c.rhs(), 2, out);
      break;
    case ConceptKind::Exists:
      out += "∃" + role_unicode(c.role()) + ".";
      render_unicode(c.child(), 3, out);
      break;
    case ConceptKind::Forall:
      out += "∀" + role_unicode(c.role()) + ".";
      render_unicode(c.child(), 3, out);
      break;
    case ConceptKind::AtLeast:
      out += "⩾" + std::to_string(c.bound()) + " " + role_unicode(c.role()) + ".";
      render_unicode(c.child(), 3, out);
      break;
    case ConceptKind::AtMost:
      out += "⩽" + std::to_string(c.bound()) + " " + role_unicode(c.role()) + ".";
      render_unicode(c.child(), 3, out);
      break;
  }
  if (paren) out += ")";
}

std::string var(int i) { return "x" + std::to_string(i); }

std::string edge(const Role& r, int from, int to) {
  return r.inverted ? r.name + "(" + var(to) + "," + var(from) + ")"
                    : r.name + "(" + var(from) + "," + var(to) + ")";
}

// Standard translation C♯(x_i); the next free variable is x_{i+1}.
std::string fo(const Concept& c, int i) {
  switch (c.kind()) {
    case ConceptKind::Top:
      return "true";
    case ConceptKind::Bot:
      return "false";
    case ConceptKind::Name:
      return c.label() + "(" + var(i) + ")";
    case ConceptKind::Nominal:
      return var(i) + " = " + c.label();
    case ConceptKind::Not:
      return "¬" + fo(c.child(), i);
    case ConceptKind::And:
      return "(" + fo(c.lhs(), i) + " ∧ " + fo(c.rhs(), i) + ")";
    case ConceptKind::Or:
      return "(" + fo(c.lhs(), i) + " ∨ " + fo(c.rhs(), i) + ")";
    case ConceptKind::Exists:
      return "∃" + var(i + 1) + ".(" + edge(c.role(), i, i + 1) + " ∧ " +
             fo(c.child(), i + 1) + ")";
    case ConceptKind::Forall:
      return "∀" + var(i + 1) + ".(" + edge(c.role(), i, i + 1) + " → " +
             fo(c.child(), i + 1) + ")";
    case ConceptKind::AtLeast:
      return "∃≥" + std::to_string(c.bound()) + " " + var(i + 1) + ".(" +
             edge(c.role(), i, i + 1) + " ∧ " + fo(c.child(), i + 1) + ")";
    case ConceptKind::AtMost:
      return "∃≤" + std::to_string(c.bound()) + " " + var(i + 1) + ".(" +
             edge(c.role(), i, i + 1) + " ∧ " + fo(c.child(), i + 1) + ")";
  }
  return "?";
}

std::string fo_ci(const ConceptInclusion& ci) {
  return "∀x0.(" + fo(ci.lhs, 0) + " → " + fo(ci.rhs, 0) + ")";
}

}  // namespace

std::string render(const Role& r, RenderStyle style) {
  if (style == RenderStyle::Unicode) return role_unicode(r);
  return r.inverted ? "inv(" + r.name + ")" : r.name;
}

std::string render(const Concept& c, RenderStyle style) {
  std::string out;
  switch (style) {
    case RenderStyle::Ascii:
      render_ascii(c, 0, out);
      break;
    case RenderStyle::Unicode:
      render_unicode(c, 0, out);
      break;
    case RenderStyle::Fo:
      out = fo(c, 0);
      break;
  }
  return out;
}

std::string render(const ConceptInclusion& ci, RenderStyle style) {
  switch (style) {
    case RenderStyle::Ascii:
      return render(ci.lhs) + " [= " + render(ci.rhs);
    case RenderStyle::Unicode:
      return render(ci.lhs, style) + " ⊑ " + render(ci.rhs, style);
    case RenderStyle::Fo:
      return fo_ci(ci);
  }
  return "";
}

std::string render(const TBox& t, RenderStyle style) {
  std::string out;
  if (style == RenderStyle::Fo) {
    if (t.empty()) return "true";
    for (size_t i = 0; i < t.size(); ++i) {
      if (i) out += " ∧ ";
      out += fo_ci(t.inclusions()[i]);
    }
    return out;
  }
  for (const auto& ci : t.inclusions()) {
    out += render(ci, style);
    out += style == RenderStyle::Ascii ? ".\n" : "\n";
  }
  return out;
}

std::string render(const BooleanTBox& b, RenderStyle style) {
  switch (b.kind()) {
    case BooleanTBox::Kind::Atom:
      return "(" + render(b.ci(), style) + ")";
    case BooleanTBox::Kind::Not:
      return (style == RenderStyle::Ascii ? "!" : "¬") + render(b.child(), style);
    case BooleanTBox::Kind::And:
      return "(" + render(b.lhs(), style) +
             (style == RenderStyle::Ascii ? " && " : " ∧ ") + render(b.rhs(), style) + ")";
    case BooleanTBox::Kind::Or:
      return "(" + render(b.lhs(), style) +
             (style == RenderStyle::Ascii ? " || " : " ∨ ") + render(b.rhs(), style) + ")";
  }
  return "";
}

}  // namespace dlex
