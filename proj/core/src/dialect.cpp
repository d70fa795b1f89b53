#include "dlex/dialect.hpp"

#include "dlex/limits.hpp"

#include <array>

namespace dlex {

DialectFeatures features_of(Dialect d) {
  switch (d) {
    case Dialect::EL:
    case Dialect::ALC:
      return {false, false, false};
    case Dialect::DLLiteCore:
    case Dialect::DLLiteCoreD:
    case Dialect::DLLiteHorn:
    case Dialect::ALCI:
      return {true, false, false};
    case Dialect::ALCQ:
      return {false, true, false};
    case Dialect::ALCO:
      return {false, false, true};
    case Dialect::ALCIO:
      return {true, false, true};
    case Dialect::ALCQI:
      return {true, true, false};
    case Dialect::ALCQIO:
      return {true, true, true};
  }
  return {};
}

bool is_expressive(Dialect d) {
  switch (d) {
    case Dialect::ALC:
    case Dialect::ALCI:
    case Dialect::ALCQ:
    case Dialect::ALCO:
    case Dialect::ALCIO:
    case Dialect::ALCQI:
    case Dialect::ALCQIO:
      return true;
    default:
      return false;
  }
}

const char* dialect_name(Dialect d) {
  switch (d) {
    case Dialect::EL: return "el";
    case Dialect::DLLiteCore: return "dllite-core";
    case Dialect::DLLiteCoreD: return "dllite-cored";
    case Dialect::DLLiteHorn: return "dllite-horn";
    case Dialect::ALC: return "alc";
    case Dialect::ALCI: return "alci";
    case Dialect::ALCQ: return "alcq";
    case Dialect::ALCO: return "alco";
    case Dialect::ALCIO: return "alcio";
    case Dialect::ALCQI: return "alcqi";
    case Dialect::ALCQIO: return "alcqio";
  }
  return "?";
}

std::optional<Dialect> dialect_from_name(const std::string& name) {
  static const std::array<Dialect, 11> all = {
      Dialect::EL,    Dialect::DLLiteCore, Dialect::DLLiteCoreD, Dialect::DLLiteHorn,
      Dialect::ALC,   Dialect::ALCI,       Dialect::ALCQ,        Dialect::ALCO,
      Dialect::ALCIO, Dialect::ALCQI,      Dialect::ALCQIO};
  for (Dialect d : all)
    if (name == dialect_name(d)) return d;
  return std::nullopt;
}

namespace {

bool el_concept(const Concept& c) {
  switch (c.kind()) {
    case ConceptKind::Top:
    case ConceptKind::Bot:
    case ConceptKind::Name:
      return true;
    case ConceptKind::And:
      return el_concept(c.lhs()) && el_concept(c.rhs());
    case ConceptKind::Exists:
      return !c.role().inverted && el_concept(c.child());
    default:
      return false;
  }
}

bool horn_concept(const Concept& c) {
  if (is_basic_concept(c)) return true;
  return c.kind() == ConceptKind::And && horn_concept(c.lhs()) && horn_concept(c.rhs());
}

bool expressive_concept(const Concept& c, const DialectFeatures& f) {
  switch (c.kind()) {
    case ConceptKind::Top:
    case ConceptKind::Bot:
    case ConceptKind::Name:
      return true;
    case ConceptKind::Nominal:
      return f.nominals;
    case ConceptKind::Not:
      return expressive_concept(c.child(), f);
    case ConceptKind::And:
    case ConceptKind::Or:
      return expressive_concept(c.lhs(), f) && expressive_concept(c.rhs(), f);
    case ConceptKind::Exists:
    case ConceptKind::Forall:
      return (!c.role().inverted || f.inverse) && expressive_concept(c.child(), f);
    case ConceptKind::AtLeast:
    case ConceptKind::AtMost:
      return f.counting && (!c.role().inverted || f.inverse) &&
             expressive_concept(c.child(), f);
  }
  return false;
}

}  // namespace

bool check_dialect(const Concept& c, Dialect d) {
  switch (d) {
    case Dialect::EL:
      return el_concept(c);
    case Dialect::DLLiteCore:
    case Dialect::DLLiteCoreD:
      return is_basic_concept(c);
    case Dialect::DLLiteHorn:
      return horn_concept(c);
    default:
      return expressive_concept(c, features_of(d));
  }
}

bool check_dialect(const ConceptInclusion& ci, Dialect d) {
  switch (d) {
    case Dialect::DLLiteCore:
      return is_basic_concept(ci.lhs) && is_basic_concept(ci.rhs);
    case Dialect::DLLiteCoreD:
      if (is_basic_concept(ci.lhs) && is_basic_concept(ci.rhs)) return true;
      // Disjointness shape B1 ⊓ B2 ⊑ ⊥.
      return ci.lhs.kind() == ConceptKind::And && is_basic_concept(ci.lhs.lhs()) &&
             is_basic_concept(ci.lhs.rhs()) && ci.rhs.kind() == ConceptKind::Bot;
    default:
      return check_dialect(ci.lhs, d) && check_dialect(ci.rhs, d);
  }
}

bool check_dialect(const TBox& t, Dialect d) {
  for (const auto& ci : t.inclusions())
    if (!check_dialect(ci, d)) return false;
  return true;
}

bool check_dialect(const BooleanTBox& b, Dialect d) {
  bool ok = true;
  b.for_each_atom([&](const ConceptInclusion& ci) { ok = ok && check_dialect(ci, d); });
  return ok;
}

void require_dialect(const TBox& t, Dialect d, const std::string& op) {
  if (!check_dialect(t, d))
    throw DialectError(op + ": input is not a " + dialect_name(d) + " TBox");
}

void require_dialect(const BooleanTBox& b, Dialect d, const std::string& op) {
  if (!check_dialect(b, d))
    throw DialectError(op + ": input is not a Boolean " + dialect_name(d) + " TBox");
}

}  // namespace dlex

namespace dlex {

void poll_cancel(const Limits& lim) {
  if (lim.cancel && lim.cancel())
    throw ResourceLimitError("cancelled by the caller's hook");
}

}  // namespace dlex
