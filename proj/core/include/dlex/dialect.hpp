#pragma once

#include <optional>
#include <string>

#include "dlex/concept.hpp"

namespace dlex {

enum class Dialect : uint8_t {
  EL,
  DLLiteCore,
  DLLiteCoreD,
  DLLiteHorn,
  ALC,
  ALCI,
  ALCQ,
  ALCO,
  ALCIO,
  ALCQI,
  ALCQIO,
};

struct DialectFeatures {
  bool inverse = false;
  bool counting = false;
  bool nominals = false;
};

DialectFeatures features_of(Dialect d);
bool is_expressive(Dialect d);  // ALC and its extensions

const char* dialect_name(Dialect d);
std::optional<Dialect> dialect_from_name(const std::string& name);

bool check_dialect(const Concept& c, Dialect d);
bool check_dialect(const ConceptInclusion& ci, Dialect d);
bool check_dialect(const TBox& t, Dialect d);
bool check_dialect(const BooleanTBox& b, Dialect d);

// Throws DialectError if the entity is outside the dialect.
void require_dialect(const TBox& t, Dialect d, const std::string& op);
void require_dialect(const BooleanTBox& b, Dialect d, const std::string& op);

}  // namespace dlex
