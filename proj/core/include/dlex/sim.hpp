#pragma once

#include <string>
#include <vector>

#include "dlex/interp.hpp"

namespace dlex {

enum class SimFlavor : uint8_t { Bisim, CountingBisim, ElSim, DlLiteSim };

struct RelationNotion {
  SimFlavor flavor = SimFlavor::Bisim;
  bool inverse = false;   // conditions additionally range over inverse roles
  bool nominals = false;  // [Atom] also for concepts {a}

  static RelationNotion bisim(bool inv = false, bool nom = false) {
    return {SimFlavor::Bisim, inv, nom};
  }
  static RelationNotion counting(bool inv = false, bool nom = false) {
    return {SimFlavor::CountingBisim, inv, nom};
  }
  static RelationNotion el() { return {SimFlavor::ElSim, false, false}; }
  static RelationNotion dllite() { return {SimFlavor::DlLiteSim, true, false}; }
};

const char* flavor_name(SimFlavor f);

// Pairs from Δ^I1 × Δ^I2, in domain order.
struct Relation {
  std::vector<std::pair<std::string, std::string>> pairs;
  RelationNotion notion;

  bool contains(const std::string& a, const std::string& b) const;
};

// Greatest relation satisfying the notion's conditions; contains every
// relation that does.
Relation max_relation(const Interpretation& i1, const Interpretation& i2,
                      RelationNotion notion);

// Directed check: (d1,d2) in the maximal simulation.  Only the directed
// notions (el, dllite) are accepted.
bool simulated(const Interpretation& i1, const std::string& d1, const Interpretation& i2,
               const std::string& d2, RelationNotion notion);

bool equisimilar(const Interpretation& i1, const std::string& d1, const Interpretation& i2,
                 const std::string& d2, RelationNotion notion);

// Global relatedness: every element of each side has a partner on the
// other.  For the directed notions the pointwise relation is
// equisimilarity; for dllite this is decided via realized b-type sets.
bool globally_related(const Interpretation& i1, const Interpretation& i2,
                      RelationNotion notion);

// Realized b-types of an interpretation over a signature, one bit set per
// element, deduplicated and sorted.  Exposed for the dllite global check
// and for tests.
std::vector<DynBitset> realized_btypes(const Interpretation& i, const Signature& sig);

}  // namespace dlex
