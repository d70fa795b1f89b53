#include "dlex/reasoner.hpp"

#include <algorithm>

namespace dlex {

namespace {

void require_expressive_ii(const TBox& t, Dialect d, const char* op) {
  if (d != Dialect::ALC && d != Dialect::ALCI)
    throw DialectError(std::string(op) + ": dialect must be alc or alci");
  require_dialect(t, d, op);
}

}  // namespace

TypeSet satisfiable_types_with(const TBox& t, const std::vector<Concept>& extra,
                               Dialect dialect, const Limits& lim) {
  require_expressive_ii(t, dialect, "satisfiable_types");
  auto ct = std::make_shared<ClosureTable>(t, extra, lim);
  auto cis = ct->ci_lits(t);
  std::vector<DynBitset> types;
  for (DynBitset& ty : ct->all_types())
    if (ct->respects(ty, cis)) types.push_back(std::move(ty));
  types = eliminate_types(*ct, std::move(types));
  std::sort(types.begin(), types.end());
  return TypeSet{std::move(ct), std::move(types)};
}

TypeSet satisfiable_types(const TBox& t, Dialect dialect, const Limits& lim) {
  return satisfiable_types_with(t, {}, dialect, lim);
}

bool tbox_satisfiable(const TBox& t, Dialect dialect, const Limits& lim) {
  return !satisfiable_types(t, dialect, lim).types.empty();
}

bool entails(const TBox& t, const ConceptInclusion& ci, Dialect dialect, const Limits& lim) {
  TypeSet ts = satisfiable_types_with(t, {ci.lhs, ci.rhs}, dialect, lim);
  ClosureLit l = ts.closure->lit_of(ci.lhs);
  ClosureLit r = ts.closure->lit_of(ci.rhs);
  for (const DynBitset& ty : ts.types)
    if (ts.closure->member(ty, l) && !ts.closure->member(ty, r)) return false;
  return true;
}

namespace {

struct Disjunct {
  TBox positive;
  std::vector<ConceptInclusion> negative;
};

void dnf(const BooleanTBox& b, bool polarity, std::vector<Disjunct>& out, const Limits& lim) {
  switch (b.kind()) {
    case BooleanTBox::Kind::Atom:
      for (auto& d : out) {
        if (polarity)
          d.positive.add(b.ci());
        else
          d.negative.push_back(b.ci());
      }
      return;
    case BooleanTBox::Kind::Not:
      dnf(b.child(), !polarity, out, lim);
      return;
    case BooleanTBox::Kind::And:
    case BooleanTBox::Kind::Or: {
      bool conjunctive = (b.kind() == BooleanTBox::Kind::And) == polarity;
      if (conjunctive) {
        dnf(b.lhs(), polarity, out, lim);
        dnf(b.rhs(), polarity, out, lim);
      } else {
        std::vector<Disjunct> left = out;
        dnf(b.lhs(), polarity, left, lim);
        dnf(b.rhs(), polarity, out, lim);
        out.insert(out.end(), left.begin(), left.end());
        if (out.size() > static_cast<size_t>(lim.max_dnf))
          throw ResourceLimitError("Boolean TBox DNF exceeds " +
                                   std::to_string(lim.max_dnf) + " disjuncts (DLEX_MAX_DNF)");
      }
      return;
    }
  }
}

}  // namespace

bool boolean_satisfiable(const BooleanTBox& phi, Dialect dialect, const Limits& lim) {
  if (dialect != Dialect::ALC && dialect != Dialect::ALCI)
    throw DialectError("boolean_satisfiable: dialect must be alc or alci");
  require_dialect(phi, dialect, "boolean_satisfiable");

  std::vector<Disjunct> disjuncts{Disjunct{}};
  dnf(phi, true, disjuncts, lim);

  // One closure and one type enumeration over every atom of φ, shared by
  // all disjuncts; each disjunct only re-filters and re-eliminates.
  std::vector<Concept> extra;
  phi.for_each_atom([&](const ConceptInclusion& ci) {
    extra.push_back(ci.lhs);
    extra.push_back(ci.rhs);
  });
  ClosureTable ct(TBox{}, extra, lim);
  const std::vector<DynBitset> all = ct.all_types();

  for (const Disjunct& d : disjuncts) {
    auto cis = ct.ci_lits(d.positive);
    std::vector<DynBitset> types;
    for (const DynBitset& ty : all)
      if (ct.respects(ty, cis)) types.push_back(ty);
    types = eliminate_types(ct, std::move(types));
    if (types.empty()) continue;
    bool ok = true;
    for (const auto& ci : d.negative) {
      ClosureLit l = ct.lit_of(ci.lhs);
      ClosureLit r = ct.lit_of(ci.rhs);
      bool refutable = false;
      for (const DynBitset& ty : types)
        if (ct.member(ty, l) && !ct.member(ty, r)) {
          refutable = true;
          break;
        }
      if (!refutable) {
        ok = false;
        break;
      }
    }
    if (ok) return true;
  }
  return false;
}

Interpretation canonical_model(const TypeSet& ts) {
  if (ts.types.empty()) throw SemanticError("canonical model of an unsatisfiable TBox");
  Interpretation m;
  for (size_t i = 0; i < ts.types.size(); ++i) m.add_element("t" + std::to_string(i));
  const ClosureTable& ct = *ts.closure;
  for (size_t k = 0; k < ct.size(); ++k) {
    if (!ct.name_mask().test(k)) continue;
    const std::string& name = ct.positives()[k].label();
    m.declare_concept(name);
    for (size_t i = 0; i < ts.types.size(); ++i)
      if (ts.types[i].test(k)) m.set_concept(name, m.domain()[i]);
  }
  for (const std::string& r : ct.role_names()) {
    m.declare_role(r);
    for (size_t i = 0; i < ts.types.size(); ++i)
      for (size_t j = 0; j < ts.types.size(); ++j)
        if (ct.coherent(ts.types[i], Role(r), ts.types[j]))
          m.add_role_edge(r, m.domain()[i], m.domain()[j]);
  }
  return m;
}

Interpretation canonical_model(const TBox& t, Dialect dialect, const Limits& lim) {
  return canonical_model(satisfiable_types(t, dialect, lim));
}

Interpretation canonical_model_fragment(const TypeSet& ts, const DynBitset& root,
                                        const std::string& id_prefix) {
  const ClosureTable& ct = *ts.closure;
  auto it = std::find(ts.types.begin(), ts.types.end(), root);
  if (it == ts.types.end()) throw SemanticError("root type is not satisfiable w.r.t. T");
  size_t root_idx = static_cast<size_t>(it - ts.types.begin());

  // Successor-closed reachable set: obligations of reachable types are
  // witnessed inside, so the fragment stays a model.
  std::vector<size_t> order;
  std::vector<char> seen(ts.types.size(), 0);
  order.push_back(root_idx);
  seen[root_idx] = 1;
  for (size_t q = 0; q < order.size(); ++q) {
    const DynBitset& t = ts.types[order[q]];
    for (const auto& ob : ct.obligations(t)) {
      for (size_t j = 0; j < ts.types.size(); ++j) {
        if (seen[j] || !ct.member(ts.types[j], ob.child)) continue;
        bool coh = ob.role.inverted ? ct.coherent(ts.types[j], ob.role.inverse(), t)
                                    : ct.coherent(t, ob.role, ts.types[j]);
        if (coh) {
          seen[j] = 1;
          order.push_back(j);
          break;
        }
      }
    }
  }
  std::sort(order.begin() + 1, order.end());

  Interpretation m;
  for (size_t i : order) m.add_element(id_prefix + "t" + std::to_string(i));
  for (size_t k = 0; k < ct.size(); ++k) {
    if (!ct.name_mask().test(k)) continue;
    const std::string& name = ct.positives()[k].label();
    m.declare_concept(name);
    for (size_t i : order)
      if (ts.types[i].test(k)) m.set_concept(name, id_prefix + "t" + std::to_string(i));
  }
  for (const std::string& r : ct.role_names()) {
    m.declare_role(r);
    for (size_t i : order)
      for (size_t j : order)
        if (ct.coherent(ts.types[i], Role(r), ts.types[j]))
          m.add_role_edge(r, id_prefix + "t" + std::to_string(i),
                          id_prefix + "t" + std::to_string(j));
  }
  return m;
}

}  // namespace dlex
