#include "dlex/rewrite.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "dlex/model_search.hpp"
#include "dlex/reasoner.hpp"
#include "dlex/render.hpp"
#include "rewrite_internal.hpp"

namespace dlex {

const char* outcome_name(Outcome o) {
  switch (o) {
    case Outcome::Rewritable: return "rewritable";
    case Outcome::NotRewritable: return "not-rewritable";
    case Outcome::Unknown: return "unknown";
  }
  return "?";
}

const char* tri_name(Tri t) {
  switch (t) {
    case Tri::True: return "true";
    case Tri::False: return "false";
    case Tri::Unknown: return "unknown";
  }
  return "?";
}

std::string fresh_concept_name(const Signature& sig, const std::string& base) {
  std::string n = base;
  int k = 1;
  while (std::binary_search(sig.concept_names.begin(), sig.concept_names.end(), n))
    n = base + std::to_string(k++);
  return n;
}

std::string fresh_role_name(const Signature& sig, const std::string& base) {
  std::string n = base;
  int k = 1;
  while (std::binary_search(sig.role_names.begin(), sig.role_names.end(), n))
    n = base + std::to_string(k++);
  return n;
}

namespace internal {

Interpretation type_graph(const ClosureTable& ct, const std::vector<DynBitset>& types,
                          const std::string& prefix) {
  Interpretation m;
  for (size_t i = 0; i < types.size(); ++i) m.add_element(prefix + std::to_string(i));
  for (size_t k = 0; k < ct.size(); ++k) {
    if (!ct.name_mask().test(k)) continue;
    const std::string& name = ct.positives()[k].label();
    m.declare_concept(name);
    for (size_t i = 0; i < types.size(); ++i)
      if (types[i].test(k)) m.set_concept(name, m.domain()[i]);
  }
  for (const std::string& r : ct.role_names()) {
    m.declare_role(r);
    for (size_t i = 0; i < types.size(); ++i)
      for (size_t j = 0; j < types.size(); ++j)
        if (ct.coherent(types[i], Role(r), types[j]))
          m.add_role_edge(r, m.domain()[i], m.domain()[j]);
  }
  return m;
}

Interpretation restrict_to_extension(const Interpretation& i, const Concept& c) {
  DynBitset keep = extension(i, c);
  Interpretation out;
  for (size_t d = 0; d < i.size(); ++d)
    if (keep.test(d)) out.add_element(i.domain()[d]);
  if (out.size() == 0) throw SemanticError("restriction has an empty domain");
  for (const auto& [n, ext] : i.concepts()) {
    out.declare_concept(n);
    for (size_t d = 0; d < i.size(); ++d)
      if (keep.test(d) && ext.test(d)) out.set_concept(n, i.domain()[d]);
  }
  for (const auto& [r, edges] : i.roles()) {
    out.declare_role(r);
    for (auto [f, t] : edges)
      if (keep.test(static_cast<size_t>(f)) && keep.test(static_cast<size_t>(t)))
        out.add_role_edge(r, i.domain()[f], i.domain()[t]);
  }
  for (const auto& [a, d] : i.individuals())
    if (keep.test(static_cast<size_t>(d))) out.assign_individual(a, i.domain()[d]);
  return out;
}

Concept rename_individuals(const Concept& c, const std::map<std::string, std::string>& m) {
  switch (c.kind()) {
    case ConceptKind::Nominal: {
      auto it = m.find(c.label());
      return it == m.end() ? c : Concept::nominal(it->second);
    }
    case ConceptKind::Not:
      return Concept::negation(rename_individuals(c.child(), m));
    case ConceptKind::And:
      return Concept::conj(rename_individuals(c.lhs(), m), rename_individuals(c.rhs(), m));
    case ConceptKind::Or:
      return Concept::disj(rename_individuals(c.lhs(), m), rename_individuals(c.rhs(), m));
    case ConceptKind::Exists:
      return Concept::exists(c.role(), rename_individuals(c.child(), m));
    case ConceptKind::Forall:
      return Concept::forall(c.role(), rename_individuals(c.child(), m));
    case ConceptKind::AtLeast:
      return Concept::at_least(c.bound(), c.role(), rename_individuals(c.child(), m));
    case ConceptKind::AtMost:
      return Concept::at_most(c.bound(), c.role(), rename_individuals(c.child(), m));
    default:
      return c;
  }
}

BooleanTBox rename_individuals(const BooleanTBox& b,
                               const std::map<std::string, std::string>& m) {
  switch (b.kind()) {
    case BooleanTBox::Kind::Atom:
      return BooleanTBox::atom(
          {rename_individuals(b.ci().lhs, m), rename_individuals(b.ci().rhs, m)});
    case BooleanTBox::Kind::Not:
      return BooleanTBox::negation(rename_individuals(b.child(), m));
    case BooleanTBox::Kind::And:
      return BooleanTBox::conj(rename_individuals(b.lhs(), m),
                               rename_individuals(b.rhs(), m));
    case BooleanTBox::Kind::Or:
      return BooleanTBox::disj(rename_individuals(b.lhs(), m),
                               rename_individuals(b.rhs(), m));
  }
  return b;
}

Concept conj_fold(const std::vector<Concept>& cs) {
  if (cs.empty()) return Concept::top();
  Concept c = cs[0];
  for (size_t i = 1; i < cs.size(); ++i) c = Concept::conj(c, cs[i]);
  return c;
}

Concept disj_fold(const std::vector<Concept>& cs) {
  if (cs.empty()) return Concept::bot();
  Concept c = cs[0];
  for (size_t i = 1; i < cs.size(); ++i) c = Concept::disj(c, cs[i]);
  return c;
}

}  // namespace internal

using internal::conj_fold;
using internal::disj_fold;
using internal::restrict_to_extension;
using internal::type_graph;

namespace {

BooleanTBox conj_all(std::vector<BooleanTBox> parts) {
  BooleanTBox b = parts.at(0);
  for (size_t i = 1; i < parts.size(); ++i) b = BooleanTBox::conj(b, parts[i]);
  return b;
}

// χ ∧ ¬(φ_A1 ∧ φ_A2 ↔ φ), the negation of the validity check from the
// disjoint-union reduction.
BooleanTBox du_violation_formula(const BooleanTBox& phi, const Concept& a1,
                                 const Concept& a2) {
  Signature sig = signature_of(phi);
  std::vector<BooleanTBox> chi;
  chi.push_back(BooleanTBox::atom({Concept::conj(a1, a2), Concept::bot()}));
  chi.push_back(BooleanTBox::atom({Concept::top(), Concept::disj(a1, a2)}));
  for (const auto& r : sig.role_names) {
    chi.push_back(BooleanTBox::atom({a1, Concept::forall(Role(r), a1)}));
    chi.push_back(BooleanTBox::atom({a2, Concept::forall(Role(r), a2)}));
  }
  chi.push_back(BooleanTBox::negation(BooleanTBox::atom({a1, Concept::bot()})));
  chi.push_back(BooleanTBox::negation(BooleanTBox::atom({a2, Concept::bot()})));

  BooleanTBox both = BooleanTBox::conj(relativize_to(phi, a1), relativize_to(phi, a2));
  BooleanTBox breach =
      BooleanTBox::disj(BooleanTBox::conj(both, BooleanTBox::negation(phi)),
                        BooleanTBox::conj(BooleanTBox::negation(both), phi));
  chi.push_back(breach);
  return conj_all(std::move(chi));
}

std::vector<std::pair<std::string, Interpretation>> du_witnesses(const Interpretation& m,
                                                                 const Concept& a1,
                                                                 const Concept& a2) {
  std::vector<std::pair<std::string, Interpretation>> w;
  w.emplace_back("union", m);
  w.emplace_back("part1", restrict_to_extension(m, a1));
  w.emplace_back("part2", restrict_to_extension(m, a2));
  return w;
}

}  // namespace

InvarianceResult invariant_under_disjoint_unions(const BooleanTBox& phi, Dialect dialect,
                                                 const Limits& lim) {
  if (dialect != Dialect::ALC && dialect != Dialect::ALCI && dialect != Dialect::ALCQ &&
      dialect != Dialect::ALCQI)
    throw DialectError("invariance under disjoint unions needs a nominal-free dialect");
  require_dialect(phi, dialect, "invariant_under_disjoint_unions");

  Signature sig = signature_of(phi);
  Concept a1 = Concept::name(fresh_concept_name(sig, "P1"));
  Concept a2 = Concept::name(fresh_concept_name(sig, "P2"));
  BooleanTBox violation = du_violation_formula(phi, a1, a2);

  if (dialect == Dialect::ALC || dialect == Dialect::ALCI) {
    if (!boolean_satisfiable(violation, dialect, lim))
      return {Tri::True, {}, "exact (type elimination)"};
    InvarianceResult r{Tri::False, {}, "violation of the partition schema"};
    if (auto m = bounded_model_search(violation, lim.max_model_size)) {
      r.witnesses = du_witnesses(*m, a1, a2);
      r.detail += "; witness family attached";
    }
    return r;
  }
  // Counting dialects go through the bounded finder.
  if (auto m = bounded_model_search(violation, lim.max_model_size))
    return {Tri::False, du_witnesses(*m, a1, a2), "bounded model search"};
  return {Tri::Unknown, {},
          "no violation with at most " + std::to_string(lim.max_model_size) +
              " elements; counting dialects are decided by bounded search only"};
}

namespace {

void enumerate_partitions(const std::vector<std::string>& xs, size_t i,
                          std::vector<std::vector<std::string>>& current,
                          std::vector<std::vector<std::vector<std::string>>>& out) {
  if (i == xs.size()) {
    out.push_back(current);
    return;
  }
  for (size_t b = 0; b < current.size(); ++b) {
    current[b].push_back(xs[i]);
    enumerate_partitions(xs, i + 1, current, out);
    current[b].pop_back();
  }
  current.push_back({xs[i]});
  enumerate_partitions(xs, i + 1, current, out);
  current.pop_back();
}

}  // namespace

InvarianceResult invariant_under_nominal_du(const BooleanTBox& phi, Dialect dialect,
                                            const Limits& lim) {
  if (dialect != Dialect::ALCIO && dialect != Dialect::ALCQIO)
    throw DialectError("invariance under nominal disjoint unions needs alcio or alcqio");
  require_dialect(phi, dialect, "invariant_under_nominal_du");

  Signature sig = signature_of(phi);
  const std::vector<std::string>& X = sig.individual_names;
  if (X.empty()) {
    Dialect stripped = dialect == Dialect::ALCIO ? Dialect::ALCI : Dialect::ALCQI;
    InvarianceResult r = invariant_under_disjoint_unions(phi, stripped, lim);
    r.detail = "no nominals, reduced to disjoint unions; " + r.detail;
    return r;
  }

  std::vector<Role> roles;
  for (const auto& r : sig.role_names) {
    roles.emplace_back(r);
    roles.emplace_back(r, true);
  }

  Signature used = sig;

  // Condition (b): one component owning every nominal, one owning none.
  {
    Concept a1 = Concept::name(fresh_concept_name(used, "NA1"));
    used.add_concept_name(a1.label());
    Concept a2 = Concept::name(fresh_concept_name(used, "NA2"));
    used.add_concept_name(a2.label());
    Concept b1 = Concept::name(fresh_concept_name(used, "NB1"));
    used.add_concept_name(b1.label());
    Concept b2 = Concept::name(fresh_concept_name(used, "NB2"));
    used.add_concept_name(b2.label());

    std::vector<BooleanTBox> parts;
    parts.push_back(BooleanTBox::atom({a1, b1}));
    parts.push_back(BooleanTBox::atom({b1, a1}));
    parts.push_back(BooleanTBox::atom({a2, b2}));
    for (const Role& r : roles) {
      parts.push_back(BooleanTBox::atom({a1, Concept::forall(r, a1)}));
      parts.push_back(BooleanTBox::atom({a2, Concept::forall(r, a2)}));
      parts.push_back(BooleanTBox::atom({b2, Concept::forall(r, b2)}));
    }
    for (const auto& a : X) parts.push_back(BooleanTBox::atom({Concept::nominal(a), a1}));
    parts.push_back(BooleanTBox::atom({Concept::conj(b1, b2), Concept::bot()}));
    parts.push_back(BooleanTBox::negation(BooleanTBox::atom({a1, Concept::bot()})));
    parts.push_back(BooleanTBox::negation(BooleanTBox::atom({a2, Concept::bot()})));
    parts.push_back(relativize_to(phi, Concept::disj(a1, a2)));
    parts.push_back(BooleanTBox::negation(relativize_to(phi, a1)));

    if (auto m = bounded_model_search(conj_all(std::move(parts)), lim.max_model_size))
      return {Tri::False,
              {{"violation", *m}},
              "condition (b) fails: the nominal-owning component does not inherit φ"};
  }

  // Condition (a): all partitions of the nominal set, optionally with one
  // block owning no nominal.
  std::vector<std::vector<std::vector<std::string>>> partitions;
  {
    std::vector<std::vector<std::string>> current{{X[0]}};
    enumerate_partitions(X, 1, current, partitions);
    size_t base = partitions.size();
    for (size_t p = 0; p < base; ++p) {
      auto with_empty = partitions[p];
      with_empty.push_back({});
      partitions.push_back(std::move(with_empty));
    }
  }

  for (const auto& blocks : partitions) {
    const size_t n = blocks.size();
    Signature local = used;
    std::vector<Concept> A, B;
    for (size_t i = 0; i < n; ++i) {
      A.push_back(Concept::name(fresh_concept_name(local, "NA" + std::to_string(i + 1))));
      local.add_concept_name(A.back().label());
      B.push_back(Concept::name(fresh_concept_name(local, "NB" + std::to_string(i + 1))));
      local.add_concept_name(B.back().label());
    }
    // Per-component copies of the nominal names: component i's parent
    // interpretation places every nominal somewhere inside B_i.
    std::vector<std::map<std::string, std::string>> copy(n);
    for (size_t i = 0; i < n; ++i)
      for (const auto& a : X) {
        std::string c = a + "_c" + std::to_string(i + 1);
        while (std::binary_search(local.individual_names.begin(),
                                  local.individual_names.end(), c))
          c += "_";
        local.add_individual_name(c);
        copy[i][a] = c;
      }

    std::vector<BooleanTBox> parts;
    for (size_t i = 0; i < n; ++i) {
      parts.push_back(BooleanTBox::atom({A[i], B[i]}));
      for (const Role& r : roles) {
        parts.push_back(BooleanTBox::atom({A[i], Concept::forall(r, A[i])}));
        parts.push_back(BooleanTBox::atom({B[i], Concept::forall(r, B[i])}));
      }
      for (const auto& a : blocks[i]) {
        parts.push_back(BooleanTBox::atom({Concept::nominal(a), A[i]}));
        // The component's nominal and the parent copy denote the same
        // element, as a component inherits the parent's assignment.
        parts.push_back(
            BooleanTBox::atom({Concept::nominal(a), Concept::nominal(copy[i][a])}));
      }
      for (const auto& a : X)
        parts.push_back(BooleanTBox::atom({Concept::nominal(copy[i][a]), B[i]}));
      for (size_t j = i + 1; j < n; ++j)
        parts.push_back(BooleanTBox::atom({Concept::conj(B[i], B[j]), Concept::bot()}));
      parts.push_back(BooleanTBox::negation(BooleanTBox::atom({A[i], Concept::bot()})));
      parts.push_back(relativize_to(internal::rename_individuals(phi, copy[i]), B[i]));
    }
    std::vector<Concept> As = A;
    parts.push_back(BooleanTBox::negation(relativize_to(phi, disj_fold(As))));

    if (auto m = bounded_model_search(conj_all(std::move(parts)), lim.max_model_size)) {
      std::string desc = "condition (a) fails for partition {";
      for (size_t i = 0; i < n; ++i) {
        desc += i ? " | " : "";
        for (size_t k = 0; k < blocks[i].size(); ++k)
          desc += (k ? "," : "") + blocks[i][k];
        if (blocks[i].empty()) desc += "-";
      }
      desc += "}";
      return {Tri::False, {{"violation", *m}}, desc};
    }
  }

  return {Tri::True, {},
          "conditions (a) and (b) hold for every partition, checked up to " +
              std::to_string(lim.max_model_size) + " elements"};
}

// ---------------------------------------------------------------------------
// ALCI -> ALC: pair-type elimination.

namespace {

struct PairElim {
  TypeSet ts;                       // tp(T)
  std::vector<DynBitset> all;       // tp over the same closure
  std::vector<char> in_tp_t;        // all[i] ∈ tp(T)?
  std::vector<std::string> roles;   // role names
  // coherence within tp(T), one successor row per (role, type)
  std::vector<std::vector<DynBitset>> coh;

  struct P {
    int s;         // index into all
    DynBitset S;   // subset of tp(T) indices
  };
  std::vector<P> pairs;
  std::vector<char> alive;
};

bool set_leadsto(const PairElim& e, size_t r, const DynBitset& S, const DynBitset& S2) {
  for (size_t i = 0; i < S.size(); ++i)
    if (S.test(i) && !e.coh[r][i].intersects(S2)) return false;
  return true;
}

}  // namespace

Verdict rewrite_alci_to_alc(const TBox& t, const Limits& lim) {
  require_dialect(t, Dialect::ALCI, "rewrite alci->alc");
  if (t.empty()) return {Outcome::Rewritable, TBox{}, {}, "empty TBox"};
  if (check_dialect(t, Dialect::ALC))
    return {Outcome::Rewritable, t, {}, "input is already an ALC TBox"};

  PairElim e;
  e.ts = satisfiable_types(t, Dialect::ALCI, lim);
  const ClosureTable& ct = *e.ts.closure;
  e.all = ct.all_types();
  e.in_tp_t.resize(e.all.size());
  for (size_t i = 0; i < e.all.size(); ++i)
    e.in_tp_t[i] = e.ts.contains(e.all[i]);
  e.roles = ct.role_names();
  const size_t nt = e.ts.types.size();
  e.coh.assign(e.roles.size(), std::vector<DynBitset>(nt, DynBitset(nt)));
  for (size_t r = 0; r < e.roles.size(); ++r)
    for (size_t i = 0; i < nt; ++i)
      for (size_t j = 0; j < nt; ++j)
        if (ct.coherent(e.ts.types[i], Role(e.roles[r]), e.ts.types[j]))
          e.coh[r][i].set(j);

  // Init: s ∈ tp, ∅ ≠ S ⊆ tp(T), all of S ∪ {s} with equal concept names.
  std::map<DynBitset, std::vector<int>> nc_class;
  for (size_t j = 0; j < nt; ++j) {
    DynBitset nc = e.ts.types[j];
    nc &= ct.name_mask();
    nc_class[nc].push_back(static_cast<int>(j));
  }
  long long budget = 0;
  for (size_t i = 0; i < e.all.size(); ++i) {
    DynBitset nc = e.all[i];
    nc &= ct.name_mask();
    auto it = nc_class.find(nc);
    if (it == nc_class.end()) continue;
    const auto& cls = it->second;
    if (cls.size() > 62)
      throw ResourceLimitError("pair space per name class exceeds 2^62");
    budget += (1LL << cls.size()) - 1;
    if (budget > lim.max_pairs)
      throw ResourceLimitError("pair-type space exceeds " + std::to_string(lim.max_pairs) +
                               " (DLEX_MAX_PAIRS)");
    for (unsigned long long mask = 1; mask < (1ULL << cls.size()); ++mask) {
      DynBitset S(nt);
      for (size_t k = 0; k < cls.size(); ++k)
        if ((mask >> k) & 1) S.set(static_cast<size_t>(cls[k]));
      e.pairs.push_back({static_cast<int>(i), std::move(S)});
    }
  }
  e.alive.assign(e.pairs.size(), 1);

  auto pair_leadsto = [&](const PairElim::P& p, size_t r, const PairElim::P& q) {
    return ct.coherent(e.all[p.s], Role(e.roles[r]), e.all[q.s]) &&
           set_leadsto(e, r, p.S, q.S);
  };

  // Exhaustive application of rules (r1)-(r3).
  bool changed = true;
  while (changed) {
    changed = false;
    poll_cancel(lim);
    for (size_t pi = 0; pi < e.pairs.size(); ++pi) {
      if (!e.alive[pi]) continue;
      const auto& p = e.pairs[pi];
      bool ok = true;
      for (const auto& ob : ct.obligations(e.all[p.s])) {
        size_t r = static_cast<size_t>(
            std::lower_bound(e.roles.begin(), e.roles.end(), ob.role.name) -
            e.roles.begin());
        bool witnessed = false;
        for (size_t qi = 0; qi < e.pairs.size() && !witnessed; ++qi) {
          if (!e.alive[qi]) continue;
          const auto& q = e.pairs[qi];
          if (!ct.member(e.all[q.s], ob.child)) continue;
          witnessed = ob.role.inverted ? pair_leadsto(q, r, p) : pair_leadsto(p, r, q);
        }
        if (!witnessed) {
          ok = false;
          break;
        }
      }
      if (ok) {
        for (size_t ti = 0; ti < p.S.size() && ok; ++ti) {
          if (!p.S.test(ti)) continue;
          for (const auto& ob : ct.obligations(e.ts.types[ti])) {
            if (ob.role.inverted) continue;  // handled by model attachments
            size_t r = static_cast<size_t>(
                std::lower_bound(e.roles.begin(), e.roles.end(), ob.role.name) -
                e.roles.begin());
            bool witnessed = false;
            for (size_t qi = 0; qi < e.pairs.size() && !witnessed; ++qi) {
              if (!e.alive[qi]) continue;
              const auto& q = e.pairs[qi];
              if (!pair_leadsto(p, r, q)) continue;
              for (size_t tj = 0; tj < q.S.size(); ++tj) {
                if (!q.S.test(tj)) continue;
                if (e.coh[r][ti].test(tj) && ct.member(e.ts.types[tj], ob.child)) {
                  witnessed = true;
                  break;
                }
              }
            }
            if (!witnessed) {
              ok = false;
              break;
            }
          }
        }
      }
      if (!ok) {
        e.alive[pi] = 0;
        changed = true;
      }
    }
  }

  int bad = -1;
  for (size_t pi = 0; pi < e.pairs.size(); ++pi)
    if (e.alive[pi] && !e.in_tp_t[e.pairs[pi].s]) {
      bad = static_cast<int>(pi);
      break;
    }
  if (bad < 0)
    return {Outcome::Rewritable, std::nullopt, {},
            "every surviving pair type is satisfiable w.r.t. T; no rewriting is "
            "constructed"};

  // Witness construction.  I_neg below refutes T (it realizes a type
  // outside tp(T)); I_pos is a model; and disjoint_union(I_neg0, I_pos) is
  // globally ALC-bisimilar to I_pos.
  std::vector<int> live;
  for (size_t pi = 0; pi < e.pairs.size(); ++pi)
    if (e.alive[pi]) live.push_back(static_cast<int>(pi));
  std::map<int, int> live_pos;
  for (size_t k = 0; k < live.size(); ++k) live_pos[live[k]] = static_cast<int>(k);

  Interpretation i_neg0;
  for (size_t k = 0; k < live.size(); ++k) i_neg0.add_element("p" + std::to_string(k));
  for (size_t c = 0; c < ct.size(); ++c) {
    if (!ct.name_mask().test(c)) continue;
    const std::string& name = ct.positives()[c].label();
    i_neg0.declare_concept(name);
    for (size_t k = 0; k < live.size(); ++k)
      if (e.all[e.pairs[live[k]].s].test(c)) i_neg0.set_concept(name, i_neg0.domain()[k]);
  }
  for (size_t r = 0; r < e.roles.size(); ++r) {
    i_neg0.declare_role(e.roles[r]);
    for (size_t k = 0; k < live.size(); ++k)
      for (size_t k2 = 0; k2 < live.size(); ++k2)
        if (pair_leadsto(e.pairs[live[k]], r, e.pairs[live[k2]]))
          i_neg0.add_role_edge(e.roles[r], i_neg0.domain()[k], i_neg0.domain()[k2]);
  }

  // I_pos: triples (pair, member of S) plus inverse-witness attachments
  // carved out of the canonical model.
  Interpretation i_pos;
  std::map<std::pair<int, int>, std::string> triple_id;
  for (size_t k = 0; k < live.size(); ++k) {
    const auto& p = e.pairs[live[k]];
    for (size_t ti = 0; ti < p.S.size(); ++ti)
      if (p.S.test(ti)) {
        std::string id = "q" + std::to_string(k) + "_" + std::to_string(ti);
        triple_id[{live[k], static_cast<int>(ti)}] = id;
        i_pos.add_element(id);
      }
  }
  for (size_t c = 0; c < ct.size(); ++c) {
    if (!ct.name_mask().test(c)) continue;
    const std::string& name = ct.positives()[c].label();
    i_pos.declare_concept(name);
    for (const auto& [key, id] : triple_id)
      if (e.ts.types[key.second].test(c)) i_pos.set_concept(name, id);
  }
  for (size_t r = 0; r < e.roles.size(); ++r) {
    i_pos.declare_role(e.roles[r]);
    for (const auto& [key, id] : triple_id)
      for (const auto& [key2, id2] : triple_id)
        if (e.coh[r][key.second].test(static_cast<size_t>(key2.second)) &&
            pair_leadsto(e.pairs[key.first], r, e.pairs[key2.first]))
          i_pos.add_role_edge(e.roles[r], id, id2);
  }
  // Attach, per triple and per inverse existential of its type, a
  // predecessor realizing the witness concept inside a model of T.
  int attach = 0;
  for (const auto& [key, id] : triple_id) {
    const DynBitset& ty = e.ts.types[key.second];
    for (const auto& ob : ct.obligations(ty)) {
      if (!ob.role.inverted) continue;
      size_t r = static_cast<size_t>(
          std::lower_bound(e.roles.begin(), e.roles.end(), ob.role.name) - e.roles.begin());
      int pick = -1;
      for (size_t j = 0; j < e.ts.types.size(); ++j)
        if (ct.member(e.ts.types[j], ob.child) && e.coh[r][j].test(key.second)) {
          pick = static_cast<int>(j);
          break;
        }
      if (pick < 0)
        throw SemanticError("internal: satisfiable type lacks an inverse witness");
      std::string prefix = "w" + std::to_string(attach++) + "_";
      Interpretation frag = canonical_model_fragment(e.ts, e.ts.types[pick], prefix);
      for (const auto& d : frag.domain()) i_pos.add_element(d);
      for (const auto& [n, ext] : frag.concepts()) {
        i_pos.declare_concept(n);
        for (size_t d = 0; d < frag.size(); ++d)
          if (ext.test(d)) i_pos.set_concept(n, frag.domain()[d]);
      }
      for (const auto& [rn, edges] : frag.roles()) {
        i_pos.declare_role(rn);
        for (auto [f, to] : edges)
          i_pos.add_role_edge(rn, frag.domain()[f], frag.domain()[to]);
      }
      i_pos.add_role_edge(ob.role.name, prefix + "t" + std::to_string(pick), id);
    }
  }

  Verdict v;
  v.outcome = Outcome::NotRewritable;
  v.detail = "surviving pair type with an unsatisfiable local type; witness pair "
             "attached (i1 refutes T, i2 models T, globally ALC-bisimilar)";
  Interpretation i1 = disjoint_union({i_neg0, i_pos});
  v.witnesses.emplace_back("i1", std::move(i1));
  v.witnesses.emplace_back("i2", std::move(i_pos));
  return v;
}

// ---------------------------------------------------------------------------
// DL-Lite machinery.

namespace {

struct BasicContext {
  TypeSet ts;
  std::vector<Concept> basics;
  std::vector<ClosureLit> basic_lits;
  std::vector<DynBitset> btypes;  // realized by tp(T), sorted unique
};

DynBitset project_btype(const BasicContext& bc, const DynBitset& type) {
  DynBitset b(bc.basics.size());
  for (size_t k = 0; k < bc.basics.size(); ++k)
    if (bc.ts.closure->member(type, bc.basic_lits[k])) b.set(k);
  return b;
}

BasicContext make_basic_context(const TBox& t, const Limits& lim) {
  Signature sig = signature_of(t);
  BasicContext bc;
  bc.basics = basic_concepts(sig);
  if (bc.basics.size() > static_cast<size_t>(lim.max_basic_concepts))
    throw ResourceLimitError(std::to_string(bc.basics.size()) +
                             " basic concepts exceed the enumeration cap " +
                             std::to_string(lim.max_basic_concepts) +
                             " (DLEX_MAX_BASIC_CONCEPTS)");
  bc.ts = satisfiable_types_with(t, bc.basics, Dialect::ALCI, lim);
  for (const auto& b : bc.basics) bc.basic_lits.push_back(bc.ts.closure->lit_of(b));
  for (const auto& ty : bc.ts.types) bc.btypes.push_back(project_btype(bc, ty));
  std::sort(bc.btypes.begin(), bc.btypes.end());
  bc.btypes.erase(std::unique(bc.btypes.begin(), bc.btypes.end()), bc.btypes.end());
  return bc;
}

// T ⊨ ⊓L ⊑ ⊔R over basic concepts, via the realized b-types.
bool basic_entails(const BasicContext& bc, const DynBitset& L, const DynBitset& R) {
  for (const auto& beta : bc.btypes)
    if (L.subset_of(beta) && !beta.intersects(R)) return false;
  return true;
}

Concept lhs_concept(const BasicContext& bc, const DynBitset& L) {
  std::vector<Concept> cs;
  for (size_t k = 0; k < bc.basics.size(); ++k)
    if (L.test(k)) cs.push_back(bc.basics[k]);
  return conj_fold(cs);
}

// Greedy minimization: drop a CI whenever the remaining set still entails it.
TBox minimize_tbox(const TBox& t, const Limits& lim) {
  std::vector<ConceptInclusion> kept(t.inclusions().begin(), t.inclusions().end());
  for (size_t i = 0; i < kept.size();) {
    TBox rest;
    for (size_t j = 0; j < kept.size(); ++j)
      if (j != i) rest.add(kept[j]);
    bool redundant = entails(rest, kept[i], Dialect::ALCI, lim);
    if (redundant)
      kept.erase(kept.begin() + static_cast<long>(i));
    else
      ++i;
  }
  TBox out;
  for (auto& ci : kept) out.add(std::move(ci));
  return out;
}

}  // namespace

Verdict rewrite_to_dllite_horn(const TBox& t, const Limits& lim) {
  require_dialect(t, Dialect::ALCI, "rewrite ->dllite-horn");
  if (t.empty()) return {Outcome::Rewritable, TBox{}, {}, "empty TBox"};

  BasicContext bc = make_basic_context(t, lim);
  const ClosureTable& ct = *bc.ts.closure;

  // Step 1: invariance under global DL-Lite_horn equisimulation.  Q holds
  // the types whose b-type is realizable w.r.t. T; the removal rule prunes
  // unwitnessed existentials; T is invariant iff the fixpoint stays within
  // tp(T).
  std::vector<DynBitset> all = ct.all_types();
  std::set<DynBitset> btype_set(bc.btypes.begin(), bc.btypes.end());
  std::vector<DynBitset> Q;
  for (const auto& ty : all)
    if (btype_set.count(project_btype(bc, ty))) Q.push_back(ty);
  std::vector<DynBitset> P = eliminate_types(ct, std::move(Q));

  for (const auto& ty : P) {
    if (bc.ts.contains(ty)) continue;
    Verdict v;
    v.outcome = Outcome::NotRewritable;
    v.detail =
        "not invariant under global DL-Lite_horn equisimulation: a type outside tp(T) "
        "is realizable over the realizable b-types";
    v.witnesses.emplace_back("i1", type_graph(ct, P, "p"));
    v.witnesses.emplace_back("i2", canonical_model(bc.ts));
    return v;
  }

  // Step 2: every entailed B1⊓…⊓Bn ⊑ B1'⊔…⊔Bm' needs an entailed single
  // disjunct.  The weakest candidate right side is the set of basics not
  // singly entailed, so one check per left side suffices.
  const size_t b = bc.basics.size();
  std::vector<DynBitset> singly(1ULL << b);
  for (unsigned long long mask = 1; mask < (1ULL << b); ++mask) {
    if ((mask & 0xfff) == 0) poll_cancel(lim);
    DynBitset L(b);
    for (size_t k = 0; k < b; ++k)
      if ((mask >> k) & 1) L.set(k);
    DynBitset E(b);
    for (size_t k = 0; k < b; ++k) {
      DynBitset R(b);
      R.set(k);
      if (basic_entails(bc, L, R)) E.set(k);
    }
    singly[mask] = E;
    DynBitset rest = E;
    rest.flip_all();
    if (rest.any() && basic_entails(bc, L, rest)) {
      std::vector<Concept> ds;
      for (size_t k = 0; k < b; ++k)
        if (rest.test(k)) ds.push_back(bc.basics[k]);
      Verdict v;
      v.outcome = Outcome::NotRewritable;
      v.detail = "entailed disjunctive basic CI with no entailed disjunct: " +
                 render(ConceptInclusion{lhs_concept(bc, L), disj_fold(ds)});
      return v;
    }
  }

  // Both steps passed: emit the entailed horn closure over the signature's
  // basic concepts, minimal premises first, then greedily minimized.
  TBox rewriting;
  int bot_idx = 1;  // basics order: ⊤, ⊥, names, ∃r.⊤, ∃r⁻.⊤
  for (unsigned long long mask = 1; mask < (1ULL << b); ++mask) {
    if ((mask >> bot_idx) & 1) continue;  // ⊥ on the left is noise
    const DynBitset& E = singly[mask];
    for (size_t k = 0; k < b; ++k) {
      if (!E.test(k)) continue;
      if ((mask >> k) & 1) continue;     // conclusion among the premises
      if (bc.basics[k] == Concept::top()) continue;
      bool minimal = true;
      for (size_t x = 0; x < b && minimal; ++x) {
        if (!((mask >> x) & 1)) continue;
        unsigned long long sub = mask & ~(1ULL << x);
        if (sub && singly[sub].test(k)) minimal = false;
      }
      if (!minimal) continue;
      DynBitset L(b);
      for (size_t x = 0; x < b; ++x)
        if ((mask >> x) & 1) L.set(x);
      rewriting.add({lhs_concept(bc, L), bc.basics[k]});
    }
  }
  rewriting = minimize_tbox(rewriting, lim);

  Verdict v;
  v.outcome = Outcome::Rewritable;
  v.rewriting = rewriting;
  v.detail = "invariant under global DL-Lite_horn equisimulation; entailed horn closure "
             "emitted";
  return v;
}

Verdict rewrite_to_dllite_core(const TBox& t, bool with_disjointness, const Limits& lim) {
  bool exact = check_dialect(t, Dialect::ALCI);
  if (!exact && !check_dialect(t, Dialect::ALCQIO))
    throw DialectError("rewrite ->dllite-core: input must be an expressive-DL TBox");
  if (t.empty()) return {Outcome::Rewritable, TBox{}, {}, "empty TBox"};

  Signature sig = signature_of(t);
  std::vector<Concept> basics = basic_concepts(sig);
  if (basics.size() > static_cast<size_t>(lim.max_basic_concepts))
    throw ResourceLimitError(std::to_string(basics.size()) +
                             " basic concepts exceed the enumeration cap " +
                             std::to_string(lim.max_basic_concepts) +
                             " (DLEX_MAX_BASIC_CONCEPTS)");

  // Γ: all core CIs over the signature (plus disjointness for core^d).
  std::vector<ConceptInclusion> gamma;
  for (size_t i = 0; i < basics.size(); ++i)
    for (size_t j = 0; j < basics.size(); ++j)
      if (i != j) gamma.push_back({basics[i], basics[j]});
  if (with_disjointness)
    for (size_t i = 0; i < basics.size(); ++i)
      for (size_t j = i; j < basics.size(); ++j)
        gamma.push_back({Concept::conj(basics[i], basics[j]), Concept::bot()});

  TBox gamma_t;
  std::string mode;
  if (exact) {
    BasicContext bc = make_basic_context(t, lim);
    auto entailed = [&](const ConceptInclusion& ci) {
      DynBitset L(bc.basics.size()), R(bc.basics.size());
      auto idx = [&](const Concept& c) {
        for (size_t k = 0; k < bc.basics.size(); ++k)
          if (bc.basics[k] == c) return static_cast<int>(k);
        return -1;
      };
      if (ci.lhs.kind() == ConceptKind::And) {
        L.set(static_cast<size_t>(idx(ci.lhs.lhs())));
        L.set(static_cast<size_t>(idx(ci.lhs.rhs())));
      } else {
        L.set(static_cast<size_t>(idx(ci.lhs)));
      }
      R.set(static_cast<size_t>(idx(ci.rhs)));
      return basic_entails(bc, L, R);
    };
    for (const auto& ci : gamma)
      if (entailed(ci)) gamma_t.add(ci);
    mode = "exact (alc/alci type elimination)";
  } else {
    // Counting/nominal dialects: Γ_T is over-approximated by bounded
    // refutation, which keeps "not-rewritable" sound and leaves
    // "rewritable" out of reach.
    for (const auto& ci : gamma) {
      BooleanTBox refute =
          BooleanTBox::conj(BooleanTBox::from_tbox(t),
                            BooleanTBox::negation(BooleanTBox::atom(ci)));
      if (!bounded_model_search(refute, lim.max_model_size)) gamma_t.add(ci);
    }
    mode = "bounded (counting or nominal constructs present)";
  }

  BooleanTBox breach = BooleanTBox::conj(
      BooleanTBox::from_tbox(gamma_t),
      BooleanTBox::negation(BooleanTBox::from_tbox(t)));

  Verdict v;
  v.detail = "Γ_T computed " + mode;
  if (exact) {
    if (!boolean_satisfiable(breach, Dialect::ALCI, lim)) {
      v.outcome = Outcome::Rewritable;
      v.rewriting = minimize_tbox(gamma_t, lim);
      return v;
    }
    v.outcome = Outcome::NotRewritable;
    if (auto m = bounded_model_search(breach, lim.max_model_size)) {
      v.witnesses.emplace_back("gamma_model", *m);
      v.detail += "; countermodel of Γ_T ∧ ¬T attached";
    }
    return v;
  }
  if (auto m = bounded_model_search(breach, lim.max_model_size)) {
    v.outcome = Outcome::NotRewritable;
    v.witnesses.emplace_back("gamma_model", *m);
    v.detail += "; countermodel of the over-approximated Γ_T ∧ ¬T found";
    return v;
  }
  v.outcome = Outcome::Unknown;
  v.detail += "; no countermodel within " + std::to_string(lim.max_model_size) +
              " elements";
  return v;
}

Verdict rewrite_alc_to_el(const TBox& t, const Limits& lim) {
  require_dialect(t, Dialect::ALC, "rewrite alc->el");
  if (t.empty()) return {Outcome::Rewritable, TBox{}, {}, "empty TBox"};
  if (check_dialect(t, Dialect::EL))
    return {Outcome::Rewritable, t, {}, "input is already an EL TBox"};

  if (!el_global_invariance(t, lim))
    return {Outcome::NotRewritable, std::nullopt, {},
            "not invariant under global EL equisimulation"};

  InvarianceResult pp = product_preservation(t, lim);
  switch (pp.value) {
    case Tri::False:
      return {Outcome::NotRewritable, std::nullopt, std::move(pp.witnesses),
              "invariant under ~gEL but not preserved under binary products; " + pp.detail};
    case Tri::Unknown:
      return {Outcome::Unknown, std::nullopt, {},
              "invariant under ~gEL; product preservation undecided: " + pp.detail};
    case Tri::True:
      return {Outcome::Rewritable, std::nullopt, {},
              "invariant under ~gEL and preserved under products (" + pp.detail +
                  "); no rewriting is constructed"};
  }
  return {Outcome::Unknown, std::nullopt, {}, "unreachable"};
}

}  // namespace dlex
