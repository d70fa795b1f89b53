#include "dlex/model_search.hpp"

#include <map>
#include <unordered_map>

#include "dlex/sat.hpp"

namespace dlex {

namespace {

class Encoder {
 public:
  Encoder(const BooleanTBox& phi, int n) : phi_(phi), n_(n), sig_(signature_of(phi)) {
    true_var_ = sat_.new_var();
    sat_.add_unit(SatSolver::pos(true_var_));
    for (const auto& a : sig_.concept_names) {
      auto& v = concept_vars_[a];
      for (int d = 0; d < n_; ++d) v.push_back(sat_.new_var());
    }
    for (const auto& r : sig_.role_names) {
      auto& m = role_vars_[r];
      m.assign(n_, std::vector<int>(n_));
      for (int d = 0; d < n_; ++d)
        for (int e = 0; e < n_; ++e) m[d][e] = sat_.new_var();
    }
    for (const auto& a : sig_.individual_names) {
      auto& v = nominal_vars_[a];
      std::vector<int> lits;
      for (int d = 0; d < n_; ++d) {
        v.push_back(sat_.new_var());
        lits.push_back(SatSolver::pos(v.back()));
      }
      sat_.add_clause(lits);  // assigned somewhere
      for (int d = 0; d < n_; ++d)
        for (int e = d + 1; e < n_; ++e)
          sat_.add_clause({SatSolver::neg(v[d]), SatSolver::neg(v[e])});
    }
  }

  std::optional<Interpretation> run() {
    sat_.add_unit(formula_lit(phi_));
    auto model = sat_.solve();
    if (!model) return std::nullopt;
    Interpretation I;
    for (int d = 0; d < n_; ++d) I.add_element("e" + std::to_string(d));
    for (const auto& a : sig_.concept_names) {
      I.declare_concept(a);
      for (int d = 0; d < n_; ++d)
        if ((*model)[concept_vars_[a][d]]) I.set_concept(a, I.domain()[d]);
    }
    for (const auto& r : sig_.role_names) {
      I.declare_role(r);
      for (int d = 0; d < n_; ++d)
        for (int e = 0; e < n_; ++e)
          if ((*model)[role_vars_[r][d][e]]) I.add_role_edge(r, I.domain()[d], I.domain()[e]);
    }
    for (const auto& a : sig_.individual_names)
      for (int d = 0; d < n_; ++d)
        if ((*model)[nominal_vars_[a][d]]) I.assign_individual(a, I.domain()[d]);
    return I;
  }

 private:
  int true_lit() const { return SatSolver::pos(true_var_); }
  int false_lit() const { return SatSolver::neg(true_var_); }

  int edge_lit(const Role& r, int d, int e) {
    const auto& m = role_vars_.at(r.name);
    return SatSolver::pos(r.inverted ? m[e][d] : m[d][e]);
  }

  // Literal per element for the truth of a concept.
  const std::vector<int>& concept_lits(const Concept& c) {
    auto it = concept_memo_.find(c);
    if (it != concept_memo_.end()) return it->second;
    std::vector<int> lits(n_);
    switch (c.kind()) {
      case ConceptKind::Top:
        for (int d = 0; d < n_; ++d) lits[d] = true_lit();
        break;
      case ConceptKind::Bot:
        for (int d = 0; d < n_; ++d) lits[d] = false_lit();
        break;
      case ConceptKind::Name:
        for (int d = 0; d < n_; ++d) lits[d] = SatSolver::pos(concept_vars_.at(c.label())[d]);
        break;
      case ConceptKind::Nominal:
        for (int d = 0; d < n_; ++d) lits[d] = SatSolver::pos(nominal_vars_.at(c.label())[d]);
        break;
      case ConceptKind::Not: {
        auto inner = concept_lits(c.child());
        for (int d = 0; d < n_; ++d) lits[d] = SatSolver::negate(inner[d]);
        break;
      }
      case ConceptKind::And:
      case ConceptKind::Or: {
        auto l = concept_lits(c.lhs());
        auto r = concept_lits(c.rhs());
        for (int d = 0; d < n_; ++d) {
          int v = sat_.new_var();
          if (c.kind() == ConceptKind::And)
            sat_.add_iff_and(SatSolver::pos(v), {l[d], r[d]});
          else
            sat_.add_iff_or(SatSolver::pos(v), {l[d], r[d]});
          lits[d] = SatSolver::pos(v);
        }
        break;
      }
      case ConceptKind::Exists:
      case ConceptKind::AtLeast:
      case ConceptKind::AtMost: {
        auto inner = concept_lits(c.child());
        unsigned k = c.kind() == ConceptKind::Exists ? 1 : c.bound();
        for (int d = 0; d < n_; ++d) {
          std::vector<int> hits;  // edge ∧ member, per potential successor
          for (int e = 0; e < n_; ++e) {
            int y = sat_.new_var();
            sat_.add_iff_and(SatSolver::pos(y), {edge_lit(c.role(), d, e), inner[e]});
            hits.push_back(SatSolver::pos(y));
          }
          if (c.kind() == ConceptKind::AtMost)
            lits[d] = at_most_lit(hits, k);
          else
            lits[d] = at_least_lit(hits, k);
        }
        break;
      }
      case ConceptKind::Forall: {
        auto inner = concept_lits(c.child());
        for (int d = 0; d < n_; ++d) {
          std::vector<int> conds;
          for (int e = 0; e < n_; ++e) {
            int z = sat_.new_var();
            sat_.add_iff_or(SatSolver::pos(z),
                            {SatSolver::negate(edge_lit(c.role(), d, e)), inner[e]});
            conds.push_back(SatSolver::pos(z));
          }
          int v = sat_.new_var();
          sat_.add_iff_and(SatSolver::pos(v), conds);
          lits[d] = SatSolver::pos(v);
        }
        break;
      }
    }
    return concept_memo_.emplace(c, std::move(lits)).first->second;
  }

  // Sequential counter: s[i][j] = "at least j+1 of xs[0..i] are true".
  int at_least_lit(const std::vector<int>& xs, unsigned k) {
    if (k == 0) return true_lit();
    if (k > xs.size()) return false_lit();
    std::vector<std::vector<int>> s(xs.size(), std::vector<int>(k));
    for (size_t i = 0; i < xs.size(); ++i) {
      for (unsigned j = 0; j < k; ++j) {
        int v = sat_.new_var();
        s[i][j] = SatSolver::pos(v);
        if (i == 0) {
          if (j == 0)
            sat_.add_iff_and(s[i][j], {xs[0]});
          else
            sat_.add_iff_and(s[i][j], {false_lit()});
        } else if (j == 0) {
          sat_.add_iff_or(s[i][j], {s[i - 1][0], xs[i]});
        } else {
          int t = sat_.new_var();
          sat_.add_iff_and(SatSolver::pos(t), {s[i - 1][j - 1], xs[i]});
          sat_.add_iff_or(s[i][j], {s[i - 1][j], SatSolver::pos(t)});
        }
      }
    }
    return s.back()[k - 1];
  }

  int at_most_lit(const std::vector<int>& xs, unsigned k) {
    return SatSolver::negate(at_least_lit(xs, k + 1));
  }

  int inclusion_lit(const ConceptInclusion& ci) {
    auto key = std::make_pair(ci.lhs, ci.rhs);
    auto it = ci_memo_.find(key);
    if (it != ci_memo_.end()) return it->second;
    auto l = concept_lits(ci.lhs);
    auto r = concept_lits(ci.rhs);
    std::vector<int> conds;
    for (int d = 0; d < n_; ++d) {
      int z = sat_.new_var();
      sat_.add_iff_or(SatSolver::pos(z), {SatSolver::negate(l[d]), r[d]});
      conds.push_back(SatSolver::pos(z));
    }
    int v = sat_.new_var();
    sat_.add_iff_and(SatSolver::pos(v), conds);
    ci_memo_.emplace(key, SatSolver::pos(v));
    return SatSolver::pos(v);
  }

  int formula_lit(const BooleanTBox& b) {
    switch (b.kind()) {
      case BooleanTBox::Kind::Atom:
        return inclusion_lit(b.ci());
      case BooleanTBox::Kind::Not:
        return SatSolver::negate(formula_lit(b.child()));
      case BooleanTBox::Kind::And:
      case BooleanTBox::Kind::Or: {
        int l = formula_lit(b.lhs());
        int r = formula_lit(b.rhs());
        int v = sat_.new_var();
        if (b.kind() == BooleanTBox::Kind::And)
          sat_.add_iff_and(SatSolver::pos(v), {l, r});
        else
          sat_.add_iff_or(SatSolver::pos(v), {l, r});
        return SatSolver::pos(v);
      }
    }
    return false_lit();
  }

  const BooleanTBox& phi_;
  int n_;
  Signature sig_;
  SatSolver sat_;
  int true_var_;
  std::map<std::string, std::vector<int>> concept_vars_;
  std::map<std::string, std::vector<std::vector<int>>> role_vars_;
  std::map<std::string, std::vector<int>> nominal_vars_;
  std::unordered_map<Concept, std::vector<int>, ConceptHash> concept_memo_;
  std::map<std::pair<Concept, Concept>, int> ci_memo_;
};

}  // namespace

std::optional<Interpretation> bounded_model_search(const BooleanTBox& phi, int max_size) {
  for (int n = 1; n <= max_size; ++n) {
    Encoder enc(phi, n);
    if (auto m = enc.run()) return m;
  }
  return std::nullopt;
}

std::optional<Interpretation> bounded_model_search(const TBox& t, int max_size) {
  return bounded_model_search(BooleanTBox::from_tbox(t), max_size);
}

}  // namespace dlex
