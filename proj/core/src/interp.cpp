#include "dlex/interp.hpp"

#include <algorithm>
#include <queue>

#include <json.hpp>

namespace dlex {

int Interpretation::add_element(const std::string& id) {
  auto [it, fresh] = index_.emplace(id, static_cast<int>(domain_.size()));
  if (!fresh) throw SemanticError("duplicate element id '" + id + "'");
  domain_.push_back(id);
  for (auto& [name, ext] : concepts_) {
    DynBitset grown(domain_.size());
    for (size_t k = 0; k + 1 < domain_.size(); ++k) grown.set(k, ext.test(k));
    ext = std::move(grown);
  }
  return it->second;
}

int Interpretation::require(const std::string& id) const {
  int i = index_of(id);
  if (i < 0) throw SemanticError("element id '" + id + "' not in domain");
  return i;
}

void Interpretation::declare_concept(const std::string& name) {
  concepts_.try_emplace(name, DynBitset(domain_.size()));
}

void Interpretation::set_concept(const std::string& name, const std::string& id) {
  declare_concept(name);
  concepts_.at(name).set(static_cast<size_t>(require(id)));
}

void Interpretation::declare_role(const std::string& role) { roles_.try_emplace(role); }

void Interpretation::add_role_edge(const std::string& role, const std::string& from,
                                   const std::string& to) {
  auto& edges = roles_[role];
  std::pair<int, int> e{require(from), require(to)};
  auto it = std::lower_bound(edges.begin(), edges.end(), e);
  if (it == edges.end() || *it != e) edges.insert(it, e);
}

void Interpretation::assign_individual(const std::string& name, const std::string& id) {
  int i = require(id);
  auto [it, fresh] = individuals_.emplace(name, i);
  if (!fresh && it->second != i)
    throw SemanticError("conflicting assignment for individual '" + name + "'");
}

int Interpretation::index_of(const std::string& id) const {
  auto it = index_.find(id);
  return it == index_.end() ? -1 : it->second;
}

bool Interpretation::in_concept(const std::string& name, int elem) const {
  auto it = concepts_.find(name);
  return it != concepts_.end() && it->second.test(static_cast<size_t>(elem));
}

std::vector<std::vector<int>> Interpretation::adjacency(const Role& r) const {
  std::vector<std::vector<int>> adj(domain_.size());
  auto it = roles_.find(r.name);
  if (it == roles_.end()) return adj;
  for (auto [from, to] : it->second) {
    if (r.inverted)
      adj[to].push_back(from);
    else
      adj[from].push_back(to);
  }
  return adj;
}

void Interpretation::validate() const {
  if (domain_.empty()) throw SemanticError("interpretation domain must be non-empty");
}

namespace {

DynBitset eval(const Interpretation& I, const Concept& c) {
  const size_t n = I.size();
  switch (c.kind()) {
    case ConceptKind::Top:
      return DynBitset(n, true);
    case ConceptKind::Bot:
      return DynBitset(n);
    case ConceptKind::Name: {
      auto it = I.concepts().find(c.label());
      return it == I.concepts().end() ? DynBitset(n) : it->second;
    }
    case ConceptKind::Nominal: {
      auto it = I.individuals().find(c.label());
      if (it == I.individuals().end())
        throw SemanticError("nominal '" + c.label() + "' is not assigned");
      DynBitset s(n);
      s.set(static_cast<size_t>(it->second));
      return s;
    }
    case ConceptKind::Not: {
      DynBitset s = eval(I, c.child());
      s.flip_all();
      return s;
    }
    case ConceptKind::And: {
      DynBitset s = eval(I, c.lhs());
      s &= eval(I, c.rhs());
      return s;
    }
    case ConceptKind::Or: {
      DynBitset s = eval(I, c.lhs());
      s |= eval(I, c.rhs());
      return s;
    }
    case ConceptKind::Exists:
    case ConceptKind::Forall:
    case ConceptKind::AtLeast:
    case ConceptKind::AtMost:
      break;
  }
  DynBitset inner = eval(I, c.child());
  auto adj = I.adjacency(c.role());
  DynBitset s(n);
  for (size_t d = 0; d < n; ++d) {
    size_t hits = 0;
    bool all = true;
    for (int e : adj[d]) {
      if (inner.test(static_cast<size_t>(e)))
        ++hits;
      else
        all = false;
    }
    switch (c.kind()) {
      case ConceptKind::Exists:
        s.set(d, hits >= 1);
        break;
      case ConceptKind::Forall:
        s.set(d, all);
        break;
      case ConceptKind::AtLeast:
        s.set(d, hits >= c.bound());
        break;
      case ConceptKind::AtMost:
        s.set(d, hits <= c.bound());
        break;
      default:
        break;
    }
  }
  return s;
}

}  // namespace

DynBitset extension(const Interpretation& i, const Concept& c) { return eval(i, c); }

std::vector<std::string> extension_ids(const Interpretation& i, const Concept& c) {
  DynBitset s = eval(i, c);
  std::vector<std::string> out;
  for (size_t k = 0; k < i.size(); ++k)
    if (s.test(k)) out.push_back(i.domain()[k]);
  return out;
}

bool satisfies(const Interpretation& i, const ConceptInclusion& ci) {
  return eval(i, ci.lhs).subset_of(eval(i, ci.rhs));
}

bool satisfies(const Interpretation& i, const TBox& t) {
  for (const auto& ci : t.inclusions())
    if (!satisfies(i, ci)) return false;
  return true;
}

bool satisfies(const Interpretation& i, const BooleanTBox& b) {
  switch (b.kind()) {
    case BooleanTBox::Kind::Atom:
      return satisfies(i, b.ci());
    case BooleanTBox::Kind::Not:
      return !satisfies(i, b.child());
    case BooleanTBox::Kind::And:
      return satisfies(i, b.lhs()) && satisfies(i, b.rhs());
    case BooleanTBox::Kind::Or:
      return satisfies(i, b.lhs()) || satisfies(i, b.rhs());
  }
  return false;
}

namespace {

std::string pair_id(const std::string& a, const std::string& b) {
  return "(" + a + "," + b + ")";
}

}  // namespace

Interpretation product(const Interpretation& a, const Interpretation& b) {
  Interpretation p;
  for (const auto& d1 : a.domain())
    for (const auto& d2 : b.domain()) p.add_element(pair_id(d1, d2));

  std::vector<std::string> names;
  for (const auto& [n, _] : a.concepts()) names.push_back(n);
  for (const auto& [n, _] : b.concepts()) names.push_back(n);
  std::sort(names.begin(), names.end());
  names.erase(std::unique(names.begin(), names.end()), names.end());
  for (const auto& n : names) {
    p.declare_concept(n);
    for (size_t i = 0; i < a.size(); ++i) {
      if (!a.in_concept(n, static_cast<int>(i))) continue;
      for (size_t j = 0; j < b.size(); ++j)
        if (b.in_concept(n, static_cast<int>(j)))
          p.set_concept(n, pair_id(a.domain()[i], b.domain()[j]));
    }
  }

  std::vector<std::string> rns;
  for (const auto& [r, _] : a.roles()) rns.push_back(r);
  for (const auto& [r, _] : b.roles()) rns.push_back(r);
  std::sort(rns.begin(), rns.end());
  rns.erase(std::unique(rns.begin(), rns.end()), rns.end());
  for (const auto& r : rns) {
    p.declare_role(r);
    auto ita = a.roles().find(r);
    auto itb = b.roles().find(r);
    if (ita == a.roles().end() || itb == b.roles().end()) continue;
    for (auto [f1, t1] : ita->second)
      for (auto [f2, t2] : itb->second)
        p.add_role_edge(r, pair_id(a.domain()[f1], b.domain()[f2]),
                        pair_id(a.domain()[t1], b.domain()[t2]));
  }
  return p;
}

Interpretation product(const std::vector<Interpretation>& is) {
  if (is.empty()) throw SemanticError("product of an empty family");
  Interpretation p = is[0];
  for (size_t i = 1; i < is.size(); ++i) p = product(p, is[i]);
  return p;
}

Interpretation disjoint_union(const std::vector<Interpretation>& is) {
  if (is.empty()) throw SemanticError("disjoint union of an empty family");
  Interpretation u;
  auto tag = [](size_t i, const std::string& id) { return std::to_string(i) + ":" + id; };
  for (size_t i = 0; i < is.size(); ++i)
    for (const auto& d : is[i].domain()) u.add_element(tag(i, d));
  for (size_t i = 0; i < is.size(); ++i) {
    for (const auto& [n, ext] : is[i].concepts()) {
      u.declare_concept(n);
      for (size_t k = 0; k < is[i].size(); ++k)
        if (ext.test(k)) u.set_concept(n, tag(i, is[i].domain()[k]));
    }
    for (const auto& [r, edges] : is[i].roles()) {
      u.declare_role(r);
      for (auto [f, t] : edges)
        u.add_role_edge(r, tag(i, is[i].domain()[f]), tag(i, is[i].domain()[t]));
    }
    for (const auto& [a, d] : is[i].individuals()) {
      if (u.individuals().count(a))
        throw SemanticError("individual '" + a +
                            "' assigned by two inputs; disjoint union undefined "
                            "(use nominal-du)");
      u.assign_individual(a, tag(i, is[i].domain()[d]));
    }
  }
  return u;
}

Interpretation union_of(const std::vector<Interpretation>& is) {
  if (is.empty()) throw SemanticError("union of an empty family");
  Interpretation u;
  for (const auto& i : is)
    for (const auto& d : i.domain())
      if (u.index_of(d) < 0) u.add_element(d);
  for (const auto& i : is) {
    for (const auto& [n, ext] : i.concepts()) {
      u.declare_concept(n);
      for (size_t k = 0; k < i.size(); ++k)
        if (ext.test(k)) u.set_concept(n, i.domain()[k]);
    }
    for (const auto& [r, edges] : i.roles()) {
      u.declare_role(r);
      for (auto [f, t] : edges) u.add_role_edge(r, i.domain()[f], i.domain()[t]);
    }
    for (const auto& [a, d] : i.individuals()) u.assign_individual(a, i.domain()[d]);
  }
  return u;
}

bool compatible(const std::vector<Interpretation>& is, const Signature& sig) {
  std::vector<Concept> basics = basic_concepts(sig);
  std::vector<std::map<const Concept*, DynBitset>> ext(is.size());
  auto member = [&](size_t i, const Concept& b, int elem) {
    auto& cache = ext[i];
    auto it = cache.find(&b);
    if (it == cache.end()) it = cache.emplace(&b, extension(is[i], b)).first;
    return it->second.test(static_cast<size_t>(elem));
  };
  for (size_t i = 0; i < is.size(); ++i) {
    for (size_t j = i + 1; j < is.size(); ++j) {
      for (const auto& id : is[i].domain()) {
        int di = is[i].index_of(id);
        int dj = is[j].index_of(id);
        if (dj < 0) continue;
        for (const auto& b1 : basics) {
          if (!member(i, b1, di)) continue;
          for (const auto& b2 : basics) {
            if (!member(j, b2, dj)) continue;
            bool witnessed = false;
            Concept both = Concept::conj(b1, b2);
            for (const auto& l : is) {
              if (extension(l, both).any()) {
                witnessed = true;
                break;
              }
            }
            if (!witnessed) return false;
          }
        }
      }
    }
  }
  return true;
}

std::vector<ComponentInterpretation> components(const Interpretation& i) {
  const size_t n = i.size();
  std::vector<std::vector<int>> nbr(n);
  for (const auto& [r, edges] : i.roles()) {
    for (auto [f, t] : edges) {
      nbr[f].push_back(t);
      nbr[t].push_back(f);
    }
  }
  std::vector<int> comp(n, -1);
  int ncomp = 0;
  for (size_t s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    std::queue<int> q;
    q.push(static_cast<int>(s));
    comp[s] = ncomp;
    while (!q.empty()) {
      int d = q.front();
      q.pop();
      for (int e : nbr[d]) {
        if (comp[e] < 0) {
          comp[e] = ncomp;
          q.push(e);
        }
      }
    }
    ++ncomp;
  }

  std::vector<ComponentInterpretation> out(ncomp);
  for (size_t d = 0; d < n; ++d) out[comp[d]].base.add_element(i.domain()[d]);
  for (const auto& [name, ext] : i.concepts()) {
    for (auto& c : out) c.base.declare_concept(name);
    for (size_t d = 0; d < n; ++d)
      if (ext.test(d)) out[comp[d]].base.set_concept(name, i.domain()[d]);
  }
  for (const auto& [r, edges] : i.roles()) {
    for (auto& c : out) c.base.declare_role(r);
    for (auto [f, t] : edges)
      out[comp[f]].base.add_role_edge(r, i.domain()[f], i.domain()[t]);
  }
  for (const auto& [a, d] : i.individuals()) {
    out[comp[d]].base.assign_individual(a, i.domain()[d]);
    out[comp[d]].nom.push_back(a);
  }
  return out;
}

Interpretation nominal_disjoint_union(const std::vector<ComponentInterpretation>& js) {
  if (js.empty()) throw SemanticError("nominal disjoint union of an empty family");
  std::map<std::string, size_t> owner;
  for (size_t i = 0; i < js.size(); ++i) {
    for (const auto& a : js[i].nom) {
      if (!owner.emplace(a, i).second)
        throw SemanticError("Nom sets overlap on individual '" + a + "'");
      if (!js[i].base.individuals().count(a))
        throw SemanticError("Nom(J" + std::to_string(i) + ") lists '" + a +
                            "' but the component does not assign it");
    }
  }
  std::vector<Interpretation> bases;
  for (size_t i = 0; i < js.size(); ++i) {
    for (const auto& [a, _] : js[i].base.individuals())
      if (!owner.count(a))
        throw SemanticError("individual '" + a + "' is not covered by any Nom set");
    bases.push_back(js[i].base);
  }
  return disjoint_union(bases);
}

std::string to_text(const Interpretation& i) {
  nlohmann::json j;
  j["domain"] = i.domain();
  nlohmann::json cs = nlohmann::json::object();
  for (const auto& [n, ext] : i.concepts()) {
    nlohmann::json arr = nlohmann::json::array();
    for (size_t k = 0; k < i.size(); ++k)
      if (ext.test(k)) arr.push_back(i.domain()[k]);
    cs[n] = arr;
  }
  j["concepts"] = cs;
  nlohmann::json rs = nlohmann::json::object();
  for (const auto& [r, edges] : i.roles()) {
    nlohmann::json arr = nlohmann::json::array();
    for (auto [f, t] : edges)
      arr.push_back(nlohmann::json::array({i.domain()[f], i.domain()[t]}));
    rs[r] = arr;
  }
  j["roles"] = rs;
  nlohmann::json ind = nlohmann::json::object();
  for (const auto& [a, d] : i.individuals()) ind[a] = i.domain()[d];
  j["individuals"] = ind;
  return j.dump(2) + "\n";
}

Interpretation parse_interpretation(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw SemanticError(std::string("bad interpretation file: ") + e.what());
  }
  Interpretation i;
  if (!j.contains("domain") || !j["domain"].is_array())
    throw SemanticError("interpretation file needs a 'domain' array");
  for (const auto& d : j["domain"]) i.add_element(d.get<std::string>());
  if (j.contains("concepts"))
    for (auto& [name, arr] : j["concepts"].items()) {
      i.declare_concept(name);
      for (const auto& d : arr) i.set_concept(name, d.get<std::string>());
    }
  if (j.contains("roles"))
    for (auto& [role, arr] : j["roles"].items()) {
      i.declare_role(role);
      for (const auto& e : arr)
        i.add_role_edge(role, e.at(0).get<std::string>(), e.at(1).get<std::string>());
    }
  if (j.contains("individuals"))
    for (auto& [a, d] : j["individuals"].items())
      i.assign_individual(a, d.get<std::string>());
  i.validate();
  return i;
}

}  // namespace dlex
