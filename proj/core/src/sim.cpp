#include "dlex/sim.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace dlex {

const char* flavor_name(SimFlavor f) {
  switch (f) {
    case SimFlavor::Bisim: return "bisim";
    case SimFlavor::CountingBisim: return "qbisim";
    case SimFlavor::ElSim: return "el";
    case SimFlavor::DlLiteSim: return "dllite";
  }
  return "?";
}

bool Relation::contains(const std::string& a, const std::string& b) const {
  return std::binary_search(pairs.begin(), pairs.end(), std::make_pair(a, b));
}

namespace {

std::vector<std::string> joint_names(const Interpretation& a, const Interpretation& b) {
  std::vector<std::string> ns;
  for (const auto& [n, _] : a.concepts()) ns.push_back(n);
  for (const auto& [n, _] : b.concepts()) ns.push_back(n);
  std::sort(ns.begin(), ns.end());
  ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
  return ns;
}

std::vector<std::string> joint_roles(const Interpretation& a, const Interpretation& b) {
  std::vector<std::string> rs;
  for (const auto& [r, _] : a.roles()) rs.push_back(r);
  for (const auto& [r, _] : b.roles()) rs.push_back(r);
  std::sort(rs.begin(), rs.end());
  rs.erase(std::unique(rs.begin(), rs.end()), rs.end());
  return rs;
}

// Dense per-interpretation data for the fixpoint loops.
struct Side {
  std::vector<DynBitset> atoms;     // concept-name signature per element
  std::vector<DynBitset> nominals;  // nominal signature per element
  // successor lists per role axis (role names, then inverses if enabled)
  std::vector<std::vector<std::vector<int>>> succ;
};

Side prep(const Interpretation& I, const std::vector<std::string>& names,
          const std::vector<std::string>& inds, const std::vector<Role>& axes) {
  Side s;
  const size_t n = I.size();
  s.atoms.assign(n, DynBitset(names.size()));
  for (size_t a = 0; a < names.size(); ++a) {
    auto it = I.concepts().find(names[a]);
    if (it == I.concepts().end()) continue;
    for (size_t d = 0; d < n; ++d)
      if (it->second.test(d)) s.atoms[d].set(a);
  }
  s.nominals.assign(n, DynBitset(inds.size()));
  for (size_t a = 0; a < inds.size(); ++a) {
    auto it = I.individuals().find(inds[a]);
    if (it == I.individuals().end()) continue;
    s.nominals[it->second].set(a);
  }
  for (const Role& r : axes) s.succ.push_back(I.adjacency(r));
  return s;
}

std::vector<Role> role_axes(const std::vector<std::string>& roles, bool inverse) {
  std::vector<Role> axes;
  for (const auto& r : roles) axes.emplace_back(r);
  if (inverse)
    for (const auto& r : roles) axes.emplace_back(r, true);
  return axes;
}

// Pair-removal greatest fixpoint for [Forth]/[Back] style conditions.
std::vector<std::vector<char>> bisim_fixpoint(const Side& s1, const Side& s2, bool back,
                                              bool atoms_equal,
                                              const std::vector<DynBitset>& nom1,
                                              const std::vector<DynBitset>& nom2,
                                              bool use_nominals) {
  const size_t n1 = s1.atoms.size(), n2 = s2.atoms.size();
  std::vector<std::vector<char>> rel(n1, std::vector<char>(n2, 0));
  for (size_t d1 = 0; d1 < n1; ++d1)
    for (size_t d2 = 0; d2 < n2; ++d2) {
      bool ok = atoms_equal ? s1.atoms[d1] == s2.atoms[d2]
                            : s1.atoms[d1].subset_of(s2.atoms[d2]);
      if (ok && use_nominals) ok = nom1[d1] == nom2[d2];
      rel[d1][d2] = ok;
    }

  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t d1 = 0; d1 < n1; ++d1) {
      for (size_t d2 = 0; d2 < n2; ++d2) {
        if (!rel[d1][d2]) continue;
        bool ok = true;
        for (size_t ax = 0; ax < s1.succ.size() && ok; ++ax) {
          for (int e1 : s1.succ[ax][d1]) {
            bool found = false;
            for (int e2 : s2.succ[ax][d2])
              if (rel[e1][e2]) {
                found = true;
                break;
              }
            if (!found) {
              ok = false;
              break;
            }
          }
          if (ok && back) {
            for (int e2 : s2.succ[ax][d2]) {
              bool found = false;
              for (int e1 : s1.succ[ax][d1])
                if (rel[e1][e2]) {
                  found = true;
                  break;
                }
              if (!found) {
                ok = false;
                break;
              }
            }
          }
        }
        if (!ok) {
          rel[d1][d2] = 0;
          changed = true;
        }
      }
    }
  }
  return rel;
}

// Counting bisimilarity on the disjoint union of both sides by
// partition-count refinement: two elements stay in one block iff they
// carry the same atoms and, per role axis and current block, equal
// numbers of successors in that block.
std::vector<std::vector<char>> counting_fixpoint(const Side& s1, const Side& s2,
                                                 bool use_nominals) {
  const size_t n1 = s1.atoms.size(), n2 = s2.atoms.size();
  const size_t n = n1 + n2;
  auto atoms = [&](size_t d) -> const DynBitset& {
    return d < n1 ? s1.atoms[d] : s2.atoms[d - n1];
  };
  auto noms = [&](size_t d) -> const DynBitset& {
    return d < n1 ? s1.nominals[d] : s2.nominals[d - n1];
  };
  auto succs = [&](size_t ax, size_t d) -> const std::vector<int>& {
    return d < n1 ? s1.succ[ax][d] : s2.succ[ax][d - n1];
  };
  auto shift = [&](size_t d, int e) -> size_t {
    return d < n1 ? static_cast<size_t>(e) : static_cast<size_t>(e) + n1;
  };

  std::vector<int> block(n);
  {
    std::map<std::pair<DynBitset, DynBitset>, int> ids;
    for (size_t d = 0; d < n; ++d) {
      auto key = std::make_pair(atoms(d), use_nominals ? noms(d) : DynBitset());
      auto [it, _] = ids.emplace(key, static_cast<int>(ids.size()));
      block[d] = it->second;
    }
  }

  using CountKey = std::vector<std::tuple<size_t, int, int>>;  // (axis, block, count)
  size_t nblocks = 0;
  while (true) {
    std::map<std::pair<int, CountKey>, int> ids;
    std::vector<int> next(n);
    for (size_t d = 0; d < n; ++d) {
      std::map<std::pair<size_t, int>, int> counts;
      for (size_t ax = 0; ax < s1.succ.size(); ++ax)
        for (int e : succs(ax, d)) counts[{ax, block[shift(d, e)]}]++;
      CountKey key;
      for (auto& [k, c] : counts) key.emplace_back(k.first, k.second, c);
      auto [it, _] = ids.emplace(std::make_pair(block[d], key), static_cast<int>(ids.size()));
      next[d] = it->second;
    }
    block = next;
    if (ids.size() == nblocks) break;
    nblocks = ids.size();
  }

  std::vector<std::vector<char>> rel(n1, std::vector<char>(n2, 0));
  for (size_t d1 = 0; d1 < n1; ++d1)
    for (size_t d2 = 0; d2 < n2; ++d2) rel[d1][d2] = block[d1] == block[n1 + d2];
  return rel;
}

std::vector<std::vector<char>> dllite_pass(const Side& s1, const Side& s2) {
  const size_t n1 = s1.atoms.size(), n2 = s2.atoms.size();
  std::vector<std::vector<char>> rel(n1, std::vector<char>(n2, 0));
  for (size_t d1 = 0; d1 < n1; ++d1)
    for (size_t d2 = 0; d2 < n2; ++d2) {
      bool ok = s1.atoms[d1].subset_of(s2.atoms[d2]);
      for (size_t ax = 0; ax < s1.succ.size() && ok; ++ax)
        if (!s1.succ[ax][d1].empty() && s2.succ[ax][d2].empty()) ok = false;
      rel[d1][d2] = ok;
    }
  return rel;
}

std::vector<std::vector<char>> compute(const Interpretation& i1, const Interpretation& i2,
                                       RelationNotion notion) {
  auto names = joint_names(i1, i2);
  auto roles = joint_roles(i1, i2);
  std::vector<std::string> inds;
  if (notion.nominals) {
    for (const auto& [a, _] : i1.individuals()) inds.push_back(a);
    for (const auto& [a, _] : i2.individuals()) inds.push_back(a);
    std::sort(inds.begin(), inds.end());
    inds.erase(std::unique(inds.begin(), inds.end()), inds.end());
  }
  bool inverse = notion.inverse || notion.flavor == SimFlavor::DlLiteSim;
  if (notion.flavor == SimFlavor::ElSim) inverse = false;
  auto axes = role_axes(roles, inverse);
  Side s1 = prep(i1, names, inds, axes);
  Side s2 = prep(i2, names, inds, axes);

  switch (notion.flavor) {
    case SimFlavor::Bisim:
      return bisim_fixpoint(s1, s2, /*back=*/true, /*atoms_equal=*/true, s1.nominals,
                            s2.nominals, notion.nominals);
    case SimFlavor::CountingBisim:
      return counting_fixpoint(s1, s2, notion.nominals);
    case SimFlavor::ElSim:
      return bisim_fixpoint(s1, s2, /*back=*/false, /*atoms_equal=*/false, s1.nominals,
                            s2.nominals, false);
    case SimFlavor::DlLiteSim:
      return dllite_pass(s1, s2);
  }
  return {};
}

}  // namespace

Relation max_relation(const Interpretation& i1, const Interpretation& i2,
                      RelationNotion notion) {
  auto rel = compute(i1, i2, notion);
  Relation out;
  out.notion = notion;
  for (size_t d1 = 0; d1 < i1.size(); ++d1)
    for (size_t d2 = 0; d2 < i2.size(); ++d2)
      if (rel[d1][d2]) out.pairs.emplace_back(i1.domain()[d1], i2.domain()[d2]);
  std::sort(out.pairs.begin(), out.pairs.end());
  return out;
}

bool simulated(const Interpretation& i1, const std::string& d1, const Interpretation& i2,
               const std::string& d2, RelationNotion notion) {
  if (notion.flavor != SimFlavor::ElSim && notion.flavor != SimFlavor::DlLiteSim)
    throw SemanticError("simulated() expects a directed notion (el or dllite)");
  int a = i1.index_of(d1), b = i2.index_of(d2);
  if (a < 0 || b < 0) throw SemanticError("element not in domain");
  auto rel = compute(i1, i2, notion);
  return rel[a][b];
}

bool equisimilar(const Interpretation& i1, const std::string& d1, const Interpretation& i2,
                 const std::string& d2, RelationNotion notion) {
  if (notion.flavor == SimFlavor::ElSim || notion.flavor == SimFlavor::DlLiteSim)
    return simulated(i1, d1, i2, d2, notion) && simulated(i2, d2, i1, d1, notion);
  int a = i1.index_of(d1), b = i2.index_of(d2);
  if (a < 0 || b < 0) throw SemanticError("element not in domain");
  auto rel = compute(i1, i2, notion);
  return rel[a][b];
}

std::vector<DynBitset> realized_btypes(const Interpretation& i, const Signature& sig) {
  std::vector<Concept> basics = basic_concepts(sig);
  std::vector<DynBitset> ext;
  ext.reserve(basics.size());
  for (const auto& b : basics) ext.push_back(extension(i, b));
  std::vector<DynBitset> types;
  for (size_t d = 0; d < i.size(); ++d) {
    DynBitset t(basics.size());
    for (size_t k = 0; k < basics.size(); ++k)
      if (ext[k].test(d)) t.set(k);
    types.push_back(std::move(t));
  }
  std::sort(types.begin(), types.end());
  types.erase(std::unique(types.begin(), types.end()), types.end());
  return types;
}

bool globally_related(const Interpretation& i1, const Interpretation& i2,
                      RelationNotion notion) {
  if (notion.flavor == SimFlavor::DlLiteSim) {
    Signature sig = {joint_names(i1, i2), joint_roles(i1, i2), {}};
    return realized_btypes(i1, sig) == realized_btypes(i2, sig);
  }
  std::vector<std::vector<char>> rel;
  if (notion.flavor == SimFlavor::ElSim) {
    auto fwd = compute(i1, i2, notion);
    auto bwd = compute(i2, i1, notion);
    rel.assign(i1.size(), std::vector<char>(i2.size(), 0));
    for (size_t a = 0; a < i1.size(); ++a)
      for (size_t b = 0; b < i2.size(); ++b) rel[a][b] = fwd[a][b] && bwd[b][a];
  } else {
    rel = compute(i1, i2, notion);
  }
  for (size_t a = 0; a < i1.size(); ++a) {
    bool hit = false;
    for (size_t b = 0; b < i2.size() && !hit; ++b) hit = rel[a][b];
    if (!hit) return false;
  }
  for (size_t b = 0; b < i2.size(); ++b) {
    bool hit = false;
    for (size_t a = 0; a < i1.size() && !hit; ++a) hit = rel[a][b];
    if (!hit) return false;
  }
  return true;
}

}  // namespace dlex
