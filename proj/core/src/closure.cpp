#include "dlex/closure.hpp"

#include <algorithm>

namespace dlex {

ClosureTable::ClosureTable(const TBox& t, const std::vector<Concept>& extra,
                           const Limits& lim)
    : max_type_bits_(lim.max_type_bits) {
  positives_ = sub_closure_positives(t, extra);
  for (size_t i = 0; i < positives_.size(); ++i)
    index_.emplace(positives_[i], static_cast<int>(i));

  entries_.resize(positives_.size());
  depth_.resize(positives_.size());
  name_mask_ = DynBitset(positives_.size());
  for (size_t i = 0; i < positives_.size(); ++i) {
    const Concept& c = positives_[i];
    depth_[i] = c.role_depth();
    Entry& e = entries_[i];
    switch (c.kind()) {
      case ConceptKind::Top:
        e.kind = EKind::True;
        break;
      case ConceptKind::Bot:
        e.kind = EKind::False;
        break;
      case ConceptKind::Name:
        e.kind = EKind::Atom;
        name_mask_.set(i);
        free_.push_back(static_cast<int>(i));
        break;
      case ConceptKind::And:
      case ConceptKind::Or:
        e.kind = c.kind() == ConceptKind::And ? EKind::AndE : EKind::OrE;
        e.la = lit_of(c.lhs());
        e.lb = lit_of(c.rhs());
        break;
      case ConceptKind::Exists:
      case ConceptKind::Forall: {
        e.kind = EKind::Modal;
        free_.push_back(static_cast<int>(i));
        Modal m{static_cast<int>(i), c.role(), lit_of(c.child()),
                c.kind() == ConceptKind::Forall, depth_[i]};
        modal_.push_back(m);
        role_names_.push_back(c.role().name);
        break;
      }
      default:
        throw DialectError(
            "type machinery supports ALC/ALCI concepts only; number restrictions and "
            "nominals go through the bounded model finder");
    }
  }
  std::sort(role_names_.begin(), role_names_.end());
  role_names_.erase(std::unique(role_names_.begin(), role_names_.end()), role_names_.end());
}

int ClosureTable::index_of(const Concept& c) const {
  auto it = index_.find(c);
  return it == index_.end() ? -1 : it->second;
}

ClosureLit ClosureTable::lit_of(const Concept& c) const {
  bool pos = true;
  const Concept* p = &c;
  while (p->kind() == ConceptKind::Not) {
    pos = !pos;
    p = &p->child();
  }
  int idx = index_of(*p);
  if (idx < 0) throw SemanticError("concept not in closure: internal indexing error");
  return {idx, pos};
}

DynBitset ClosureTable::depth_mask(int m) const {
  DynBitset mask(size());
  for (size_t i = 0; i < size(); ++i)
    if (depth_[i] <= m) mask.set(i);
  return mask;
}

std::vector<ClosureTable::Obligation> ClosureTable::obligations(const DynBitset& type,
                                                                int bounded_depth) const {
  std::vector<Obligation> out;
  for (const Modal& m : modal_) {
    if (bounded_depth >= 0 && m.depth > bounded_depth) continue;
    bool present = type.test(static_cast<size_t>(m.idx));
    if (!m.is_forall && present) out.push_back({m.role, m.child});
    if (m.is_forall && !present)
      out.push_back({m.role, ClosureLit{m.child.idx, !m.child.positive}});
  }
  return out;
}

bool ClosureTable::coherent(const DynBitset& t1, const Role& r, const DynBitset& t2) const {
  return coherent_bounded(t1, -1, r, t2, -1);
}

bool ClosureTable::coherent_bounded(const DynBitset& t1, int m1, const Role& r,
                                    const DynBitset& t2, int m2) const {
  Role rinv = r.inverse();
  for (const Modal& m : modal_) {
    // Constraints imposed by t1 on its r-successors.
    if (m.role == r && (m1 < 0 || m.depth <= m1)) {
      bool present = t1.test(static_cast<size_t>(m.idx));
      if (m.is_forall && present && !member(t2, m.child)) return false;
      if (!m.is_forall && !present && member(t2, m.child)) return false;
    }
    // Constraints imposed by t2 on its r⁻-successors (i.e. on t1).
    if (m.role == rinv && (m2 < 0 || m.depth <= m2)) {
      bool present = t2.test(static_cast<size_t>(m.idx));
      if (m.is_forall && present && !member(t1, m.child)) return false;
      if (!m.is_forall && !present && member(t1, m.child)) return false;
    }
  }
  return true;
}

std::vector<DynBitset> ClosureTable::all_types() const {
  if (free_.size() > static_cast<size_t>(max_type_bits_))
    throw ResourceLimitError("type space needs " + std::to_string(free_.size()) +
                             " free bits, cap is " + std::to_string(max_type_bits_) +
                             " (DLEX_MAX_TYPE_BITS)");
  std::vector<DynBitset> out;
  const size_t n = free_.size();
  out.reserve(static_cast<size_t>(1) << n);
  for (size_t word = 0; word < (static_cast<size_t>(1) << n); ++word) {
    DynBitset t(size());
    for (size_t k = 0; k < n; ++k)
      if ((word >> k) & 1) t.set(static_cast<size_t>(free_[k]));
    // Determined entries, children first (positives are in post-order).
    for (size_t i = 0; i < size(); ++i) {
      const Entry& e = entries_[i];
      switch (e.kind) {
        case EKind::True:
          t.set(i);
          break;
        case EKind::AndE:
          t.set(i, member(t, e.la) && member(t, e.lb));
          break;
        case EKind::OrE:
          t.set(i, member(t, e.la) || member(t, e.lb));
          break;
        default:
          break;
      }
    }
    out.push_back(std::move(t));
  }
  return out;
}

std::vector<std::pair<ClosureLit, ClosureLit>> ClosureTable::ci_lits(const TBox& t) const {
  std::vector<std::pair<ClosureLit, ClosureLit>> out;
  for (const auto& ci : t.inclusions()) out.emplace_back(lit_of(ci.lhs), lit_of(ci.rhs));
  return out;
}

bool ClosureTable::respects(const DynBitset& type,
                            const std::vector<std::pair<ClosureLit, ClosureLit>>& cis) const {
  for (const auto& [l, r] : cis)
    if (member(type, l) && !member(type, r)) return false;
  return true;
}

namespace {

// Literal constraints a type imposes on its r-successors, as must-be-set /
// must-be-clear masks over the closure index space.
struct EdgeMask {
  DynBitset one, zero;

  bool admits(const DynBitset& u) const { return one.subset_of(u) && !zero.intersects(u); }
};

}  // namespace

std::vector<DynBitset> eliminate_types(const ClosureTable& ct, std::vector<DynBitset> types) {
  const size_t n = types.size();
  if (n == 0) return types;

  // Directed role axes: every role name forward and inverted.
  std::vector<Role> axes;
  for (const auto& r : ct.role_names()) {
    axes.emplace_back(r);
    axes.emplace_back(r, true);
  }
  auto axis_of = [&](const Role& r) {
    for (size_t a = 0; a < axes.size(); ++a)
      if (axes[a] == r) return a;
    return axes.size();
  };

  // masks[a][i]: what types[i] demands of an axes[a]-successor.
  std::vector<std::vector<EdgeMask>> masks(
      axes.size(), std::vector<EdgeMask>(n, {DynBitset(ct.size()), DynBitset(ct.size())}));
  for (const auto& m : ct.modal_nodes()) {
    size_t fwd = axis_of(m.role);
    for (size_t i = 0; i < n; ++i) {
      bool present = types[i].test(static_cast<size_t>(m.idx));
      if (m.is_forall && present) {
        auto& em = masks[fwd][i];
        (m.child.positive ? em.one : em.zero).set(static_cast<size_t>(m.child.idx));
      } else if (!m.is_forall && !present) {
        auto& em = masks[fwd][i];
        (m.child.positive ? em.zero : em.one).set(static_cast<size_t>(m.child.idx));
      }
    }
  }
  // t ⇝_r u iff masks[r][t] admits u and masks[r⁻][u] admits t.
  auto edge_ok = [&](size_t a, size_t i, size_t j) {
    return masks[a][i].admits(types[j]) && masks[a ^ 1][j].admits(types[i]);
  };

  struct Ob {
    size_t axis;
    ClosureLit child;
    int witness = -1;
  };
  std::vector<std::vector<Ob>> obs(n);
  for (size_t i = 0; i < n; ++i)
    for (const auto& o : ct.obligations(types[i]))
      obs[i].push_back({axis_of(o.role), o.child, -1});

  std::vector<char> alive(n, 1);
  std::vector<std::vector<std::pair<int, int>>> dependents(n);  // j -> (i, ob index)
  std::vector<size_t> dead_queue;

  // The witness for an obligation of types[i] along axis a is any
  // types[j] containing the child literal and edge-coherent in the
  // obligation's direction (a already encodes inversion).
  auto find_witness = [&](size_t i, int k) {
    Ob& o = obs[i][static_cast<size_t>(k)];
    for (size_t j = 0; j < n; ++j) {
      if (!alive[j] || !ct.member(types[j], o.child)) continue;
      if (!edge_ok(o.axis, i, j)) continue;
      o.witness = static_cast<int>(j);
      dependents[j].emplace_back(static_cast<int>(i), k);
      return true;
    }
    return false;
  };

  for (size_t i = 0; i < n; ++i) {
    for (int k = 0; k < static_cast<int>(obs[i].size()); ++k) {
      if (!find_witness(i, k)) {
        alive[i] = 0;
        dead_queue.push_back(i);
        break;
      }
    }
  }
  while (!dead_queue.empty()) {
    size_t j = dead_queue.back();
    dead_queue.pop_back();
    auto deps = std::move(dependents[j]);
    dependents[j].clear();
    for (auto [i, k] : deps) {
      if (!alive[static_cast<size_t>(i)]) continue;
      if (!find_witness(static_cast<size_t>(i), k)) {
        alive[static_cast<size_t>(i)] = 0;
        dead_queue.push_back(static_cast<size_t>(i));
      }
    }
  }

  std::vector<DynBitset> kept;
  for (size_t i = 0; i < n; ++i)
    if (alive[i]) kept.push_back(std::move(types[i]));
  return kept;
}

}  // namespace dlex
