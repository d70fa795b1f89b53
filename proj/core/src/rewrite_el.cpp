#include <algorithm>
#include <map>
#include <unordered_map>
#include <unordered_set>

#include "dlex/reasoner.hpp"
#include "dlex/rewrite.hpp"

namespace dlex {

namespace {

struct VecHash {
  size_t operator()(const std::vector<int>& v) const {
    size_t h = v.size();
    for (int x : v) h ^= static_cast<size_t>(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

// Decides invariance of an ALC TBox under global EL-equisimulation by the
// stratified tuple elimination over
//   (t, s, s0, t1, s1, ..., tl, sl),  t/ti ∈ tp^m,  s/si ∈ tp(T),
// for m+l <= k = rd(T).  The tuple survives the rules (r1)-(r5) iff it is
// realizable by the corresponding family of (equi)simulated objects, and T
// is not invariant iff some (t, s, s) with t outside tp(T) survives at
// level (k, 0).
//
// The greatest fixpoint is computed locally: a tuple's survival is checked
// on demand, assuming tuples on the recursion stack alive (self-supporting
// cycles are legitimate in a gfp), and a round is re-run whenever it
// eliminated something, so stale optimistic results are never trusted.
// Eliminations are derived from definite failures only, hence final.
class ElInvariance {
 public:
  ElInvariance(const TBox& t, const Limits& lim) : lim_(lim) {
    ts_ = satisfiable_types(t, Dialect::ALC, lim);
    ct_ = ts_.closure.get();
    k_ = t.role_depth();
    roles_ = ct_->role_names();

    std::vector<DynBitset> all = ct_->all_types();
    levels_.resize(static_cast<size_t>(k_) + 1);
    level_names_.resize(static_cast<size_t>(k_) + 1);
    for (int m = 0; m <= k_; ++m) {
      DynBitset mask = ct_->depth_mask(m);
      std::vector<DynBitset> proj;
      proj.reserve(all.size());
      for (const auto& ty : all) {
        DynBitset p = ty;
        p &= mask;
        proj.push_back(std::move(p));
      }
      std::sort(proj.begin(), proj.end());
      proj.erase(std::unique(proj.begin(), proj.end()), proj.end());
      levels_[m] = std::move(proj);
      for (const auto& ty : levels_[m]) {
        DynBitset nc = ty;
        nc &= ct_->name_mask();
        level_names_[m].push_back(std::move(nc));
      }
    }
    for (const auto& ty : ts_.types) {
      DynBitset nc = ty;
      nc &= ct_->name_mask();
      tpt_names_.push_back(std::move(nc));
    }
  }

  bool not_invariant() {
    if (ts_.types.empty()) return false;  // unsatisfiable: vacuously invariant
    for (;;) {
      alive_.clear();
      size_t before = eliminated_.size();
      bool found = false;
      const auto& top = levels_[k_];
      for (size_t ti = 0; ti < top.size() && !found; ++ti) {
        if (ts_.contains(top[ti])) continue;
        for (size_t s = 0; s < ts_.types.size() && !found; ++s) {
          if (!(level_names_[k_][ti] == tpt_names_[s])) continue;
          std::vector<int> key{k_, static_cast<int>(ti), static_cast<int>(s),
                               static_cast<int>(s)};
          if (survives(key)) found = true;
        }
      }
      if (eliminated_.size() == before) return found;
    }
  }

 private:
  int role_index(const std::string& name) const {
    return static_cast<int>(std::lower_bound(roles_.begin(), roles_.end(), name) -
                            roles_.begin());
  }

  void budget() {
    if ((work_ & 0x3fff) == 0) poll_cancel(lim_);
    if (++work_ > lim_.max_steps)
      throw ResourceLimitError("EL-invariance eliminator exceeded " +
                               std::to_string(lim_.max_steps) + " steps (DLEX_MAX_STEPS)");
  }

  // Level-m type indices coherent as r-successors of levels_[m][i] at
  // level max(m-1, 0).
  const std::vector<int>& lsucc(int m, int r, int i) {
    auto key = std::make_tuple(m, r, i);
    auto it = lsucc_memo_.find(key);
    if (it != lsucc_memo_.end()) return it->second;
    int m2 = m > 0 ? m - 1 : 0;
    std::vector<int> out;
    const Role role(roles_[r]);
    for (size_t j = 0; j < levels_[m2].size(); ++j) {
      budget();
      if (ct_->coherent_bounded(levels_[m][i], m, role, levels_[m2][j], m2))
        out.push_back(static_cast<int>(j));
    }
    return lsucc_memo_.emplace(key, std::move(out)).first->second;
  }

  const std::vector<int>& ssucc(int r, int j) {
    auto key = std::make_pair(r, j);
    auto it = ssucc_memo_.find(key);
    if (it != ssucc_memo_.end()) return it->second;
    std::vector<int> out;
    const Role role(roles_[r]);
    for (size_t j2 = 0; j2 < ts_.types.size(); ++j2) {
      budget();
      if (ct_->coherent(ts_.types[j], role, ts_.types[j2]))
        out.push_back(static_cast<int>(j2));
    }
    return ssucc_memo_.emplace(key, std::move(out)).first->second;
  }

  // key layout: [m, t, s, s0, t1, s1, ..., tl, sl]
  static std::vector<int> make_key(int m, int t, int s, int s0,
                                   std::vector<std::pair<int, int>> pairs) {
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
    std::vector<int> key{m, t, s, s0};
    for (auto [a, b] : pairs) {
      key.push_back(a);
      key.push_back(b);
    }
    return key;
  }

  bool survives(const std::vector<int>& key) {
    if (eliminated_.count(key)) return false;
    if (alive_.count(key)) return true;
    if (stack_.count(key)) return true;  // optimistic, validated by rounds
    budget();
    stack_.insert(key);
    bool ok = check(key);
    stack_.erase(key);
    if (!ok) {
      eliminated_.insert(key);
      return false;
    }
    alive_.insert(key);
    return true;
  }

  bool check(const std::vector<int>& key) {
    const int m = key[0], t = key[1], s = key[2], s0 = key[3];
    std::vector<std::pair<int, int>> pairs;
    for (size_t i = 4; i + 1 < key.size(); i += 2) pairs.emplace_back(key[i], key[i + 1]);

    // (r1): existentials of t.  Modal entries have role depth >= 1, so the
    // list is empty at m = 0, matching the rule's m > 0 guard.
    for (const auto& ob : ct_->obligations(levels_[m][t], m)) {
      int r = role_index(ob.role.name);
      if (!r1_witness(m, t, s, pairs, r, ob.child)) return false;
    }
    // (r2): existentials of s.
    for (const auto& ob : ct_->obligations(ts_.types[s])) {
      int r = role_index(ob.role.name);
      if (!succ_witness(m, t, s, pairs, r, ob.child, /*from_s0=*/false, s0)) return false;
    }
    // (r3): existentials of s0.
    for (const auto& ob : ct_->obligations(ts_.types[s0])) {
      int r = role_index(ob.role.name);
      if (!succ_witness(m, t, s, pairs, r, ob.child, /*from_s0=*/true, s0)) return false;
    }
    // (r4)/(r5): per-pair existentials.
    for (auto [ti, si] : pairs) {
      for (const auto& ob : ct_->obligations(levels_[m][ti], m)) {
        int r = role_index(ob.role.name);
        if (!r4_witness(m, ti, si, r, ob.child)) return false;
      }
      for (const auto& ob : ct_->obligations(ts_.types[si])) {
        int r = role_index(ob.role.name);
        if (!r5_witness(m, ti, si, r, ob.child)) return false;
      }
    }
    return true;
  }

  // Candidate (ti', si') successors for one pair slot, Init-filtered
  // against the witness core names(t').
  std::vector<std::pair<int, int>> pair_cands(int m, int ti, int si, int r,
                                              const DynBitset& tprime_names) {
    std::vector<std::pair<int, int>> out;
    const int m2 = m > 0 ? m - 1 : 0;
    for (int x : lsucc(m, r, ti)) {
      if (!tprime_names.subset_of(level_names_[m2][x])) continue;
      for (int y : ssucc(r, si)) {
        budget();
        if (tpt_names_[y] == level_names_[m2][x]) out.emplace_back(x, y);
      }
    }
    return out;
  }

  // DFS over per-slot candidates, recursing into survives() on a full
  // assignment.
  bool assign_pairs(int wm, int wt, int ws, int ws0,
                    const std::vector<std::vector<std::pair<int, int>>>& slots,
                    std::vector<std::pair<int, int>>& chosen, size_t at) {
    if (at == slots.size())
      return survives(make_key(wm, wt, ws, ws0, chosen));
    for (const auto& c : slots[at]) {
      budget();
      chosen.push_back(c);
      if (assign_pairs(wm, wt, ws, ws0, slots, chosen, at + 1)) {
        chosen.pop_back();
        return true;
      }
      chosen.pop_back();
    }
    return false;
  }

  bool r1_witness(int m, int t, int s, const std::vector<std::pair<int, int>>& pairs,
                  int r, const ClosureLit& child) {
    const int m2 = m - 1;
    for (int tp : lsucc(m, r, t)) {
      if (!ct_->member(levels_[m2][tp], child)) continue;
      const DynBitset& tpn = level_names_[m2][tp];
      // Slot lists: the l old pairs step along r, plus the fresh
      // (t_{l+1}', s_{l+1}') successor of (t, s).
      std::vector<std::vector<std::pair<int, int>>> slots;
      bool feasible = true;
      for (auto [ti, si] : pairs) {
        slots.push_back(pair_cands(m, ti, si, r, tpn));
        if (slots.back().empty()) {
          feasible = false;
          break;
        }
      }
      if (feasible) {
        slots.push_back(pair_cands(m, t, s, r, tpn));
        if (slots.back().empty()) feasible = false;
      }
      if (!feasible) continue;
      for (size_t sp = 0; sp < ts_.types.size(); ++sp) {
        if (!(tpt_names_[sp] == tpn)) continue;
        for (size_t s0p = 0; s0p < ts_.types.size(); ++s0p) {
          if (!tpt_names_[s0p].subset_of(tpt_names_[sp])) continue;
          std::vector<std::pair<int, int>> chosen;
          if (assign_pairs(m2, tp, static_cast<int>(sp), static_cast<int>(s0p), slots,
                           chosen, 0))
            return true;
        }
      }
    }
    return false;
  }

  // Shared body of (r2) and (r3): a step of the model pair along an
  // existential of s (or of s0).
  bool succ_witness(int m, int t, int s, const std::vector<std::pair<int, int>>& pairs,
                    int r, const ClosureLit& child, bool from_s0, int s0) {
    const int m2 = m > 0 ? m - 1 : 0;
    const int src = from_s0 ? s0 : s;
    for (int s0p : ssucc(r, src)) {
      if (!ct_->member(ts_.types[s0p], child)) continue;
      for (int sp : ssucc(r, s)) {
        if (!tpt_names_[s0p].subset_of(tpt_names_[sp])) continue;
        for (int tp : lsucc(m, r, t)) {
          if (!(level_names_[m2][tp] == tpt_names_[sp])) continue;
          std::vector<std::vector<std::pair<int, int>>> slots;
          bool feasible = true;
          for (auto [ti, si] : pairs) {
            slots.push_back(pair_cands(m, ti, si, r, level_names_[m2][tp]));
            if (slots.back().empty()) {
              feasible = false;
              break;
            }
          }
          if (!feasible) continue;
          std::vector<std::pair<int, int>> chosen;
          if (assign_pairs(m2, tp, sp, s0p, slots, chosen, 0)) return true;
        }
      }
    }
    return false;
  }

  bool r4_witness(int m, int ti, int si, int r, const ClosureLit& child) {
    const int m2 = m > 0 ? m - 1 : 0;
    for (int tp : lsucc(m, r, ti)) {
      if (!ct_->member(levels_[m2][tp], child)) continue;
      const DynBitset& tpn = level_names_[m2][tp];
      auto slot = pair_cands(m, ti, si, r, tpn);
      if (slot.empty()) continue;
      for (size_t sp = 0; sp < ts_.types.size(); ++sp) {
        if (!(tpt_names_[sp] == tpn)) continue;
        for (size_t s0p = 0; s0p < ts_.types.size(); ++s0p) {
          if (!tpt_names_[s0p].subset_of(tpt_names_[sp])) continue;
          std::vector<std::vector<std::pair<int, int>>> slots{slot};
          std::vector<std::pair<int, int>> chosen;
          if (assign_pairs(m2, tp, static_cast<int>(sp), static_cast<int>(s0p), slots,
                           chosen, 0))
            return true;
        }
      }
    }
    return false;
  }

  bool r5_witness(int m, int ti, int si, int r, const ClosureLit& child) {
    const int m2 = m > 0 ? m - 1 : 0;
    for (int s0p : ssucc(r, si)) {
      if (!ct_->member(ts_.types[s0p], child)) continue;
      for (int sp : ssucc(r, si)) {
        if (!tpt_names_[s0p].subset_of(tpt_names_[sp])) continue;
        for (int tp : lsucc(m, r, ti)) {
          budget();
          if (!(level_names_[m2][tp] == tpt_names_[sp])) continue;
          if (survives(make_key(m2, tp, sp, s0p, {}))) return true;
        }
      }
    }
    return false;
  }

  Limits lim_;
  TypeSet ts_;
  const ClosureTable* ct_ = nullptr;
  int k_ = 0;
  std::vector<std::string> roles_;
  std::vector<std::vector<DynBitset>> levels_;       // tp^m per m
  std::vector<std::vector<DynBitset>> level_names_;  // concept-name part
  std::vector<DynBitset> tpt_names_;

  std::map<std::tuple<int, int, int>, std::vector<int>> lsucc_memo_;
  std::map<std::pair<int, int>, std::vector<int>> ssucc_memo_;

  std::unordered_set<std::vector<int>, VecHash> eliminated_;
  std::unordered_set<std::vector<int>, VecHash> alive_;
  std::unordered_set<std::vector<int>, VecHash> stack_;
  long long work_ = 0;
};

}  // namespace

bool el_global_invariance(const TBox& t, const Limits& lim) {
  require_dialect(t, Dialect::ALC, "el_global_invariance");
  if (check_dialect(t, Dialect::EL)) return true;  // EL TBoxes are invariant
  ElInvariance e(t, lim);
  return !e.not_invariant();
}

}  // namespace dlex
