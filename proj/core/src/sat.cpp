#include "dlex/sat.hpp"

#include <algorithm>

namespace dlex {

int SatSolver::new_var() {
  watchers_.emplace_back();
  watchers_.emplace_back();
  return nvars_++;
}

void SatSolver::add_clause(std::vector<int> lits) {
  std::sort(lits.begin(), lits.end());
  lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
  for (size_t i = 0; i + 1 < lits.size(); ++i)
    if (lits[i + 1] == negate(lits[i])) return;  // tautology
  if (lits.empty()) {
    contradiction_ = true;
    return;
  }
  clauses_.push_back(std::move(lits));
  auto& cl = clauses_.back();
  if (cl.size() >= 2) {
    watchers_[cl[0]].push_back(static_cast<int>(clauses_.size()) - 1);
    watchers_[cl[1]].push_back(static_cast<int>(clauses_.size()) - 1);
  }
}

void SatSolver::add_iff_and(int y, const std::vector<int>& xs) {
  if (xs.empty()) {
    add_unit(y);
    return;
  }
  std::vector<int> big{y};
  for (int x : xs) {
    add_clause({negate(y), x});
    big.push_back(negate(x));
  }
  add_clause(std::move(big));
}

void SatSolver::add_iff_or(int y, const std::vector<int>& xs) {
  if (xs.empty()) {
    add_unit(negate(y));
    return;
  }
  std::vector<int> big{negate(y)};
  for (int x : xs) {
    add_clause({negate(x), y});
    big.push_back(x);
  }
  add_clause(std::move(big));
}

namespace {
inline int lit_var(int lit) { return lit >> 1; }
inline bool lit_sign(int lit) { return (lit & 1) == 0; }  // true literal?
}  // namespace

bool SatSolver::propagate(size_t& head) {
  auto lit_true = [&](int lit) { return value_[lit_var(lit)] == (lit_sign(lit) ? 1 : 0); };
  auto lit_false = [&](int lit) { return value_[lit_var(lit)] == (lit_sign(lit) ? 0 : 1); };
  auto enqueue = [&](int lit) {
    value_[lit_var(lit)] = lit_sign(lit) ? 1 : 0;
    trail_.push_back(lit);
  };

  while (head < trail_.size()) {
    int flit = negate(trail_[head++]);
    auto& ws = watchers_[flit];
    size_t keep = 0;
    for (size_t i = 0; i < ws.size(); ++i) {
      int ci = ws[i];
      auto& cl = clauses_[ci];
      if (cl[0] == flit) std::swap(cl[0], cl[1]);
      if (lit_true(cl[0])) {
        ws[keep++] = ci;
        continue;
      }
      bool moved = false;
      for (size_t k = 2; k < cl.size(); ++k) {
        if (!lit_false(cl[k])) {
          std::swap(cl[1], cl[k]);
          watchers_[cl[1]].push_back(ci);
          moved = true;
          break;
        }
      }
      if (moved) continue;
      ws[keep++] = ci;
      if (lit_false(cl[0])) {
        for (size_t j = i + 1; j < ws.size(); ++j) ws[keep++] = ws[j];
        ws.resize(keep);
        return false;
      }
      if (value_[lit_var(cl[0])] < 0) enqueue(cl[0]);
    }
    ws.resize(keep);
  }
  return true;
}

std::optional<std::vector<bool>> SatSolver::solve() {
  if (contradiction_) return std::nullopt;
  value_.assign(nvars_, -1);
  trail_.clear();
  size_t head = 0;

  auto enqueue = [&](int lit) -> bool {
    int v = lit_var(lit);
    int want = lit_sign(lit) ? 1 : 0;
    if (value_[v] >= 0) return value_[v] == want;
    value_[v] = static_cast<int8_t>(want);
    trail_.push_back(lit);
    return true;
  };

  for (const auto& cl : clauses_)
    if (cl.size() == 1 && !enqueue(cl[0])) return std::nullopt;

  struct Decision {
    size_t trail_size;
    int lit;
    bool flipped;
  };
  std::vector<Decision> decisions;

  for (;;) {
    if (!propagate(head)) {
      bool recovered = false;
      while (!decisions.empty()) {
        Decision d = decisions.back();
        decisions.pop_back();
        while (trail_.size() > d.trail_size) {
          value_[lit_var(trail_.back())] = -1;
          trail_.pop_back();
        }
        head = trail_.size();
        if (!d.flipped) {
          int flip = negate(d.lit);
          decisions.push_back({d.trail_size, flip, true});
          enqueue(flip);
          recovered = true;
          break;
        }
      }
      if (!recovered) return std::nullopt;
      continue;
    }
    int v = -1;
    for (int i = 0; i < nvars_; ++i)
      if (value_[i] < 0) {
        v = i;
        break;
      }
    if (v < 0) {
      std::vector<bool> model(nvars_);
      for (int i = 0; i < nvars_; ++i) model[i] = value_[i] == 1;
      return model;
    }
    int lit = neg(v);
    decisions.push_back({trail_.size(), lit, false});
    enqueue(lit);
  }
}

}  // namespace dlex
