#pragma once

#include <optional>
#include <vector>

namespace dlex {

// Minimal complete DPLL solver with watched literals, for the bounded
// model finder.  Literals: variable v has literals 2v (positive) and
// 2v+1 (negative).  Deterministic: branching picks the lowest-index
// unassigned variable, trying false first.
class SatSolver {
 public:
  int new_var();
  int num_vars() const { return nvars_; }

  static int pos(int v) { return 2 * v; }
  static int neg(int v) { return 2 * v + 1; }
  static int negate(int lit) { return lit ^ 1; }

  void add_clause(std::vector<int> lits);
  void add_unit(int lit) { add_clause({lit}); }
  void add_implies(int a, int b) { add_clause({negate(a), b}); }
  // y <-> AND(xs)
  void add_iff_and(int y, const std::vector<int>& xs);
  // y <-> OR(xs)
  void add_iff_or(int y, const std::vector<int>& xs);

  // Returns the model as variable assignments, or nullopt if UNSAT.
  std::optional<std::vector<bool>> solve();

 private:
  bool propagate(size_t& head);

  int nvars_ = 0;
  std::vector<std::vector<int>> clauses_;
  std::vector<std::vector<int>> watchers_;  // literal -> clause indices
  std::vector<int8_t> value_;               // -1 unassigned, 0 false, 1 true
  std::vector<int> trail_;
  bool contradiction_ = false;
};

}  // namespace dlex
