#pragma once

#include <cstdlib>
#include <functional>
#include <string>

namespace dlex {

// Resource caps.  Exceeding one raises ResourceLimitError with the cap
// named in the message; results are never silently truncated.  Overridable
// via DLEX_* environment variables and CLI flags.
struct Limits {
  // Optional cooperative cancellation hook, polled by the long-running
  // deciders; returning true aborts with ResourceLimitError.
  std::function<bool()> cancel;

  int max_type_bits = 20;        // at most 2^bits candidate types
  long long max_pairs = 2000000;     // (s,S) pairs in the ALCI→ALC eliminator
  long long max_steps = 20000000;    // work budget of the EL-invariance eliminator
  int max_model_size = 6;        // bounded model search ceiling
  int max_basic_concepts = 14;   // 2^b enumeration in the DL-Lite deciders
  long long max_dnf = 4096;          // disjuncts in Boolean TBox DNF
  int tree_depth = -1;           // product search; -1 means rd(T)
  long long out_degree = 2;          // product search out-degree per role
  long long max_tree_pairs = 200000;  // product search pair budget

  static Limits defaults() { return Limits{}; }

  static Limits from_env() {
    Limits l;
    auto geti = [](const char* name, auto& slot) {
      if (const char* v = std::getenv(name)) slot = std::atoll(v);
    };
    geti("DLEX_MAX_TYPE_BITS", l.max_type_bits);
    geti("DLEX_MAX_PAIRS", l.max_pairs);
    geti("DLEX_MAX_STEPS", l.max_steps);
    geti("DLEX_MAX_MODEL_SIZE", l.max_model_size);
    geti("DLEX_MAX_BASIC_CONCEPTS", l.max_basic_concepts);
    geti("DLEX_MAX_DNF", l.max_dnf);
    geti("DLEX_MAX_TREE_PAIRS", l.max_tree_pairs);
    return l;
  }
};

void poll_cancel(const Limits& lim);

}  // namespace dlex
