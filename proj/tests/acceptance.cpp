// Acceptance suite: one pass/fail line per criterion, exit code = number
// of failed criteria.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "dlex/model_search.hpp"
#include "dlex/parser.hpp"
#include "dlex/reasoner.hpp"
#include "dlex/render.hpp"
#include "dlex/rewrite.hpp"
#include "dlex/sim.hpp"
#include "testutil.hpp"

using namespace dlex;
using dlextest::GenOpts;
using dlextest::Rng;

namespace {

int failures = 0;

double now_secs() {
  using namespace std::chrono;
  return duration<double>(steady_clock::now().time_since_epoch()).count();
}

void report(const std::string& name, bool pass, const std::string& note, double secs) {
  std::printf("[%s] %-38s %7.2fs  %s\n", pass ? "PASS" : "FAIL", name.c_str(), secs,
              note.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::string data_file(const std::string& name) {
  std::ifstream in(std::string(DLEX_TEST_DATA_DIR) + "/" + name);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const Interpretation* witness(const Verdict& v, const std::string& n) {
  for (const auto& [name, i] : v.witnesses)
    if (name == n) return &i;
  return nullptr;
}

// --------------------------------------------------------------------------
// Criterion 1: paper-example golden suite, each case under a second.

bool crit1(std::string& note) {
  bool ok = true;
  auto timed = [&](const char* tag, const std::function<bool()>& f) {
    double t0 = now_secs();
    bool r = f();
    double dt = now_secs() - t0;
    if (!r || dt >= 1.0) {
      ok = false;
      note += std::string(tag) + (r ? " too slow; " : " failed; ");
    }
    return r;
  };

  timed("1a", [&] {
    TBox range = parse_tbox(data_file("range.tbox"));
    Verdict v = rewrite_alci_to_alc(range);
    TBox alc = parse_tbox("top [= only r B.");
    return v.outcome == Outcome::Rewritable &&
           entails(range, alc.inclusions()[0], Dialect::ALCI) &&
           entails(alc, range.inclusions()[0], Dialect::ALCI);
  });

  timed("1b", [&] {
    TBox t = parse_tbox(data_file("twosided.tbox"));
    Verdict v = rewrite_alci_to_alc(t);
    if (v.outcome != Outcome::NotRewritable) return false;
    const Interpretation* i1 = witness(v, "i1");
    const Interpretation* i2 = witness(v, "i2");
    return i1 && i2 && !satisfies(*i1, t) && satisfies(*i2, t) &&
           globally_related(*i1, *i2, RelationNotion::bisim());
  });

  timed("1c", [&] {
    auto a = invariant_under_disjoint_unions(
        parse_boolean_tbox(data_file("phi_or.btbox")), Dialect::ALC);
    auto b = invariant_under_disjoint_unions(
        parse_boolean_tbox(data_file("phi_neg.btbox")), Dialect::ALC);
    auto c = invariant_under_disjoint_unions(
        parse_boolean_tbox(data_file("phi_single.btbox")), Dialect::ALC);
    return a.value == Tri::False && b.value == Tri::False && c.value == Tri::True;
  });

  timed("1d", [&] {
    Interpretation i1 = parse_interpretation(data_file("fig6_i1.json"));
    Interpretation i2 = parse_interpretation(data_file("fig6_i2.json"));
    Concept c = parse_concept("some r A1 or some r A2");
    if (!extension(i1, c).test(static_cast<size_t>(i1.index_of("d1")))) return false;
    if (!extension(i2, c).test(static_cast<size_t>(i2.index_of("d2")))) return false;
    Interpretation p = product(i1, i2);
    int root = p.index_of("(d1,d2)");
    return root >= 0 && !extension(p, c).test(static_cast<size_t>(root));
  });

  timed("1e", [&] {
    TBox disj = parse_tbox(data_file("disjointness.tbox"));
    Verdict core = rewrite_to_dllite_core(disj, false);
    Verdict cored = rewrite_to_dllite_core(disj, true);
    return core.outcome == Outcome::NotRewritable &&
           cored.outcome == Outcome::Rewritable && cored.rewriting.has_value() &&
           check_dialect(*cored.rewriting, Dialect::DLLiteCoreD);
  });

  if (ok) note = "1a-1e: paper examples reproduced";
  return ok;
}

// --------------------------------------------------------------------------
// Criterion 2: metamorphic reduction law.
//   tbox_satisfiable(T) <=> not el_global_invariance(T ∪ {A ⊑ ∀r.B})

bool crit2(std::string& note) {
  Rng rng(20260810);
  GenOpts o;
  o.names = {"A0", "A1", "A2"};
  o.roles = {"r0", "r1"};
  o.leaf_bias = 3;
  int tested = 0, violations = 0, rerolls = 0, sat_count = 0;
  while (tested < 200) {
    o.max_depth = rng.below(5) == 0 ? 2 : 1;  // mostly rd<=1, some rd 2
    TBox t = dlextest::random_tbox(rng, o, 2);
    try {
      bool sat = tbox_satisfiable(t, Dialect::ALC);
      TBox extended = t;
      Signature sig = signature_of(t);
      std::string a = fresh_concept_name(sig, "FA");
      std::string b = fresh_concept_name(sig, "FB");
      std::string r = fresh_role_name(sig, "fr");
      extended.add({Concept::name(a), Concept::forall(Role(r), Concept::name(b))});
      bool inv = el_global_invariance(extended);
      if (sat == inv) ++violations;
      if (sat) ++sat_count;
      ++tested;
    } catch (const ResourceLimitError&) {
      ++rerolls;
      if (rerolls > 100) break;
    }
  }
  note = std::to_string(tested) + " TBoxes (" + std::to_string(sat_count) +
         " satisfiable), " + std::to_string(violations) + " violations, " +
         std::to_string(rerolls) + " rerolled on caps";
  return tested >= 200 && violations == 0;
}

// --------------------------------------------------------------------------
// Criterion 3: Hennessy-Milner at finite scale, exhaustively over all
// interpretations with up to 4 elements on a 2-concept/1-role signature.
// Oracle: closure of definable extensions up to depth 16 (bounded concept
// enumeration modulo extension equality).

struct SmallWorld {
  int n;
  uint8_t atom_a, atom_b;  // extensions as bit masks
  uint8_t succ[4];         // successor masks per element
};

void closure_masks(const SmallWorld& w, bool boolean_closed, int max_depth,
                   std::vector<uint8_t>& out) {
  const uint8_t full = static_cast<uint8_t>((1u << w.n) - 1);
  bool present[256] = {false};
  auto add = [&](uint8_t m, std::vector<uint8_t>& fresh) {
    if (!present[m]) {
      present[m] = true;
      fresh.push_back(m);
    }
  };
  std::vector<uint8_t> seed;
  add(full, seed);  // ⊤
  add(w.atom_a, seed);
  add(w.atom_b, seed);
  if (boolean_closed) add(0, seed);  // ⊥
  std::vector<uint8_t> all = seed;
  // Boolean combinations do not raise the depth; saturate them per round.
  auto boolean_saturate = [&] {
    bool grew = true;
    while (grew) {
      grew = false;
      std::vector<uint8_t> fresh;
      size_t sz = all.size();
      for (size_t i = 0; i < sz; ++i) {
        if (boolean_closed) add(static_cast<uint8_t>(~all[i] & full), fresh);
        for (size_t j = 0; j < sz; ++j) add(all[i] & all[j], fresh);
      }
      if (!fresh.empty()) {
        grew = true;
        all.insert(all.end(), fresh.begin(), fresh.end());
      }
    }
  };
  boolean_saturate();
  for (int d = 0; d < max_depth; ++d) {
    std::vector<uint8_t> fresh;
    size_t sz = all.size();
    for (size_t i = 0; i < sz; ++i) {
      uint8_t img = 0;
      for (int e = 0; e < w.n; ++e)
        if (w.succ[e] & all[i]) img |= static_cast<uint8_t>(1u << e);
      add(img, fresh);
    }
    if (fresh.empty()) break;
    all.insert(all.end(), fresh.begin(), fresh.end());
    boolean_saturate();
  }
  out = all;
}

bool crit3(std::string& note) {
  long long checked = 0, mism_bisim = 0, mism_el = 0;
  std::vector<uint8_t> alc_masks, el_masks;
  for (int n = 1; n <= 4; ++n) {
    const int cbits = 2 * n, rbits = n * n;
    for (unsigned long long cm = 0; cm < (1ULL << cbits); ++cm) {
      for (unsigned long long rm = 0; rm < (1ULL << rbits); ++rm) {
        SmallWorld w{};
        w.n = n;
        w.atom_a = static_cast<uint8_t>(cm & ((1u << n) - 1));
        w.atom_b = static_cast<uint8_t>((cm >> n) & ((1u << n) - 1));
        for (int d = 0; d < n; ++d)
          w.succ[d] = static_cast<uint8_t>((rm >> (d * n)) & ((1u << n) - 1));

        Interpretation i;
        for (int d = 0; d < n; ++d) i.add_element(std::string(1, static_cast<char>('a' + d)));
        i.declare_concept("A");
        i.declare_concept("B");
        i.declare_role("r");
        for (int d = 0; d < n; ++d) {
          if ((w.atom_a >> d) & 1) i.set_concept("A", i.domain()[d]);
          if ((w.atom_b >> d) & 1) i.set_concept("B", i.domain()[d]);
          for (int e = 0; e < n; ++e)
            if ((w.succ[d] >> e) & 1) i.add_role_edge("r", i.domain()[d], i.domain()[e]);
        }
        Relation bisim = max_relation(i, i, RelationNotion::bisim());
        Relation elsim = max_relation(i, i, RelationNotion::el());
        closure_masks(w, true, 16, alc_masks);
        closure_masks(w, false, 16, el_masks);
        for (int d1 = 0; d1 < n; ++d1)
          for (int d2 = 0; d2 < n; ++d2) {
            bool agree = true;
            for (uint8_t m : alc_masks)
              if (((m >> d1) & 1) != ((m >> d2) & 1)) {
                agree = false;
                break;
              }
            if (bisim.contains(i.domain()[d1], i.domain()[d2]) != agree) ++mism_bisim;
            bool incl = true;
            for (uint8_t m : el_masks)
              if (((m >> d1) & 1) && !((m >> d2) & 1)) {
                incl = false;
                break;
              }
            if (elsim.contains(i.domain()[d1], i.domain()[d2]) != incl) ++mism_el;
            ++checked;
          }
      }
    }
  }
  note = std::to_string(checked) + " element pairs, " + std::to_string(mism_bisim) +
         " bisim / " + std::to_string(mism_el) + " el-sim mismatches";
  return mism_bisim == 0 && mism_el == 0;
}

// --------------------------------------------------------------------------
// Criterion 4: product lemma on 1000 random (I1, I2, EL-concept) triples.

bool crit4(std::string& note) {
  Rng rng(44);
  GenOpts o;
  o.names = {"A", "B"};
  o.roles = {"r", "s"};
  o.max_depth = 3;
  long long mismatches = 0;
  for (int k = 0; k < 1000; ++k) {
    Interpretation i1 = dlextest::random_interp(rng, 1 + rng.below(4), o.names, o.roles);
    Interpretation i2 = dlextest::random_interp(rng, 1 + rng.below(4), o.names, o.roles);
    Concept c = dlextest::random_el_concept(rng, o, 0);
    Interpretation p = product(i1, i2);
    DynBitset e1 = extension(i1, c);
    DynBitset e2 = extension(i2, c);
    DynBitset ep = extension(p, c);
    for (size_t d1 = 0; d1 < i1.size(); ++d1)
      for (size_t d2 = 0; d2 < i2.size(); ++d2) {
        int pd = p.index_of("(" + i1.domain()[d1] + "," + i2.domain()[d2] + ")");
        if (ep.test(static_cast<size_t>(pd)) != (e1.test(d1) && e2.test(d2)))
          ++mismatches;
      }
  }
  note = "1000 triples, " + std::to_string(mismatches) + " mismatches";
  return mismatches == 0;
}

// --------------------------------------------------------------------------
// Criterion 5: decider verdicts vs brute-force semantic refuters on the
// micro signature {A,B},{r}: TBoxes with at most 2 CIs from a fixed rd<=1
// pool, refuters over interpretations with at most 3 elements.

bool crit5(std::string& note) {
  std::vector<Concept> pool = {
      Concept::top(),
      Concept::name("A"),
      Concept::name("B"),
      Concept::conj(Concept::name("A"), Concept::name("B")),
      parse_concept("some r top"),
      parse_concept("some r A"),
      parse_concept("only r B"),
      parse_concept("not A"),
  };
  std::vector<ConceptInclusion> cis;
  for (const auto& l : pool)
    for (const auto& r : pool)
      if (!(l == r)) cis.push_back({l, r});

  std::vector<Interpretation> worlds;
  for (int n = 1; n <= 3; ++n)
    dlextest::for_each_interp({"A", "B"}, {"r"}, n,
                              [&](const Interpretation& i) { worlds.push_back(i); });

  // b-types computed directly: atoms plus r-successor and r-predecessor
  // non-emptiness.
  auto btype_set = [](const Interpretation& i) {
    std::set<int> s;
    auto succ = i.adjacency(Role("r"));
    auto pred = i.adjacency(Role("r", true));
    for (size_t d = 0; d < i.size(); ++d) {
      int key = (i.in_concept("A", static_cast<int>(d)) ? 1 : 0) |
                (i.in_concept("B", static_cast<int>(d)) ? 2 : 0) |
                (succ[d].empty() ? 0 : 4) | (pred[d].empty() ? 0 : 8);
      s.insert(key);
    }
    return std::vector<int>(s.begin(), s.end());
  };
  std::map<std::vector<int>, std::vector<size_t>> buckets;
  for (size_t w = 0; w < worlds.size(); ++w) buckets[btype_set(worlds[w])].push_back(w);

  long long du_disagreements = 0, horn_disagreements = 0;
  int du_checked = 0, horn_checked = 0;

  // Part A: disjoint-union invariance of Boolean combinations of pool CIs.
  {
    std::vector<Interpretation> small;
    for (int n = 1; n <= 2; ++n)
      dlextest::for_each_interp({"A", "B"}, {"r"}, n,
                                [&](const Interpretation& i) { small.push_back(i); });
    std::vector<BooleanTBox> phis;
    for (const auto& ci : cis) {
      phis.push_back(BooleanTBox::atom(ci));
      phis.push_back(BooleanTBox::negation(BooleanTBox::atom(ci)));
    }
    for (size_t x = 0; x < cis.size(); ++x)
      for (size_t y = x; y < cis.size(); ++y) {
        phis.push_back(BooleanTBox::disj(BooleanTBox::atom(cis[x]), BooleanTBox::atom(cis[y])));
        phis.push_back(BooleanTBox::conj(BooleanTBox::atom(cis[x]),
                                         BooleanTBox::negation(BooleanTBox::atom(cis[y]))));
      }
    for (const auto& phi : phis) {
      std::vector<char> models(small.size());
      for (size_t w = 0; w < small.size(); ++w) models[w] = satisfies(small[w], phi);
      bool refuted = false;
      for (size_t a = 0; a < small.size() && !refuted; ++a)
        for (size_t b = 0; b < small.size() && !refuted; ++b) {
          if (small[a].size() + small[b].size() > 3) continue;
          bool both = models[a] && models[b];
          if (both != satisfies(disjoint_union({small[a], small[b]}), phi)) refuted = true;
        }
      auto v = invariant_under_disjoint_unions(phi, Dialect::ALC);
      ++du_checked;
      if (refuted && v.value != Tri::False) ++du_disagreements;
    }
  }

  // Part B: DL-Lite_horn rewritability vs the b-type-equality refuter.
  {
    std::vector<TBox> tboxes;
    for (const auto& ci : cis) tboxes.push_back(TBox{{ci}});
    for (size_t x = 0; x < cis.size(); ++x)
      for (size_t y = x + 1; y < cis.size(); ++y) {
        TBox t;
        t.add(cis[x]);
        t.add(cis[y]);
        tboxes.push_back(std::move(t));
      }
    for (const auto& t : tboxes) {
      std::vector<char> models(worlds.size());
      for (size_t w = 0; w < worlds.size(); ++w) models[w] = satisfies(worlds[w], t);
      bool refuted = false;
      for (const auto& [key, ws] : buckets) {
        bool has_model = false, has_counter = false;
        for (size_t w : ws) (models[w] ? has_model : has_counter) = true;
        if (has_model && has_counter) {
          refuted = true;
          break;
        }
      }
      Verdict v = rewrite_to_dllite_horn(t);
      ++horn_checked;
      if (refuted && v.outcome == Outcome::Rewritable) ++horn_disagreements;
    }
  }

  note = std::to_string(du_checked) + " boolean TBoxes / " + std::to_string(horn_checked) +
         " TBoxes, " + std::to_string(du_disagreements + horn_disagreements) +
         " disagreements";
  return du_disagreements == 0 && horn_disagreements == 0;
}

// --------------------------------------------------------------------------
// Criterion 6: three-valued honesty of product preservation.

bool crit6(std::string& note) {
  Rng rng(66);
  GenOpts o;
  o.names = {"A", "B"};
  o.roles = {"r"};
  o.max_depth = 1;
  o.leaf_bias = 2;
  std::vector<TBox> inputs;
  inputs.push_back(parse_tbox("top [= A or B."));
  inputs.push_back(parse_tbox("top [= some r A1 or some r A2.\nA1 and A2 [= bot."));
  inputs.push_back(parse_tbox("A [= some r B."));
  inputs.push_back(parse_tbox("A [= only r B."));
  for (int k = 0; k < 80; ++k) inputs.push_back(dlextest::random_tbox(rng, o, 2));

  int t_true = 0, t_false = 0, t_unknown = 0, contradicted = 0;
  for (const auto& t : inputs) {
    if (!check_dialect(t, Dialect::ALC)) continue;
    InvarianceResult r;
    try {
      r = product_preservation(t);
    } catch (const ResourceLimitError&) {
      continue;
    }
    switch (r.value) {
      case Tri::True: {
        ++t_true;
        // True only for sound reasons: EL input, unsatisfiable input, or
        // a search complete for the theoretical bound.
        bool sound = check_dialect(t, Dialect::EL) ||
                     !tbox_satisfiable(t, Dialect::ALC) ||
                     r.detail.find("complete") != std::string::npos;
        if (!sound) ++contradicted;
        break;
      }
      case Tri::False: {
        ++t_false;
        const Interpretation* i1 = nullptr;
        const Interpretation* i2 = nullptr;
        for (const auto& [n, i] : r.witnesses) {
          if (n == "i1") i1 = &i;
          if (n == "i2") i2 = &i;
        }
        if (!i1 || !i2 || !satisfies(*i1, t) || !satisfies(*i2, t) ||
            satisfies(product(*i1, *i2), t))
          ++contradicted;
        break;
      }
      case Tri::Unknown:
        ++t_unknown;
        break;
    }
  }
  int total = t_true + t_false + t_unknown;
  note = std::to_string(total) + " inputs: " + std::to_string(t_true) + " true, " +
         std::to_string(t_false) + " false (witness-verified), " +
         std::to_string(t_unknown) + " unknown (" +
         std::to_string(total ? 100 * t_unknown / total : 0) + "% unknown rate), " +
         std::to_string(contradicted) + " contradicted";
  return contradicted == 0 && total >= 50;
}

// --------------------------------------------------------------------------
// Criterion 7: determinism of structured outputs across two runs.

std::string transcript() {
  std::ostringstream out;
  auto dump_verdict = [&](const char* tag, const Verdict& v) {
    out << tag << "|" << outcome_name(v.outcome) << "|" << v.detail << "\n";
    if (v.rewriting) out << render(*v.rewriting);
    for (const auto& [n, i] : v.witnesses) out << n << "\n" << to_text(i);
  };
  dump_verdict("alci-alc/range", rewrite_alci_to_alc(parse_tbox(data_file("range.tbox"))));
  dump_verdict("alci-alc/twosided",
               rewrite_alci_to_alc(parse_tbox(data_file("twosided.tbox"))));
  dump_verdict("horn/simple",
               rewrite_to_dllite_horn(parse_tbox(data_file("horn_simple.tbox"))));
  dump_verdict("core/disj",
               rewrite_to_dllite_core(parse_tbox(data_file("disjointness.tbox")), true));
  dump_verdict("alc-el/disj", rewrite_alc_to_el(parse_tbox("top [= A or B.")));

  auto du = invariant_under_disjoint_unions(parse_boolean_tbox(data_file("phi_or.btbox")),
                                            Dialect::ALC);
  out << "du|" << tri_name(du.value) << "|" << du.detail << "\n";
  for (const auto& [n, i] : du.witnesses) out << n << "\n" << to_text(i);

  auto ndu = invariant_under_nominal_du(parse_boolean_tbox(data_file("fig4.btbox")),
                                        Dialect::ALCIO);
  out << "ndu|" << tri_name(ndu.value) << "|" << ndu.detail << "\n";
  for (const auto& [n, i] : ndu.witnesses) out << n << "\n" << to_text(i);

  Interpretation f51 = parse_interpretation(data_file("fig5_i1.json"));
  Interpretation f52 = parse_interpretation(data_file("fig5_i2.json"));
  Relation rel = max_relation(f51, f52, RelationNotion::bisim());
  for (const auto& [a, b] : rel.pairs) out << a << "~" << b << ";";
  out << "\n";
  out << to_text(product(f51, f52));
  out << to_text(canonical_model(parse_tbox("A [= some r B."), Dialect::ALC));
  if (auto m =
          bounded_model_search(parse_boolean_tbox("!(A [= B) && (top [= some r top)"), 4))
    out << to_text(*m);
  Interpretation du2 = disjoint_union({f51, f52});
  out << to_text(du2);
  for (const auto& c : components(du2)) out << to_text(c.base);
  return out.str();
}

bool crit7(std::string& note) {
  std::string first = transcript();
  std::string second = transcript();
  note = "transcript of " + std::to_string(first.size()) + " bytes, runs " +
         (first == second ? "byte-identical" : "DIFFER");
  return first == second && !first.empty();
}

}  // namespace

int main() {
  struct Item {
    const char* name;
    bool (*fn)(std::string&);
  };
  const Item items[] = {
      {"1 paper-example golden suite", crit1},
      {"2 metamorphic reduction law", crit2},
      {"3 Hennessy-Milner finite suite", crit3},
      {"4 product lemma", crit4},
      {"5 decider vs refuter oracle", crit5},
      {"6 three-valued honesty", crit6},
      {"7 determinism", crit7},
  };
  for (const auto& item : items) {
    std::string note;
    double t0 = now_secs();
    bool pass = false;
    try {
      pass = item.fn(note);
    } catch (const std::exception& e) {
      note = std::string("exception: ") + e.what();
    }
    report(item.name, pass, note, now_secs() - t0);
  }
  return failures;
}
