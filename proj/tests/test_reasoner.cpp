#include <gtest/gtest.h>

#include <algorithm>

#include "dlex/model_search.hpp"
#include "dlex/parser.hpp"
#include "dlex/reasoner.hpp"
#include "dlex/render.hpp"
#include "testutil.hpp"

using namespace dlex;
using dlextest::GenOpts;
using dlextest::Rng;

namespace {

bool some_type_contains(const TypeSet& ts, const Concept& c) {
  ClosureLit l = ts.closure->lit_of(c);
  for (const auto& t : ts.types)
    if (ts.closure->member(t, l)) return true;
  return false;
}

}  // namespace

TEST(satisfiable_types, base_cases) {
  EXPECT_TRUE(satisfiable_types(parse_tbox("top [= bot."), Dialect::ALC).types.empty());

  TBox loop = parse_tbox("A [= some r A.");
  TypeSet ts = satisfiable_types(loop, Dialect::ALC);
  EXPECT_FALSE(ts.types.empty());
  EXPECT_TRUE(some_type_contains(ts, Concept::name("A")));
  // Cross-check: the bounded finder exhibits a one-element loop model
  // with A inhabited.
  auto m = bounded_model_search(
      BooleanTBox::conj(BooleanTBox::from_tbox(loop),
                        BooleanTBox::negation(BooleanTBox::atom(
                            {Concept::name("A"), Concept::bot()}))),
      1);
  ASSERT_TRUE(m.has_value());
  EXPECT_TRUE(satisfies(*m, loop));

  TBox dead = parse_tbox("A [= some r B.\nB [= bot.");
  TypeSet ts2 = satisfiable_types(dead, Dialect::ALC);
  EXPECT_FALSE(ts2.types.empty());
  EXPECT_FALSE(some_type_contains(ts2, Concept::name("A")));
  EXPECT_FALSE(bounded_model_search(
                   BooleanTBox::conj(BooleanTBox::from_tbox(dead),
                                     BooleanTBox::negation(BooleanTBox::atom(
                                         {Concept::name("A"), Concept::bot()}))),
                   4)
                   .has_value());
}

TEST(satisfiable_types, realized_types_within_bound_survive) {
  // Soundness spot check: every type realized by a model found within the
  // bound is in tp(T).
  Rng rng(67);
  GenOpts o;
  o.names = {"A", "B"};
  o.roles = {"r"};
  int done = 0;
  while (done < 60) {
    TBox t = dlextest::random_tbox(rng, o, 2);
    auto m = bounded_model_search(t, 3);
    if (!m) continue;
    ++done;
    TypeSet ts = satisfiable_types(t, Dialect::ALC);
    for (size_t d = 0; d < m->size(); ++d) {
      DynBitset type(ts.closure->size());
      for (size_t k = 0; k < ts.closure->size(); ++k)
        if (extension(*m, ts.closure->positives()[k]).test(d)) type.set(k);
      EXPECT_TRUE(ts.contains(type)) << render(t);
    }
  }
}

TEST(entails, range_restriction_equivalence) {
  TBox range = parse_tbox("some inv(r) top [= B.");
  TBox forall = parse_tbox("top [= only r B.");
  EXPECT_TRUE(entails(range, forall.inclusions()[0], Dialect::ALCI));
  EXPECT_TRUE(entails(forall, range.inclusions()[0], Dialect::ALCI));

  EXPECT_TRUE(entails(parse_tbox("A [= B."), parse_inclusion("C [= top"), Dialect::ALC));
  EXPECT_FALSE(entails(TBox{}, parse_inclusion("A [= B"), Dialect::ALC));
}

TEST(entails, reflexive_monotone) {
  Rng rng(71);
  GenOpts o;
  o.use_inverse = true;
  for (int k = 0; k < 40; ++k) {
    TBox t = dlextest::random_tbox(rng, o, 3);
    for (const auto& ci : t.inclusions())
      EXPECT_TRUE(entails(t, ci, Dialect::ALCI)) << render(t);
  }
}

TEST(boolean_satisfiable, base_cases) {
  EXPECT_TRUE(boolean_satisfiable(parse_boolean_tbox("!(top [= A)"), Dialect::ALC));
  EXPECT_FALSE(
      boolean_satisfiable(parse_boolean_tbox("(top [= A) && !(top [= A)"), Dialect::ALC));

  // The partition schema χ from the disjoint-union reduction is satisfiable.
  BooleanTBox chi = parse_boolean_tbox(
      "(A1 and A2 [= bot) && (top [= A1 or A2) && (A1 [= only r A1) && "
      "(A2 [= only r A2) && !(A1 [= bot) && !(A2 [= bot)");
  EXPECT_TRUE(boolean_satisfiable(chi, Dialect::ALC));
  auto m = bounded_model_search(chi, 2);
  ASSERT_TRUE(m.has_value());
  EXPECT_EQ(m->size(), 2u);
}

TEST(boolean_satisfiable, agrees_with_bounded_search) {
  Rng rng(73);
  GenOpts o;
  o.names = {"A", "B"};
  o.roles = {"r"};
  o.max_depth = 1;
  int models_found = 0;
  for (int k = 0; k < 500; ++k) {
    BooleanTBox phi = BooleanTBox::atom({dlextest::random_concept(rng, o, 0),
                                         dlextest::random_concept(rng, o, 0)});
    if (rng.coin()) phi = BooleanTBox::negation(phi);
    if (rng.coin())
      phi = BooleanTBox::conj(phi, BooleanTBox::atom(
                                       {dlextest::random_concept(rng, o, 0),
                                        dlextest::random_concept(rng, o, 0)}));
    else if (rng.coin())
      phi = BooleanTBox::disj(phi, BooleanTBox::negation(BooleanTBox::atom(
                                       {dlextest::random_concept(rng, o, 0),
                                        dlextest::random_concept(rng, o, 0)})));
    bool exact = boolean_satisfiable(phi, Dialect::ALC);
    auto m = bounded_model_search(phi, 3);
    if (m) {
      ++models_found;
      EXPECT_TRUE(exact);
      EXPECT_TRUE(satisfies(*m, phi));
    }
    if (!exact) EXPECT_FALSE(m.has_value());
  }
  EXPECT_GT(models_found, 100);
}

TEST(canonical_model, realizes_exactly_tp) {
  // Seed the closure with A and r through tautologies; the canonical model
  // of the empty theory realizes both the A and the ¬A types.
  TBox taut = parse_tbox("A [= A.\nsome r top [= top.");
  TypeSet ts = satisfiable_types(taut, Dialect::ALC);
  Interpretation m = canonical_model(ts);
  DynBitset a = extension(m, Concept::name("A"));
  EXPECT_TRUE(a.any());
  EXPECT_LT(a.count(), m.size());  // both A and ¬A types realized

  Rng rng(79);
  GenOpts o;
  o.names = {"A", "B"};
  o.roles = {"r"};
  int done = 0;
  while (done < 200) {
    TBox t = dlextest::random_tbox(rng, o, 2);
    TypeSet tt = satisfiable_types(t, Dialect::ALC);
    if (tt.types.empty()) continue;
    ++done;
    Interpretation cm = canonical_model(tt);
    EXPECT_TRUE(satisfies(cm, t)) << render(t);
    // Realized type set equals tp(T), both inclusions.
    std::vector<DynBitset> realized;
    std::vector<DynBitset> exts;
    for (size_t k = 0; k < tt.closure->size(); ++k)
      exts.push_back(extension(cm, tt.closure->positives()[k]));
    for (size_t d = 0; d < cm.size(); ++d) {
      DynBitset type(tt.closure->size());
      for (size_t k = 0; k < tt.closure->size(); ++k)
        if (exts[k].test(d)) type.set(k);
      realized.push_back(std::move(type));
    }
    std::sort(realized.begin(), realized.end());
    realized.erase(std::unique(realized.begin(), realized.end()), realized.end());
    EXPECT_EQ(realized, tt.types) << render(t);
  }
  EXPECT_THROW(canonical_model(parse_tbox("top [= bot."), Dialect::ALC), SemanticError);
}

TEST(canonical_model, inverse_obligations) {
  TBox t = parse_tbox("A [= some inv(r) B.\ntop [= A or B.");
  TypeSet ts = satisfiable_types(t, Dialect::ALCI);
  ASSERT_FALSE(ts.types.empty());
  Interpretation m = canonical_model(ts);
  EXPECT_TRUE(satisfies(m, t));
}

TEST(bounded_model_search, base_cases) {
  auto m = bounded_model_search(parse_tbox("top [= A."), 1);
  ASSERT_TRUE(m.has_value());
  EXPECT_EQ(m->size(), 1u);
  EXPECT_TRUE(m->in_concept("A", 0));

  EXPECT_FALSE(bounded_model_search(parse_tbox("top [= bot."), 4).has_value());
}

TEST(bounded_model_search, nominals_and_counting) {
  BooleanTBox phi = parse_boolean_tbox("({a} [= A) && !({b} [= A)");
  auto m = bounded_model_search(phi, 3);
  ASSERT_TRUE(m.has_value());
  EXPECT_TRUE(satisfies(*m, phi));
  EXPECT_EQ(m->individuals().count("a"), 1u);
  EXPECT_EQ(m->individuals().count("b"), 1u);

  auto m2 = bounded_model_search(parse_tbox("top [= atleast 3 r A."), 2);
  EXPECT_FALSE(m2.has_value());
  auto m3 = bounded_model_search(parse_tbox("top [= atleast 3 r A."), 3);
  ASSERT_TRUE(m3.has_value());
  EXPECT_TRUE(satisfies(*m3, parse_tbox("top [= atleast 3 r A.")));

  auto m4 = bounded_model_search(
      parse_tbox("top [= atmost 0 r top.\ntop [= some r top."), 5);
  EXPECT_FALSE(m4.has_value());
}

TEST(bounded_model_search, deterministic) {
  BooleanTBox phi = parse_boolean_tbox("!(A [= B) && (top [= some r top)");
  auto m1 = bounded_model_search(phi, 4);
  auto m2 = bounded_model_search(phi, 4);
  ASSERT_TRUE(m1 && m2);
  EXPECT_EQ(to_text(*m1), to_text(*m2));
}

TEST(eliminate_types, order_independent) {
  // Confluence of the elimination: a randomized removal order reaches the
  // same fixpoint as the deterministic sweep.
  Rng rng(83);
  GenOpts o;
  o.names = {"A", "B"};
  o.roles = {"r", "s"};
  o.use_inverse = true;
  for (int k = 0; k < 60; ++k) {
    TBox t = dlextest::random_tbox(rng, o, 2);
    Limits lim;
    ClosureTable ct(t, {}, lim);
    auto cis = ct.ci_lits(t);
    std::vector<DynBitset> types;
    for (auto& ty : ct.all_types())
      if (ct.respects(ty, cis)) types.push_back(std::move(ty));

    std::vector<DynBitset> reference = eliminate_types(ct, types);
    std::sort(reference.begin(), reference.end());

    // Randomized order: repeatedly pick a random violating type and drop it.
    std::vector<DynBitset> pool = types;
    for (;;) {
      std::vector<size_t> violating;
      for (size_t i = 0; i < pool.size(); ++i) {
        bool ok = true;
        for (const auto& ob : ct.obligations(pool[i])) {
          bool witnessed = false;
          for (const auto& u : pool) {
            if (!ct.member(u, ob.child)) continue;
            bool coh = ob.role.inverted ? ct.coherent(u, ob.role.inverse(), pool[i])
                                        : ct.coherent(pool[i], ob.role, u);
            if (coh) {
              witnessed = true;
              break;
            }
          }
          if (!witnessed) {
            ok = false;
            break;
          }
        }
        if (!ok) violating.push_back(i);
      }
      if (violating.empty()) break;
      size_t pick = violating[static_cast<size_t>(
          rng.below(static_cast<int>(violating.size())))];
      pool.erase(pool.begin() + static_cast<long>(pick));
    }
    std::sort(pool.begin(), pool.end());
    EXPECT_EQ(pool, reference) << render(t);
  }
}

TEST(limits, type_space_cap_reported) {
  Limits lim;
  lim.max_type_bits = 3;
  TBox t = parse_tbox("A and B [= some r C.\nC [= some r (A or B and C).");
  EXPECT_THROW(satisfiable_types(t, Dialect::ALC, lim), ResourceLimitError);
}
