#include <gtest/gtest.h>

#include "dlex/dialect.hpp"
#include "dlex/interp.hpp"
#include "dlex/parser.hpp"
#include "dlex/render.hpp"
#include "testutil.hpp"

using namespace dlex;
using dlextest::GenOpts;
using dlextest::Rng;

TEST(parse, grammar_cases) {
  Concept c = parse_concept("some inv(r) top");
  EXPECT_EQ(c, Concept::exists(Role("r", true), Concept::top()));

  TBox t = parse_tbox("A and B [= C.");
  ASSERT_EQ(t.size(), 1u);
  EXPECT_EQ(t.inclusions()[0].lhs,
            Concept::conj(Concept::name("A"), Concept::name("B")));
  EXPECT_EQ(t.inclusions()[0].rhs, Concept::name("C"));

  BooleanTBox b = parse_boolean_tbox("!(top [= A) || (top [= B)");
  ASSERT_EQ(b.kind(), BooleanTBox::Kind::Or);
  ASSERT_EQ(b.lhs().kind(), BooleanTBox::Kind::Not);
  EXPECT_EQ(b.lhs().child().ci().rhs, Concept::name("A"));
  EXPECT_EQ(b.rhs().ci().rhs, Concept::name("B"));
}

TEST(parse, precedence_and_sugar) {
  EXPECT_EQ(parse_concept("not A and B"),
            Concept::conj(Concept::negation(Concept::name("A")), Concept::name("B")));
  EXPECT_EQ(parse_concept("A or B and C"),
            Concept::disj(Concept::name("A"),
                          Concept::conj(Concept::name("B"), Concept::name("C"))));
  EXPECT_EQ(parse_concept("some r A and B"),
            Concept::conj(Concept::exists(Role("r"), Concept::name("A")),
                          Concept::name("B")));
  EXPECT_EQ(parse_concept("atleast 2 r {a}"),
            Concept::at_least(2, Role("r"), Concept::nominal("a")));
  EXPECT_EQ(parse_concept("only r (A or B)"),
            Concept::forall(Role("r"), Concept::disj(Concept::name("A"), Concept::name("B"))));
}

TEST(parse, tbox_comments_and_dedup) {
  TBox t = parse_tbox("# a comment\nA [= B.\nA [= B.\nB [= A.\n");
  EXPECT_EQ(t.size(), 2u);
}

TEST(parse, errors_carry_position) {
  try {
    parse_concept("A and\nand B");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line, 2);
    EXPECT_EQ(e.col, 1);
  }
  EXPECT_THROW(parse_concept("A andalso B"), ParseError);
  EXPECT_THROW(parse_tbox("A [= B"), ParseError);  // missing dot
  EXPECT_THROW(parse_concept("some r"), ParseError);
  EXPECT_THROW(parse_boolean_tbox("(top [= A) &&"), ParseError);
}

TEST(render, unicode_and_fo) {
  Concept c = Concept::exists(Role("r"), Concept::name("A"));
  EXPECT_EQ(render(c, RenderStyle::Unicode), "∃r.A");
  EXPECT_EQ(render(Concept::exists(Role("r", true), Concept::name("A")),
                   RenderStyle::Unicode),
            "∃r⁻.A");

  TBox t = parse_tbox("top [= A.");
  EXPECT_EQ(render(t, RenderStyle::Fo), "∀x0.(true → A(x0))");
  EXPECT_EQ(render(parse_tbox("some r A [= B."), RenderStyle::Fo),
            "∀x0.(∃x1.(r(x0,x1) ∧ A(x1)) → B(x0))");
}

TEST(render, round_trip_property) {
  Rng rng(7);
  GenOpts o;
  o.names = {"A", "B", "C"};
  o.roles = {"r", "s"};
  o.use_inverse = true;
  o.use_counting = true;
  for (int i = 0; i < 1000; ++i) {
    TBox t = dlextest::random_tbox(rng, o, 3);
    EXPECT_EQ(parse_tbox(render(t)), t) << render(t);
  }
  for (int i = 0; i < 500; ++i) {
    Concept c = dlextest::random_concept(rng, o, 0);
    EXPECT_EQ(parse_concept(render(c)), c) << render(c);
  }
}

TEST(check_dialect, spec_cases) {
  TBox range = parse_tbox("some inv(r) top [= B.");
  EXPECT_FALSE(check_dialect(range, Dialect::ALC));
  EXPECT_TRUE(check_dialect(range, Dialect::ALCI));

  TBox basic = parse_tbox("A [= some r top.");
  EXPECT_TRUE(check_dialect(basic, Dialect::DLLiteCore));

  TBox disj = parse_tbox("A and B [= bot.");
  EXPECT_FALSE(check_dialect(disj, Dialect::DLLiteCore));
  EXPECT_TRUE(check_dialect(disj, Dialect::DLLiteCoreD));
}

TEST(check_dialect, lattice_monotonicity) {
  Rng rng(11);
  GenOpts o;
  o.use_inverse = true;
  o.use_counting = true;
  for (int i = 0; i < 500; ++i) {
    Concept c = dlextest::random_concept(rng, o, 0);
    if (check_dialect(c, Dialect::EL)) EXPECT_TRUE(check_dialect(c, Dialect::ALC));
    if (check_dialect(c, Dialect::ALC)) {
      EXPECT_TRUE(check_dialect(c, Dialect::ALCI));
      EXPECT_TRUE(check_dialect(c, Dialect::ALCQ));
      EXPECT_TRUE(check_dialect(c, Dialect::ALCO));
    }
    if (check_dialect(c, Dialect::ALCI)) EXPECT_TRUE(check_dialect(c, Dialect::ALCQIO));
    if (check_dialect(c, Dialect::DLLiteCore)) EXPECT_TRUE(check_dialect(c, Dialect::DLLiteHorn));
  }
}

TEST(nnf, rewrites) {
  EXPECT_EQ(nnf(parse_concept("not (A and B)")), parse_concept("not A or not B"));
  EXPECT_EQ(nnf(parse_concept("not some r A")), parse_concept("only r not A"));
  EXPECT_EQ(nnf(parse_concept("not atmost 2 r A")), parse_concept("atleast 3 r A"));
  EXPECT_EQ(nnf(parse_concept("not atleast 0 r A")), Concept::bot());
  // Negation sticks to names and nominals only.
  Concept n = nnf(parse_concept("not (some r (A or not {a}) and not bot)"));
  n.for_each_subconcept([](const Concept& s) {
    if (s.kind() == ConceptKind::Not)
      EXPECT_TRUE(s.child().kind() == ConceptKind::Name ||
                  s.child().kind() == ConceptKind::Nominal);
  });
}

TEST(nnf, extension_equality_exhaustive) {
  // Every interpretation with up to 3 elements over {A},{r}, plus random
  // samples at sizes 4 and 5, for randomly generated concepts.
  Rng rng(3);
  GenOpts o;
  o.names = {"A"};
  o.roles = {"r"};
  o.use_counting = true;
  std::vector<Concept> cs;
  for (int i = 0; i < 25; ++i) cs.push_back(dlextest::random_concept(rng, o, 0));
  for (int n = 1; n <= 3; ++n) {
    dlextest::for_each_interp({"A"}, {"r"}, n, [&](const Interpretation& i) {
      for (const auto& c : cs) EXPECT_EQ(extension(i, c), extension(i, nnf(c)));
    });
  }
  for (int s = 0; s < 300; ++s) {
    Interpretation i = dlextest::random_interp(rng, 4 + s % 2, {"A"}, {"r"});
    for (const auto& c : cs) EXPECT_EQ(extension(i, c), extension(i, nnf(c)));
  }
}

TEST(nnf, counting_case_brute_force) {
  // ¬(⩽2 r A) = ⩾3 r A, checked on every interpretation with up to 4
  // elements over {A},{r}.
  Concept lhs = nnf(parse_concept("not atmost 2 r A"));
  Concept rhs = parse_concept("atleast 3 r A");
  ASSERT_EQ(lhs, rhs);
  Concept neg = parse_concept("not atmost 2 r A");
  for (int n = 1; n <= 4; ++n) {
    dlextest::for_each_interp({"A"}, {"r"}, n, [&](const Interpretation& i) {
      ASSERT_EQ(extension(i, neg), extension(i, rhs));
    });
  }
}

TEST(sub_closure, contents) {
  TBox t = parse_tbox("top [= A.");
  auto cl = sub_closure(t);
  auto has = [&](const Concept& c) {
    return std::find(cl.begin(), cl.end(), c) != cl.end();
  };
  EXPECT_TRUE(has(Concept::top()));
  EXPECT_TRUE(has(Concept::name("A")));
  EXPECT_TRUE(has(Concept::negation(Concept::top())));
  EXPECT_TRUE(has(Concept::negation(Concept::name("A"))));

  TBox t2 = parse_tbox("some r A [= B.");
  auto cl2 = sub_closure(t2);
  auto has2 = [&](const Concept& c) {
    return std::find(cl2.begin(), cl2.end(), c) != cl2.end();
  };
  EXPECT_TRUE(has2(parse_concept("some r A")));
  EXPECT_TRUE(has2(Concept::name("A")));
  EXPECT_TRUE(has2(Concept::name("B")));
  EXPECT_TRUE(has2(Concept::negation(parse_concept("some r A"))));

  // closure bound: 2 * (deduplicated subconcept count, plus top and bot)
  size_t occurrences = 0;
  for (const auto& ci : t2.inclusions()) {
    ci.lhs.for_each_subconcept([&](const Concept&) { ++occurrences; });
    ci.rhs.for_each_subconcept([&](const Concept&) { ++occurrences; });
  }
  EXPECT_LE(cl2.size(), 2 * (occurrences + 2));
}

TEST(sub_closure, deterministic_order) {
  TBox t = parse_tbox("some r A [= B.\nB and A [= some r A.");
  EXPECT_EQ(sub_closure(t), sub_closure(t));
  auto pos = sub_closure_positives(t);
  EXPECT_EQ(pos[0], Concept::top());
  EXPECT_EQ(pos[1], Concept::bot());
}

TEST(relativize, forced_cases) {
  BooleanTBox phi = parse_boolean_tbox("(top [= B)");
  BooleanTBox rel = relativize(phi, "A");
  ASSERT_EQ(rel.kind(), BooleanTBox::Kind::Atom);
  EXPECT_EQ(rel.ci().lhs, Concept::name("A"));
  EXPECT_EQ(rel.ci().rhs, Concept::name("B"));

  BooleanTBox phi2 = parse_boolean_tbox("(top [= some r B)");
  BooleanTBox rel2 = relativize(phi2, "A");
  EXPECT_EQ(rel2.ci().rhs, parse_concept("some r (A and B)"));

  EXPECT_THROW(relativize(parse_boolean_tbox("(top [= A)"), "A"), SemanticError);
}

TEST(relativize, restriction_semantics_law) {
  // 500 random cases: relativized satisfaction equals satisfaction of the
  // restriction, with the guard extension component-closed.
  Rng rng(23);
  GenOpts o;
  o.names = {"A", "B"};
  o.roles = {"r", "s"};
  o.use_counting = true;
  int checked = 0;
  while (checked < 500) {
    Interpretation i = dlextest::random_interp(rng, 2 + rng.below(4), {"A", "B"},
                                               {"r", "s"}, 30);
    auto comps = components(i);
    // Guard = a nonempty union of components (closed under role successors).
    std::string guard = "G";
    Interpretation gi = i;
    gi.declare_concept(guard);
    bool any = false;
    for (const auto& c : comps)
      if (rng.coin()) {
        for (const auto& id : c.base.domain()) gi.set_concept(guard, id);
        any = true;
      }
    if (!any) continue;
    BooleanTBox phi = BooleanTBox::atom({dlextest::random_concept(rng, o, 0),
                                         dlextest::random_concept(rng, o, 0)});
    if (rng.coin())
      phi = BooleanTBox::disj(phi, BooleanTBox::negation(BooleanTBox::atom(
                                       {dlextest::random_concept(rng, o, 0),
                                        dlextest::random_concept(rng, o, 0)})));
    Interpretation restricted = [&] {
      std::vector<Interpretation> keep;
      for (const auto& c : comps)
        if (gi.in_concept(guard, gi.index_of(c.base.domain()[0]))) keep.push_back(c.base);
      return union_of(keep);
    }();
    bool via_formula = satisfies(gi, relativize(phi, guard));
    bool via_restriction = satisfies(restricted, phi);
    ASSERT_EQ(via_formula, via_restriction);
    ++checked;
  }
}

TEST(basic_concepts, enumeration) {
  Signature sig;
  sig.add_concept_name("A");
  sig.add_role_name("r");
  auto bs = basic_concepts(sig);
  ASSERT_EQ(bs.size(), 5u);
  EXPECT_EQ(bs[0], Concept::top());
  EXPECT_EQ(bs[1], Concept::bot());
  EXPECT_EQ(bs[2], Concept::name("A"));
  EXPECT_EQ(bs[3], parse_concept("some r top"));
  EXPECT_EQ(bs[4], parse_concept("some inv(r) top"));

  EXPECT_EQ(basic_concepts(Signature{}).size(), 2u);

  Signature sig2;
  sig2.add_concept_name("A");
  sig2.add_concept_name("B");
  sig2.add_role_name("r");
  sig2.add_role_name("s");
  EXPECT_EQ(basic_concepts(sig2).size(), 2u + 2u + 2u * 2u);
}

TEST(signature, collection) {
  TBox t = parse_tbox("some inv(r) {a} [= A and B.");
  Signature sig = signature_of(t);
  EXPECT_EQ(sig.concept_names, (std::vector<std::string>{"A", "B"}));
  EXPECT_EQ(sig.role_names, (std::vector<std::string>{"r"}));
  EXPECT_EQ(sig.individual_names, (std::vector<std::string>{"a"}));
}

TEST(role, double_inversion) {
  Role r("r");
  EXPECT_EQ(r.inverse().inverse(), r);
}
