#include <doctest.h>

#include "cscycle/models.hpp"
#include "cscycle/theories.hpp"
#include "helpers.hpp"

using namespace csc;
using namespace testutil;

static const Language kLa = Language::linear_arithmetic(true);

TEST_CASE("base theory axioms") {
  Theory b = theory_B();
  CHECK(b.axioms.size() == 5);
  Formula a5 = parse_formula("x + s(y) = s(x + y)", kLa).universal_closure();
  CHECK(std::find(b.axioms.begin(), b.axioms.end(), a5) != b.axioms.end());

  Theory bp = theory_Bprime();
  CHECK(bp.axioms.size() == 9);
  Formula b1 = parse_formula("x = 0 | x = s(p(x))", kLa).universal_closure();
  CHECK(std::find(bp.axioms.begin(), bp.axioms.end(), b1) != bp.axioms.end());

  Theory v2 = theory_V(2);
  CHECK(v2.axioms.size() == 3);
  CHECK(v2.axioms[0] == parse_formula("0 + x = x + 0", kLa).universal_closure());

  Theory p = theory_P();
  CHECK(p.axioms.size() == 4);
  CHECK(p.language.has_predicate("P"));
  CHECK_FALSE(p.language.has_function("p"));
}

TEST_CASE("theory soundness at bounds") {
  Structure n(StructureId::standard());
  Bounds bounds{30, 1, 30};
  for (const Theory& t : {theory_B(), theory_Bprime(), theory_V(5)})
    CHECK(holds_bounded(n, t.axioms, bounds).result == Tri::True);
}

TEST_CASE("theory lookup by name") {
  CHECK(theory_by_name("B").axioms.size() == 5);
  CHECK(theory_by_name("Bprime").axioms.size() == 9);
  CHECK(theory_by_name("V:3").axioms.size() == 4);
  CHECK(theory_by_name("B+B2+B3").axioms.size() == 7);
  CHECK(theory_by_name("P").axioms.size() == 4);
  CHECK(theory_by_name("A4").axioms[0] == parse_formula("x + 0 = x", kLa).universal_closure());
  CHECK_THROWS_AS(theory_by_name("EA"), std::invalid_argument);
}

TEST_CASE("induction axiom shapes") {
  Language lp = Language::progression(true);
  Formula px = parse_formula("P(x)", lp);
  Formula full = induction_axiom(px, "x", InductionKind::Full);
  CHECK(full == parse_formula("P(0) & (forall x. P(x) -> P(s(x))) -> forall x. P(x)", lp));
  Formula eta = induction_axiom(px, "x", InductionKind::EtaInstance);
  CHECK(eta == parse_formula("P(0) & (forall x. P(x) -> P(s(x))) -> P(eta)", lp));

  // parameters are universally closed around the axiom
  Formula with_param = parse_formula("x + z = z + x", kLa);
  Formula closed = induction_axiom(with_param, "x", InductionKind::Full);
  CHECK(closed.kind() == Formula::Kind::Forall);
  CHECK(closed.var() == "z");

  CHECK_THROWS_AS(induction_axiom(px, "y", InductionKind::Full), std::invalid_argument);
}

TEST_CASE("inductivity checks") {
  Budget b = Budget::defaults();
  Theory empty{"empty", {}, kLa};

  // the negated sentence of the full even/odd cycle is inductive over the
  // empty theory
  Formula phi =
      Formula::negation(universal_sentence(even_odd_cycle()).replace_constant("eta", Term::var("x")));
  InductivityReport r = is_inductive(empty, phi, "x", b);
  CHECK(r.base.is_valid());
  CHECK(r.step.is_valid());

  Theory p = theory_P();
  InductivityReport rp = is_inductive(p, parse_formula("P(x)", p.language), "x", b);
  CHECK(rp.both_valid());

  InductivityReport r13 =
      is_inductive(theory_B(), parse_formula("x + 0 = y + x -> y = 0", kLa), "x", b);
  CHECK(r13.both_valid());

  // a non-inductive formula is rejected with a refuted base
  InductivityReport bad = is_inductive(empty, parse_formula("x != 0", kLa), "x", b);
  CHECK(bad.base.is_refuted());
}

TEST_CASE("fusion of inductive formulas") {
  Budget b = Budget::defaults();
  Theory empty{"empty", {}, kLa};
  Formula f1 = parse_formula("exists y. x = y", kLa);        // witness x itself
  Formula f2 = parse_formula("exists y. s(x) = s(y)", kLa);  // witness x
  CHECK(is_inductive(empty, f1, "x", b).both_valid());
  CHECK(is_inductive(empty, f2, "x", b).both_valid());
  Formula fused = fuse_inductive({f1, f2});
  CHECK(is_inductive(empty, fused, "x", b).both_valid());
  CHECK(classify_prenexed(fused).is_exists(1));
  CHECK(fuse_inductive({f1}) == f1);
  CHECK_THROWS_AS(fuse_inductive({}), std::invalid_argument);
}

TEST_CASE("rule closure over certificates") {
  Budget b = Budget::defaults();
  Theory empty{"empty", {}, kLa};
  Formula phi =
      Formula::negation(universal_sentence(even_odd_cycle()).replace_constant("eta", Term::var("x")));

  Theory closed = rule_closure_certificates(empty, {{phi, "x"}}, RuleKind::IndParamFreeEta, b);
  REQUIRE(closed.axioms.size() == 1);
  CHECK(closed.axioms[0] == phi.substitute({{"x", eta_term()}}).universal_closure());

  // the empty chain leaves the theory unchanged
  Theory same = rule_closure_certificates(theory_B(), {}, RuleKind::IndParamFree, b);
  CHECK(same.axioms == theory_B().axioms);

  // two certificates give a two-level extension
  Formula simple = parse_formula("exists y. x = y", kLa);
  Theory two = rule_closure_certificates(empty, {{phi, "x"}, {simple, "x"}},
                                         RuleKind::IndParamFreeEta, b);
  CHECK(two.axioms.size() == 2);

  // rejections: non-inductive, non-existential, parameters in a
  // parameter-free family
  CHECK_THROWS_AS(rule_closure_certificates(empty, {{parse_formula("x != 0", kLa), "x"}},
                                            RuleKind::IndParamFreeEta, b),
                  CertificateError);
  CHECK_THROWS_AS(
      rule_closure_certificates(empty, {{parse_formula("forall y. x + y = y + x", kLa), "x"}},
                                RuleKind::IndParamFreeEta, b),
      CertificateError);
  CHECK_THROWS_AS(rule_closure_certificates(empty, {{parse_formula("x + z = x + z", kLa), "x"}},
                                            RuleKind::IndParamFreeEta, b),
                  CertificateError);
}

TEST_CASE("the concrete clause sets") {
  ClauseSet c = even_odd_cycle();
  CHECK(c.size() == 8);
  ClauseSet expected_etas = parse_clause_set("[eta != x + x]\n[eta != s(x + x)]", kLa);
  for (const Clause& cl : expected_etas.clauses())
    CHECK(std::find(c.clauses().begin(), c.clauses().end(), cl) != c.clauses().end());
  ClauseSet base = clausify_theory(theory_by_name("B+B2"));
  for (const Clause& cl : base.clauses())
    CHECK(std::find(c.clauses().begin(), c.clauses().end(), cl) != c.clauses().end());

  // strict expansion of the negated cancellation formula at (0,1,2)
  ClauseSet e = cancellation_clause_set(0, 1, 2);
  Clause antecedent = parse_clause("[(eta + 0) + 0 = eta + (eta + 0)]", kLa);
  Clause conclusion = parse_clause("[eta != 0]", kLa);
  CHECK(std::find(e.clauses().begin(), e.clauses().end(), antecedent) != e.clauses().end());
  CHECK(std::find(e.clauses().begin(), e.clauses().end(), conclusion) != e.clauses().end());
  CHECK(e.size() == clausify_theory(theory_by_name("B+B2+B3")).size() + 2);

  Language lp = Language::progression(true);
  ClauseSet pf = progression_escape_clause_set();
  Clause escape = parse_clause("[~P(f(eta))]", lp);
  CHECK(std::find(pf.clauses().begin(), pf.clauses().end(), escape) != pf.clauses().end());
  CHECK(pf.size() == 5);
}

TEST_CASE("cancellation formula shapes") {
  Formula e112 = cancellation_formula(1, 1, 2);
  CHECK(e112 ==
        parse_formula("(x + 0) + #1 = x + (x + 0) -> x = #1", kLa));
  Formula e013 = cancellation_formula(0, 1, 3);
  CHECK(e013 ==
        parse_formula("(x + 0) + 0 = x + (x + (x + 0)) -> x = 0", kLa));
  CHECK_THROWS_AS(cancellation_formula(0, 0, 2), std::invalid_argument);
  CHECK_THROWS_AS(cancellation_formula(0, 2, 2), std::invalid_argument);
}

TEST_CASE("theory combination keeps languages consistent") {
  Theory mixed = theory_B().plus(theory_P());
  CHECK(mixed.language.has_predicate("P"));
  CHECK(mixed.language.has_function("+"));
  CHECK(mixed.axioms.size() == 9);
}
