#include <doctest.h>

#include "cscycle/models.hpp"
#include "cscycle/theories.hpp"
#include "helpers.hpp"

using namespace csc;
using namespace testutil;

static const Language kLa = Language::linear_arithmetic(true);

TEST_CASE("type join and truncated subtraction") {
  CHECK(type_join(0, 5) == 5);
  CHECK(type_join(3, 5) == 3);
  CHECK(type_join(0, 0) == 0);
  CHECK(truncated_sub(5, 3) == 2);
  CHECK(truncated_sub(3, 5) == 0);
  CHECK(truncated_sub(0, 0) == 0);

  // associativity, and commutativity restricted to {0, 1}
  for (unsigned a = 0; a <= 10; ++a)
    for (unsigned b = 0; b <= 10; ++b) {
      for (unsigned c = 0; c <= 10; ++c)
        CHECK(type_join(a, type_join(b, c)) == type_join(type_join(a, b), c));
      if (a <= 1 && b <= 1) CHECK(type_join(a, b) == type_join(b, a));
    }
}

TEST_CASE("chain structure evaluation") {
  Structure m1(StructureId::m_chain(1));
  std::map<std::string, ModelElement> a{{"x", {0, 2}}, {"y", {1, 3}}};
  CHECK(eval_term(m1, a, {}, parse_term("x + y", kLa)) == ModelElement{1, 5});
  CHECK(eval_term(m1, {}, {}, parse_term("p(0)", kLa)) == ModelElement{0, 0});
  std::map<std::string, ModelElement> b{{"x", {1, 0}}};
  CHECK(eval_term(m1, b, {}, parse_term("p(x)", kLa)) == ModelElement{1, -1});
  CHECK(eval_term(m1, b, {}, parse_term("s(x)", kLa)) == ModelElement{1, 1});
}

TEST_CASE("progression structure evaluation") {
  Structure ps(StructureId::pstruct());
  Language lp = Language::progression(true);
  CHECK(eval_term(ps, {}, {}, parse_term("f(eta)", lp)) == ModelElement{1, 0});
  CHECK(ps.eval_pred("P", {{0, 4}}));
  CHECK_FALSE(ps.eval_pred("P", {{1, 0}}));
  CHECK_THROWS_AS(eval_term(ps, {}, {}, parse_term("x + y", kLa)), EvalError);
}

TEST_CASE("domain closure under random evaluation") {
  Rng rng(3);
  std::vector<std::string> vars{"x", "y"};
  for (auto id : {StructureId::standard(), StructureId::integers(), StructureId::m_chain(2),
                  StructureId::shoenfield()}) {
    Structure s(id);
    Bounds bounds{6, 2, 6};
    std::vector<ModelElement> box = s.box(bounds);
    for (int i = 0; i < 300; ++i) {
      std::map<std::string, ModelElement> env{
          {"x", box[pick(rng, 0, (int)box.size() - 1)]},
          {"y", box[pick(rng, 0, (int)box.size() - 1)]}};
      Term t = random_term(rng, vars, 3);
      CHECK(s.in_domain(eval_term(s, env, {}, t)));
    }
  }
}

TEST_CASE("standard chain of M_I agrees with the standard model") {
  Structure m2(StructureId::m_chain(2));
  Rng rng(11);
  for (int i = 0; i < 200; ++i) {
    Term t = random_term(rng, {}, 3);
    ModelElement e = eval_term(m2, {}, {}, t);
    CHECK(e.type == 0);
    CHECK(e.value == (long long)normalize_ground_term(t));
  }
}

TEST_CASE("bounded satisfaction of the base theory") {
  Bounds bounds{20, 2, 15};
  Structure m1(StructureId::m_chain(1));
  CHECK(holds_bounded(m1, theory_B().axioms, bounds).result == Tri::True);
  CHECK(holds_bounded(m1, {theory_by_name("B2").axioms}, bounds).result == Tri::True);

  Structure m2(StructureId::m_chain(2));
  BoundedReport b2 = holds_bounded(m2, clausify(theory_by_name("B2").axioms[0]), bounds);
  REQUIRE(b2.result == Tri::False);
  REQUIRE(b2.counter_assignment.size() == 2);
  CHECK(b2.counter_assignment.at("x0") == ModelElement{1, 0});
  CHECK(b2.counter_assignment.at("x1") == ModelElement{2, 0});

  Structure n(StructureId::standard());
  BoundedReport sx = holds_bounded(n, parse_formula("s(x) = x", kLa), bounds);
  REQUIRE(sx.result == Tri::False);

  // the integers violate the p(0) axiom
  Structure z(StructureId::integers());
  CHECK(holds_bounded(z, parse_formula("p(0) = 0", kLa), bounds).result == Tri::False);
}

TEST_CASE("exhausted existential search reports unknown") {
  Structure n(StructureId::standard());
  Bounds bounds{10, 1, 5};
  // a witness beyond the witness cap exists but cannot be found
  Formula f = parse_formula("exists y. y = #9", kLa);
  CHECK(eval_bounded(n, {}, {}, f, bounds) == Tri::Unknown);
  Formula g = parse_formula("exists y. y = #3", kLa);
  CHECK(eval_bounded(n, {}, {}, g, bounds) == Tri::True);
}

TEST_CASE("integer chain embedding") {
  CHECK(embed_into_chain(1, -3, 1) == ModelElement{1, -3});
  CHECK_THROWS_AS(embed_into_chain(2, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(embed_into_chain(0, 0, 1), std::invalid_argument);

  Structure m1(StructureId::m_chain(1));
  for (long long x = -10; x <= 10; x += 4)
    for (long long y = -10; y <= 10; y += 3) {
      ModelElement ex = embed_into_chain(1, x, 1), ey = embed_into_chain(1, y, 1);
      CHECK(m1.eval_fun("+", {ex, ey}) == embed_into_chain(1, x + y, 1));
      CHECK(m1.eval_fun("s", {ex}) == embed_into_chain(1, x + 1, 1));
      CHECK(m1.eval_fun("p", {ex}) == embed_into_chain(1, x - 1, 1));
    }

  // the embedding transfers satisfaction of a 0-free existential formula
  Formula even = parse_formula("exists y. x = y + y", kLa);
  Bounds bounds{30, 1, 30};
  for (long long sol : {-6, -2, 4}) {
    std::map<std::string, ModelElement> env{{"x", embed_into_chain(1, sol, 1)}};
    CHECK(eval_bounded(m1, env, {}, even, bounds) == Tri::True);
  }
}

TEST_CASE("cancellation witness in the one-chain structure") {
  CancellationWitnessReport r = cancellation_witness(0, 1, 2);
  CHECK(r.witness == ModelElement{1, 0});
  CHECK(r.lhs == ModelElement{1, 0});
  CHECK(r.rhs == ModelElement{1, 0});
  CHECK(r.ok());

  CancellationWitnessReport r2 = cancellation_witness(1, 1, 2);
  CHECK(r2.witness == ModelElement{1, 1});
  CHECK(r2.lhs == ModelElement{1, 2});
  CHECK(r2.sides_equal);
  CHECK(r2.differs_from_numeral);

  CHECK(cancellation_witness(0, 1, 3).ok());
  CHECK(cancellation_witness(2, 2, 5).ok());
  CHECK_THROWS_AS(cancellation_witness(0, 2, 2), std::invalid_argument);
}

TEST_CASE("induction failure witness") {
  Bounds bounds{20, 2, 15};
  InductionFailureReport r = induction_failure_witness(1, bounds);
  CHECK(r.base_holds);
  CHECK(r.step_holds_at_bounds);
  CHECK(r.conclusion_fails);
  CHECK(r.axiom_bounded_violated);
  CHECK(r.standard_sampled.size() == 6);

  // the padding formula also fails on the second chain
  Structure m2(StructureId::m_chain(2));
  InductionFailureReport r2 = induction_failure_witness(2, bounds);
  CHECK(r2.axiom_bounded_violated);
  std::map<std::string, ModelElement> env{{"x", {2, 3}}};
  CHECK(eval_bounded(m2, env, {}, r2.induction_formula, bounds) != Tri::True);

  CHECK_THROWS_AS(induction_failure_witness(0, bounds), std::invalid_argument);
}

TEST_CASE("paired structure odd/even check") {
  OddEvenReport r = shoenfield_odd_even_check(10);
  CHECK(r.bprime_holds_at_bounds);
  CHECK_FALSE(r.witness_even);
  CHECK_FALSE(r.witness_odd);
  CHECK(r.ok());

  // (0,1) is odd via (0,0); (2,0) is even via (1,0)
  Structure s(StructureId::shoenfield());
  ModelElement zero{0, 0};
  CHECK(s.eval_fun("s", {s.eval_fun("+", {zero, zero})}) == ModelElement{0, 1});
  ModelElement half{1, 0};
  CHECK(s.eval_fun("+", {half, half}) == ModelElement{2, 0});
}

TEST_CASE("structure ids parse and print") {
  CHECK(StructureId::parse("N") == StructureId::standard());
  CHECK(StructureId::parse("M:2") == StructureId::m_chain(2));
  CHECK(StructureId::parse("shoenfield") == StructureId::shoenfield());
  CHECK(StructureId::parse("pstruct") == StructureId::pstruct());
  CHECK(StructureId::m_chain(1).str() == "M:1");
  CHECK_THROWS_AS(StructureId::parse("Q"), std::invalid_argument);
}
