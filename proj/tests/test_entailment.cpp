#include <doctest.h>

#include "cscycle/entailment.hpp"
#include "cscycle/theories.hpp"
#include "helpers.hpp"

using namespace csc;
using namespace testutil;

static const Language kLa = Language::linear_arithmetic(true);

TEST_CASE("ground decisions") {
  CHECK(decide_ground(parse_formula("s(0) + s(0) = s(s(0))", kLa)));
  CHECK(decide_ground(parse_formula("p(0) = 0 & s(0) != 0", kLa)));
  CHECK_FALSE(decide_ground(parse_formula("#3 = #4", kLa)));
  CHECK_THROWS_AS(decide_ground(parse_formula("x = 0", kLa)), std::invalid_argument);
  CHECK_THROWS_AS(decide_ground(parse_formula("forall x. x = x", kLa)), std::invalid_argument);
}

TEST_CASE("ground decisions agree with an independent evaluator") {
  Rng rng(42);
  int done = 0;
  while (done < 100) {
    Formula f = random_matrix(rng, {}, 4);
    if (!f.free_vars().empty()) continue;
    std::map<std::string, long long> env;
    CHECK(decide_ground(f) == nat_holds(f, env, 0));
    ++done;
  }
}

TEST_CASE("existential witness search") {
  Verdict v = prove_exists1_by_witness(parse_formula("exists x. x + x = #4", kLa), 10);
  REQUIRE(v.is_valid());
  REQUIRE(v.trace.steps.size() == 1);
  CHECK(v.trace.steps[0].substitution.begin()->second == numeral(2));
  CHECK(replay_trace(v.trace));

  CHECK(prove_exists1_by_witness(parse_formula("exists x. s(x) = 0", kLa), 50).is_unknown());

  Verdict pair =
      prove_exists1_by_witness(parse_formula("exists x. exists y. (x + y = #3 & x != 0)", kLa), 10);
  REQUIRE(pair.is_valid());
  auto it = pair.trace.steps[0].substitution.begin();
  CHECK(it->second == numeral(1));
  CHECK(std::next(it)->second == numeral(2));
}

TEST_CASE("unsatisfiability of the even/odd base case") {
  ClauseSet c0 = instantiate_eta(even_odd_cycle(), numeral(0));
  Verdict v = check_unsat(c0, Budget::defaults());
  REQUIRE(v.is_valid());
  std::string err;
  CHECK(replay_trace(v.trace, &err));
  INFO(err);
  // some grounding step instantiates x0 with 0
  bool grounds_zero = false;
  for (const TraceStep& s : v.trace.steps)
    if (s.kind == TraceStep::Kind::Grounding)
      for (const auto& [var, t] : s.substitution)
        if (t == numeral(0)) grounds_zero = true;
  CHECK(grounds_zero);
}

TEST_CASE("satisfiable sets get bounded countermodel evidence") {
  Verdict taut = check_unsat(parse_clause_set("[x = x]", kLa), Budget::defaults());
  REQUIRE(taut.is_refuted());
  CHECK(taut.structure == "N");

  Verdict e = check_unsat(cancellation_clause_set(0, 1, 2), Budget::defaults());
  REQUIRE(e.is_refuted());
  CHECK(e.structure == "M:1");
  CHECK(e.interpretation.at("eta") == ModelElement{1, 0});
  CHECK(e.bound_used == 30);
}

TEST_CASE("entailment checks") {
  ClauseSet c = even_odd_cycle();
  Budget b = Budget::defaults();
  CHECK(check_entails(instantiate_eta(c, Term::app("s", {eta_term()})), c, b).is_valid());
  CHECK(check_entails(c, c, b).is_valid());

  Verdict bad = check_entails(clausify_theory(theory_B()),
                              parse_clause_set("[s(0) = 0]", kLa), b);
  REQUIRE(bad.is_refuted());
  CHECK(bad.structure == "N");
}

TEST_CASE("provability from the base theory") {
  Budget b = Budget::defaults();
  CHECK(prove(theory_B(), parse_formula("s(x) != 0", kLa), b).is_valid());
  CHECK(prove(theory_B(), parse_formula("s(x) = s(y) -> x = y", kLa), b).is_valid());

  Verdict odd = prove(theory_B(), parse_formula("exists y. s(0) = y + y", kLa), b);
  REQUIRE(odd.is_refuted());
  CHECK(odd.structure == "N");

  CHECK_THROWS_AS(prove(theory_B(), parse_formula("exists y. forall x. exists z. x + y = z", kLa), b),
                  FragmentError);
}

TEST_CASE("verdicts are deterministic and monotone in the budget") {
  ClauseSet c0 = instantiate_eta(even_odd_cycle(), numeral(0));
  Budget small = Budget::defaults();
  Verdict v1 = check_unsat(c0, small);
  Verdict v2 = check_unsat(c0, small);
  REQUIRE(v1.kind == v2.kind);
  CHECK(v1.trace.steps.size() == v2.trace.steps.size());

  Budget large = small;
  large.max_inferences *= 4;
  CHECK(check_unsat(c0, large).is_valid());

  ClauseSet e = cancellation_clause_set(1, 1, 2);
  Verdict r1 = check_unsat(e, small);
  Verdict r2 = check_unsat(e, small);
  REQUIRE(r1.is_refuted());
  CHECK(r1.structure == r2.structure);
  CHECK(r1.interpretation == r2.interpretation);
}

TEST_CASE("budget validation") {
  Budget bad;
  bad.max_inferences = 0;
  CHECK_THROWS_AS(check_unsat(ClauseSet(), bad), std::invalid_argument);
}

TEST_CASE("tiny budgets yield unknown, not wrong answers") {
  ClauseSet c = even_odd_cycle();
  Budget tiny = Budget::tiny();
  Verdict v = check_entails(instantiate_eta(c, Term::app("s", {eta_term()})), c, tiny);
  CHECK_FALSE(v.is_valid());  // cannot prove it this cheaply, must not claim to
}

TEST_CASE("trace replay rejects corrupted traces") {
  ClauseSet c0 = instantiate_eta(even_odd_cycle(), numeral(0));
  Verdict v = check_unsat(c0, Budget::defaults());
  REQUIRE(v.is_valid());
  ProofTrace broken = v.trace;
  // damage the final step
  REQUIRE(!broken.steps.empty());
  broken.steps.pop_back();
  std::string err;
  bool ok = replay_trace(broken, &err) && broken.steps.back().clause.empty();
  CHECK_FALSE(ok);
}
