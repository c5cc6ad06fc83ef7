#include <doctest.h>

#include "cscycle/models.hpp"
#include "cscycle/syntax.hpp"
#include "helpers.hpp"

using namespace csc;
using namespace testutil;

static const Language kLa = Language::linear_arithmetic(true);

TEST_CASE("term parsing and printing") {
  Term t = parse_term("s(s(0)) + x", kLa);
  CHECK(t == Term::app("+", {numeral(2), Term::var("x")}));
  CHECK(parse_term("#3", kLa) == numeral(3));
  CHECK(parse_term("(x + y) + z", kLa) ==
        Term::app("+", {Term::app("+", {Term::var("x"), Term::var("y")}), Term::var("z")}));
  // left associativity
  CHECK(parse_term("x + y + z", kLa) == parse_term("(x + y) + z", kLa));
  CHECK(parse_term(parse_term("p(s(eta)) + #2", kLa).str(), kLa) ==
        parse_term("p(s(eta)) + #2", kLa));
}

TEST_CASE("parse errors carry positions") {
  CHECK_THROWS_AS(parse_term("s(x", kLa), ParseError);
  CHECK_THROWS_AS(parse_term("f(x)", kLa), ParseError);   // undeclared
  CHECK_THROWS_AS(parse_term("s(x, y)", kLa), ParseError);  // arity
  try {
    parse_formula("forall x. x =", kLa);
    CHECK(false);
  } catch (const ParseError& e) {
    CHECK(e.line == 1);
    CHECK(e.col > 1);
  }
  // eta unavailable without the flag
  Language no_eta = Language::linear_arithmetic(false);
  CHECK_THROWS_AS(parse_term("eta", no_eta), ParseError);
}

TEST_CASE("clause orientation follows the one-variable-side-left rule") {
  Clause c = parse_clause("[eta != x + x]", kLa);
  REQUIRE(c.size() == 1);
  const Literal& l = c.literals()[0];
  CHECK_FALSE(l.positive);
  CHECK(l.lhs() == Term::app("+", {Term::var("x0"), Term::var("x0")}));
  CHECK(l.rhs() == eta_term());
}

TEST_CASE("numerals and scalar multiples") {
  CHECK(numeral(0) == Term::app("0"));
  CHECK(scalar_mul(2, Term::var("x")) ==
        Term::app("+", {Term::var("x"), Term::app("+", {Term::var("x"), numeral(0)})}));
  CHECK(scalar_mul(1, eta_term()) == Term::app("+", {eta_term(), numeral(0)}));
  // n * v in the standard model
  for (unsigned n = 0; n <= 10; ++n)
    for (unsigned v = 0; v <= 20; v += 5)
      CHECK(normalize_ground_term(scalar_mul(n, numeral(v))) == n * v);
}

TEST_CASE("ground term normalization") {
  CHECK(normalize_ground_term(parse_term("s(0) + s(s(0))", kLa)) == 3);
  CHECK(normalize_ground_term(parse_term("p(0)", kLa)) == 0);
  CHECK(normalize_ground_term(parse_term("p(s(s(0)))", kLa)) == 1);
  CHECK_THROWS(normalize_ground_term(Term::var("x")));
}

TEST_CASE("substitution is simultaneous and capture avoiding") {
  Formula f = parse_formula("x = y", kLa);
  CHECK(f.substitute({{"x", parse_term("s(y)", kLa)}}) == parse_formula("s(y) = y", kLa));
  CHECK(f.substitute({{"x", Term::var("y")}, {"y", Term::var("x")}}) ==
        parse_formula("y = x", kLa));

  Formula g = parse_formula("exists y. x = y", kLa);
  Formula renamed = g.substitute({{"x", Term::var("y")}});
  REQUIRE(renamed.kind() == Formula::Kind::Exists);
  CHECK(renamed.var() != "y");  // binder renamed
  CHECK(renamed.child().lit().lhs() == Term::var("y"));
}

TEST_CASE("quantifier classification") {
  CHECK(classify_quantifier(parse_formula("x = 0", kLa)).is_open());
  QuantClass e1 = classify_quantifier(parse_formula("exists y. x = y + y", kLa));
  CHECK(e1.shape == QuantShape::ExistsK);
  CHECK(e1.k == 1);
  QuantClass a2 = classify_quantifier(parse_formula("forall x. exists y. x = y", kLa));
  CHECK(a2.shape == QuantShape::ForallK);
  CHECK(a2.k == 2);
  CHECK(classify_quantifier(parse_formula("(exists y. x = y) & x = 0", kLa)).shape ==
        QuantShape::Unclassified);
  // logically existential after prenexing
  CHECK(classify_prenexed(parse_formula("(exists y. x = y) & (exists y. x = s(y))", kLa))
            .is_exists(1));
}

TEST_CASE("clause form of universal sentences") {
  ClauseSet cs = clausify(parse_formula("forall x. (x = 0 | x = s(p(x)))", kLa));
  CHECK(cs == parse_clause_set("[x = 0, x = s(p(x))]", kLa));
  CHECK_THROWS_AS(clausify(parse_formula("exists y. y = 0", kLa)), FragmentError);

  // round trip on a fixed example
  ClauseSet c = parse_clause_set("[x = 0]\n[y != 0]", kLa);
  CHECK(clausify(universal_sentence(c)) == c);

  // universal sentence of the eta clauses has the per-clause closure shape
  ClauseSet etas = parse_clause_set("[eta != x + x]\n[eta != s(x + x)]", kLa);
  Formula s = universal_sentence(etas);
  CHECK(s.kind() == Formula::Kind::And);
  CHECK(s.child(0).kind() == Formula::Kind::Forall);
  CHECK(s.child(1).kind() == Formula::Kind::Forall);
}

TEST_CASE("print-parse identity on random terms and formulas") {
  Rng rng(20240811);
  std::vector<std::string> vars{"x", "y", "z"};
  for (int i = 0; i < 700; ++i) {
    Term t = random_term(rng, vars, 4);
    CHECK(parse_term(t.str(), kLa) == t);
  }
  for (int i = 0; i < 400; ++i) {
    Formula f = random_exists1(rng, 2, 1, 5);
    CAPTURE(f.str());
    CHECK(parse_formula(f.str(), kLa) == f);
  }
}

TEST_CASE("clause canonical form is renaming invariant") {
  Clause a = parse_clause("[u + v = v + u, s(u) != 0]", kLa);
  Clause b = parse_clause("[s(a) != 0, a + b = b + a]", kLa);
  CHECK(a == b);
  // identical literals collapse; same-shape literals on distinct shared
  // variables do not
  CHECK(parse_clause("[x = 0, x = 0]", kLa).size() == 1);
  CHECK(parse_clause("[x = 0, y = 0]", kLa).size() == 2);
}

TEST_CASE("cls of cls_inv is the identity on random canonical clause sets") {
  Rng rng(7);
  std::vector<std::string> vars{"x", "y"};
  int done = 0;
  while (done < 60) {
    std::vector<Clause> clauses;
    int n = pick(rng, 1, 3);
    for (int i = 0; i < n; ++i) {
      std::vector<Literal> lits;
      int k = pick(rng, 1, 2);
      for (int j = 0; j < k; ++j) lits.push_back(random_literal(rng, vars, 2));
      Clause c(std::move(lits));
      if (c.tautological()) continue;
      clauses.push_back(std::move(c));
    }
    if (clauses.empty()) continue;
    ClauseSet cs(std::move(clauses));
    CHECK(clausify(universal_sentence(cs)) == cs);
    ++done;
  }
}

TEST_CASE("disjoining clause sets") {
  ClauseSet a = parse_clause_set("[x = 0]", kLa);
  ClauseSet b = parse_clause_set("[x = s(0)]", kLa);
  CHECK(disjoin_clause_sets({a, b}) == parse_clause_set("[x = 0, y = #1]", kLa));
  CHECK_THROWS_AS(disjoin_clause_sets({}), std::invalid_argument);

  // bounded satisfaction agrees with the member disjunction on the structure
  // family, for random eta-free families
  Rng rng(99);
  Bounds bounds{10, 1, 10};
  std::vector<std::string> vars{"x"};
  for (int round = 0; round < 25; ++round) {
    std::vector<ClauseSet> family;
    int n = pick(rng, 1, 3);
    for (int i = 0; i < n; ++i) {
      std::vector<Clause> clauses;
      int m = pick(rng, 1, 2);
      for (int j = 0; j < m; ++j)
        clauses.push_back(Clause({random_literal(rng, vars, 1)}));
      family.push_back(ClauseSet(std::move(clauses)));
    }
    ClauseSet joined = disjoin_clause_sets(family);
    for (auto id : {StructureId::standard(), StructureId::m_chain(1), StructureId::m_chain(2)}) {
      Structure s(id);
      bool any = false;
      for (const ClauseSet& member : family)
        if (holds_bounded(s, member, bounds).result == Tri::True) any = true;
      Tri whole = holds_bounded(s, joined, bounds).result;
      REQUIRE(whole != Tri::Unknown);
      CHECK((whole == Tri::True) == any);
    }
  }
}

TEST_CASE("eta instantiation") {
  ClauseSet etas = parse_clause_set("[eta != x + x]\n[eta != s(x + x)]", kLa);
  ClauseSet at0 = instantiate_eta(etas, numeral(0));
  CHECK(at0 == parse_clause_set("[0 != x + x]\n[0 != s(x + x)]", kLa));
  ClauseSet shifted = instantiate_eta(etas, Term::app("s", {eta_term()}));
  CHECK(shifted == parse_clause_set("[s(eta) != x + x]\n[s(eta) != s(x + x)]", kLa));
  ClauseSet free = parse_clause_set("[x + 0 = x]", kLa);
  CHECK(instantiate_eta(free, numeral(7)) == free);
}

TEST_CASE("language construction and validation") {
  CHECK_THROWS_AS(Language::make({{"eta", 0}}, {}, true), LanguageError);
  CHECK_THROWS_AS(Language::make({{"s", 2}}, {}, true), LanguageError);
  CHECK_THROWS_AS(Language::make({{"f", 1}}, {{"f", 1}}, true), LanguageError);
  Language l = Language::make({{"f", 1}}, {{"Q", 2}}, true);
  CHECK(l.function_arity("f") == 1);
  CHECK(l.predicate_arity("Q") == 2);
  CHECK(l.extends(kLa));
  CHECK_FALSE(kLa.extends(l));
}

TEST_CASE("predicate literals parse in the progression language") {
  Language lp = Language::progression(true);
  Clause c = parse_clause("[~P(x), P(s(x))]", lp);
  CHECK(c.size() == 2);
  Formula f = parse_formula("P(x) -> P(s(x))", lp);
  CHECK(f.kind() == Formula::Kind::Implies);
  CHECK(parse_formula(f.str(), lp) == f);
}
