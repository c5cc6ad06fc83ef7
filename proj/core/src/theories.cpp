#include <algorithm>
#include <sstream>

#include "cscycle/theories.hpp"

namespace csc {

Theory Theory::plus(const Theory& other, const std::string& new_name) const {
  Theory t;
  t.name = new_name.empty() ? name + "+" + other.name : new_name;
  t.axioms = axioms;
  for (const Formula& ax : other.axioms)
    if (std::find(t.axioms.begin(), t.axioms.end(), ax) == t.axioms.end()) t.axioms.push_back(ax);
  t.language = language.united(other.language);
  return t;
}

Theory Theory::with_axiom(const Formula& sentence, const std::string& new_name) const {
  Theory t = *this;
  if (!new_name.empty()) t.name = new_name;
  if (std::find(t.axioms.begin(), t.axioms.end(), sentence) == t.axioms.end())
    t.axioms.push_back(sentence);
  return t;
}

ClauseSet clausify_theory(const Theory& t) {
  ClauseSet out;
  for (const Formula& ax : t.axioms) out = out.united(clausify(ax.universal_closure()));
  return out;
}

namespace {
Formula la_axiom(const char* text) {
  static const Language lang = Language::linear_arithmetic(true);
  return parse_formula(text, lang).universal_closure();
}

const char* kAxiomA[5] = {"s(0) != 0", "p(0) = 0", "p(s(x)) = x", "x + 0 = x",
                          "x + s(y) = s(x + y)"};
const char* kAxiomB[4] = {"x = 0 | x = s(p(x))", "x + y = y + x", "x + (y + z) = (x + y) + z",
                          "x + y = x + z -> y = z"};
}  // namespace

Theory theory_B() {
  Theory t;
  t.name = "B";
  t.language = Language::linear_arithmetic(true);
  for (const char* ax : kAxiomA) t.axioms.push_back(la_axiom(ax));
  return t;
}

Theory theory_Bprime() {
  Theory t = theory_B();
  t.name = "Bprime";
  for (const char* ax : kAxiomB) t.axioms.push_back(la_axiom(ax));
  return t;
}

Formula axiom_V(unsigned k) {
  Term x = Term::var("x");
  Formula eq = Formula::atom(
      Literal::equality(Term::app("+", {numeral(k), x}), Term::app("+", {x, numeral(k)})));
  return eq.universal_closure();
}

Theory theory_V(unsigned max_k) {
  Theory t;
  t.name = "V:" + std::to_string(max_k);
  t.language = Language::linear_arithmetic(true);
  for (unsigned k = 0; k <= max_k; ++k) t.axioms.push_back(axiom_V(k));
  return t;
}

Theory theory_P() {
  Theory t;
  t.name = "P";
  t.language = Language::progression(true);
  for (const char* ax : {"0 != s(x)", "s(x) = s(y) -> x = y", "P(0)", "P(x) -> P(s(x))"})
    t.axioms.push_back(parse_formula(ax, t.language).universal_closure());
  return t;
}

Theory theory_by_name(const std::string& spec) {
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  std::string part;
  while (std::getline(ss, part, '+'))
    if (!part.empty()) parts.push_back(part);
  if (parts.empty()) throw std::invalid_argument("empty theory name");

  auto single = [](const std::string& n) -> Theory {
    if (n == "B") return theory_B();
    if (n == "Bprime") return theory_Bprime();
    if (n == "P") return theory_P();
    if (n.rfind("V:", 0) == 0) return theory_V((unsigned)std::stoul(n.substr(2)));
    if (n.size() == 2 && n[0] == 'A' && n[1] >= '1' && n[1] <= '5') {
      Theory t;
      t.name = n;
      t.language = Language::linear_arithmetic(true);
      t.axioms.push_back(la_axiom(kAxiomA[n[1] - '1']));
      return t;
    }
    if (n.size() == 2 && n[0] == 'B' && n[1] >= '1' && n[1] <= '4') {
      Theory t;
      t.name = n;
      t.language = Language::linear_arithmetic(true);
      t.axioms.push_back(la_axiom(kAxiomB[n[1] - '1']));
      return t;
    }
    throw std::invalid_argument("unknown theory name: " + n);
  };

  Theory t = single(parts[0]);
  for (std::size_t i = 1; i < parts.size(); ++i) t = t.plus(single(parts[i]));
  t.name = spec;
  return t;
}

Verdict prove(const Theory& t, const Formula& goal, const Budget& budget) {
  return prove(t.axioms, goal, budget);
}

Formula induction_axiom(const Formula& phi, const std::string& var, InductionKind kind) {
  std::vector<std::string> free = phi.free_vars();
  if (std::find(free.begin(), free.end(), var) == free.end())
    throw std::invalid_argument("induction variable " + var + " is not free in the formula");
  Formula base = phi.substitute({{var, numeral(0)}});
  Formula step = Formula::forall(
      var, Formula::implies(phi, phi.substitute({{var, Term::app("s", {Term::var(var)})}})));
  Formula conclusion = kind == InductionKind::Full
                           ? Formula::forall(var, phi)
                           : phi.substitute({{var, eta_term()}});
  return Formula::implies(Formula::conj(std::move(base), std::move(step)), std::move(conclusion))
      .universal_closure();
}

InductivityReport is_inductive(const Theory& t, const Formula& phi, const std::string& var,
                               const Budget& budget) {
  std::vector<std::string> free = phi.free_vars();
  if (std::find(free.begin(), free.end(), var) == free.end())
    throw std::invalid_argument("induction variable " + var + " is not free in the formula");
  InductivityReport r;
  r.base = prove(t, phi.substitute({{var, numeral(0)}}), budget);
  Formula step = Formula::implies(phi, phi.substitute({{var, Term::app("s", {Term::var(var)})}}));
  r.step = prove(t, step, budget);
  return r;
}

Formula fuse_inductive(const std::vector<Formula>& phis) {
  if (phis.empty()) throw std::invalid_argument("cannot fuse an empty list");
  return Formula::conj(phis);
}

Theory rule_closure_certificates(const Theory& t, const std::vector<Certificate>& certs,
                                 RuleKind kind, const Budget& budget) {
  Theory current = t;
  int level = 0;
  for (const Certificate& cert : certs) {
    ++level;
    std::vector<std::string> free = cert.phi.free_vars();
    if (std::find(free.begin(), free.end(), cert.var) == free.end())
      throw CertificateError("induction variable not free in certificate formula", {});
    bool param_free = kind == RuleKind::IndParamFree || kind == RuleKind::IndParamFreeEta;
    if (param_free && free.size() != 1)
      throw CertificateError("rule family admits no induction parameters", {});
    QuantClass qc = classify_prenexed(cert.phi);
    if (!(qc.is_open() || qc.is_exists(1)))
      throw CertificateError("certificate formula is not existential", {});

    InductivityReport report = is_inductive(current, cert.phi, cert.var, budget);
    if (!report.both_valid())
      throw CertificateError(
          "certificate rejected: base " + report.base.kind_str() + ", step " +
              report.step.kind_str(),
          report);

    bool eta_conclusion = kind == RuleKind::IndEta || kind == RuleKind::IndParamFreeEta;
    Formula conclusion =
        eta_conclusion ? cert.phi.substitute({{cert.var, eta_term()}}).universal_closure()
                       : Formula::forall(cert.var, cert.phi).universal_closure();
    current = current.with_axiom(conclusion,
                                 current.name + "#" + std::to_string(level));
  }
  return current;
}

// -- concrete clause sets ---------------------------------------------------------

ClauseSet even_odd_cycle() {
  Language lang = Language::linear_arithmetic(true);
  ClauseSet base = clausify_theory(theory_by_name("B+B2"));
  ClauseSet etas = parse_clause_set("[eta != x + x]\n[eta != s(x + x)]", lang);
  return base.united(etas);
}

Formula cancellation_formula(unsigned k, unsigned n, unsigned m) {
  if (!(0 < n && n < m))
    throw std::invalid_argument("cancellation parameters require 0 < n < m");
  Term x = Term::var("x");
  Term lhs = Term::app("+", {scalar_mul(n, x), numeral((m - n) * k)});
  Term rhs = scalar_mul(m, x);
  return Formula::implies(Formula::atom(Literal::equality(lhs, rhs)),
                          Formula::atom(Literal::equality(x, numeral(k))));
}

ClauseSet cancellation_clause_set(unsigned k, unsigned n, unsigned m) {
  Formula at_eta = cancellation_formula(k, n, m).substitute({{"x", eta_term()}});
  ClauseSet negated = clausify(Formula::negation(at_eta));
  return clausify_theory(theory_by_name("B+B2+B3")).united(negated);
}

ClauseSet progression_escape_clause_set() {
  Language lang = Language::progression(true);
  Formula escaped = parse_formula("~P(f(eta))", lang);
  return clausify_theory(theory_P()).united(clausify(escaped));
}

}  // namespace csc
