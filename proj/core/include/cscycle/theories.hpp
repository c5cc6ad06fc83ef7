#pragma once

// Builders for the named base theories, induction axioms and rules,
// inductivity checking, fusion of inductive formulas, and the concrete
// clause sets used by the demos and the acceptance suite.

#include <string>
#include <vector>

#include "cscycle/entailment.hpp"
#include "cscycle/syntax.hpp"

namespace csc {

struct Theory {
  std::string name;
  std::vector<Formula> axioms;  // sentences
  Language language = Language::linear_arithmetic();

  Theory plus(const Theory& other, const std::string& new_name = "") const;
  Theory with_axiom(const Formula& sentence, const std::string& new_name = "") const;
};

/// Clause form of all axioms.
ClauseSet clausify_theory(const Theory& t);

/// The five base axioms: s(0) != 0, p(0) = 0, p(s(x)) = x, x + 0 = x,
/// x + s(y) = s(x + y).
Theory theory_B();
/// Base axioms plus the four extension axioms (predecessor totality,
/// commutativity, associativity, cancellation).
Theory theory_Bprime();
/// numeral(k) + x = x + numeral(k) for k = 0..max_k.
Theory theory_V(unsigned max_k);
/// The progression theory over {0, s, P, f}: zero/successor separation and
/// injectivity, P(0), and P(x) -> P(s(x)).
Theory theory_P();

/// The k-th numeral-commutation axiom.
Formula axiom_V(unsigned k);

/// Builtin lookup: "B", "Bprime", "V:k", "P", the individual axiom names
/// "A1".."A5" and "B1".."B4", and '+'-joined combinations such as "B+B2+B3".
Theory theory_by_name(const std::string& spec);

/// Convenience wrapper around the engine: T |- phi.
Verdict prove(const Theory& t, const Formula& goal, const Budget& budget);

enum class InductionKind { Full, EtaInstance };

/// The induction axiom for phi in x: premises phi(0) and the closed step,
/// conclusion either forall x phi or the eta instance. The whole formula is
/// universally closed over the parameters.
Formula induction_axiom(const Formula& phi, const std::string& var, InductionKind kind);

struct InductivityReport {
  Verdict base;
  Verdict step;
  bool both_valid() const { return base.is_valid() && step.is_valid(); }
};

/// T-inductivity of phi in var: T |- phi(0) and T |- phi(x) -> phi(s(x)).
InductivityReport is_inductive(const Theory& t, const Formula& phi, const std::string& var,
                               const Budget& budget);

/// Conjunction of the given formulas; fusing T-inductive formulas yields a
/// T-inductive formula. Throws on empty input.
Formula fuse_inductive(const std::vector<Formula>& phis);

/// The four induction rule families: with or without parameters, concluding
/// the universal statement or only its eta instance.
enum class RuleKind { Ind, IndParamFree, IndEta, IndParamFreeEta };

struct Certificate {
  Formula phi;
  std::string var;
};

struct CertificateError : std::runtime_error {
  InductivityReport report;
  CertificateError(const std::string& msg, InductivityReport r)
      : std::runtime_error(msg), report(std::move(r)) {}
};

/// Extends T by the rule conclusions of the certificates, verifying each
/// formula inductive over the theory built so far (one nesting level per
/// certificate). Throws CertificateError when a certificate fails its shape
/// restriction or its inductivity check.
Theory rule_closure_certificates(const Theory& t, const std::vector<Certificate>& certs,
                                 RuleKind kind, const Budget& budget);

// -- concrete clause sets ------------------------------------------------------

/// The even/odd clause set: the base axioms with commutativity, plus
/// [eta != x + x] and [eta != s(x + x)].
ClauseSet even_odd_cycle();

/// The weak cancellation formula n*x + numeral((m-n)k) = m*x -> x = numeral(k)
/// in the variable x, with the scalar multiples fully expanded. Requires
/// 0 < n < m.
Formula cancellation_formula(unsigned k, unsigned n, unsigned m);

/// Clause form of B + B2 + B3 + the negated cancellation formula at eta.
ClauseSet cancellation_clause_set(unsigned k, unsigned n, unsigned m);

/// Clause form of the progression theory plus ~P(f(eta)).
ClauseSet progression_escape_clause_set();

}  // namespace csc
