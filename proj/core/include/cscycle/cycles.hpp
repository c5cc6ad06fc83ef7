#pragma once

// Verification of clause set cycles and refutations, the offset/step
// reductions, and the two translations between cycles and inductive formulas.
//
// A clause set C(eta) is a cycle when C(s(eta)) entails C(eta) and C(0) is
// unsatisfiable. All obligations go through the tri-state engine: a report
// says yes only when every verdict is Valid, no when some verdict is Refuted,
// and undetermined otherwise.

#include <string>
#include <vector>

#include "cscycle/entailment.hpp"
#include "cscycle/syntax.hpp"

namespace csc {

enum class CycleStatus { Yes, No, Undetermined };

std::string cycle_status_str(CycleStatus s);

struct CycleReport {
  Verdict descent;                  // C(s^{j+k}(eta)) |= C(s^k(eta))
  std::vector<Verdict> base_cases;  // C(numeral(m+k)) |= bottom, one per m
  CycleStatus status = CycleStatus::Undetermined;
};

struct ParamCycleSpec {
  unsigned step = 1;             // j >= 1
  unsigned internal_offset = 0;  // k
  unsigned external_offset = 0;  // i, used by refutation checks
};

/// Plain cycle check: descent C(s(eta)) |= C(eta), base C(0) |= bottom.
CycleReport verify_cycle(const ClauseSet& c, const Budget& budget);

/// Parameterized check with descent step j and internal offset k; at (1,0)
/// this coincides with verify_cycle.
CycleReport verify_param_cycle(const ClauseSet& c, const ParamCycleSpec& spec,
                               const Budget& budget);

/// Eliminates the step and internal offset: the disjunction of the clause
/// sets C(s^{k+m}(eta)) for m = 0..j-1. If C is a (j,k)-cycle the result is a
/// plain cycle entailed by C(s^k(eta)). Purely syntactic; the input is not
/// verified first.
ClauseSet reduce_param_cycle(const ClauseSet& c, unsigned j, unsigned k);

/// Eliminates an external offset i: the disjunction of D(s^m(eta)) for
/// m = 0..i-1 with the plain cycle. Under the offset obligations the result
/// is a plain cycle refuting D.
ClauseSet reduce_external_offset(const ClauseSet& d, const ClauseSet& plain_cycle, unsigned i);

/// The negated universal sentence of the clause set with eta replaced by a
/// fresh variable (the first unused of x, x0, x1, ...). For a verified cycle
/// this formula is inductive over the empty theory.
Formula inductive_formula_of_cycle(const ClauseSet& c);

/// From an inductive existential formula in at most one free variable back to
/// a clause set: the clause form of the universal shape of its negation, with
/// the variable replaced by eta. Verifies inductivity over the empty theory
/// first and throws CertificateError on failure.
ClauseSet cycle_of_inductive_formula(const Formula& psi, const Budget& budget);

struct RefutationCertificate {
  CycleReport cycle;
  Verdict entailment;  // D(eta) |= C(eta)
  CycleStatus status = CycleStatus::Undetermined;
};

/// Bundles verify_cycle(c) with the entailment D |= C.
RefutationCertificate verify_refutation(const ClauseSet& d, const ClauseSet& c,
                                        const Budget& budget);

}  // namespace csc
