#pragma once

// Tri-state semantic engine for entailment and unsatisfiability obligations.
//
// Positive answers come from a ground saturation loop: input clauses are
// instantiated over a pool of tower terms (numerals, eta-towers, towers over
// Skolem constants) in increasing depth rounds, and the ground clauses are
// saturated under binary resolution, paramodulation and equality resolution,
// processed in (size, lexicographic) order. A Valid verdict carries a
// replayable trace whose replay re-derives the empty clause.
//
// Negative answers are evidence, not proof: a structure from the models
// module that satisfies the clause set at explicit bounds, found before the
// saturation loop runs. They are always flagged with the bound used.
//
// Budget exhaustion yields Unknown. Verdicts are deterministic functions of
// the input and the budget.

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "cscycle/models.hpp"
#include "cscycle/syntax.hpp"

namespace csc {

struct Budget {
  long long max_inferences = 100000;
  int max_term_depth = 4;
  long long max_witness_magnitude = 30;  // value box for countermodel search
  double time_cap_seconds = 60.0;        // safety stop; verdicts reaching it are Unknown

  void validate() const;
  static Budget defaults() { return {}; }
  static Budget tiny() { return {300, 1, 5, 60.0}; }
};

struct TraceStep {
  enum class Kind {
    Input,
    Grounding,
    Resolution,
    Paramodulation,
    EqualityResolution,
    EqualityFactoring,
    Witness
  };

  Kind kind = Kind::Input;
  std::vector<int> parents;  // indices of earlier steps
  Clause clause;             // the clause this step yields

  // Grounding and witness steps.
  std::map<std::string, Term> substitution;

  // Resolution: the positive atom resolved away; parents[0] holds it
  // positively, parents[1] negatively.
  Literal resolved_atom = Literal::equality(numeral(0), numeral(0));

  // Paramodulation: parents[0] supplies the equation (literal index
  // `from_literal`, used left-to-right when `left_to_right`), parents[1] is
  // rewritten at `position` inside its literal `into_literal`. The position is
  // the term index within the literal followed by the argument path.
  //
  // Equality factoring: literal `from_literal` is factored against the kept
  // literal `into_literal`; position holds the two matched side indices.
  int from_literal = -1;
  bool left_to_right = true;
  int into_literal = -1;
  std::vector<int> position;

  // Witness steps carry the instantiated sentence, re-checked by evaluation.
  std::shared_ptr<Formula> witness_sentence;

  std::string note;
};

struct ProofTrace {
  std::vector<TraceStep> steps;
  bool empty() const { return steps.empty(); }
};

/// Re-executes every step of a trace and checks the final step derives the
/// empty clause (witness steps re-evaluate their sentence instead). Returns
/// false and fills `error` on the first mismatch.
bool replay_trace(const ProofTrace& trace, std::string* error = nullptr);

struct Verdict {
  enum class Kind { Valid, Refuted, Unknown };

  Kind kind = Kind::Unknown;
  ProofTrace trace;               // Valid
  std::string structure;          // Refuted: structure id
  Interpretation interpretation;  // Refuted: interpretations of free constants
  long long bound_used = 0;       // Refuted: value box of the evidence
  std::string reason;             // Unknown

  bool is_valid() const { return kind == Kind::Valid; }
  bool is_refuted() const { return kind == Kind::Refuted; }
  bool is_unknown() const { return kind == Kind::Unknown; }
  std::string kind_str() const;

  static Verdict valid(ProofTrace t) { return {Kind::Valid, std::move(t), "", {}, 0, ""}; }
  static Verdict refuted(std::string structure, Interpretation interp, long long bound) {
    return {Kind::Refuted, {}, std::move(structure), std::move(interp), bound, ""};
  }
  static Verdict unknown(std::string reason) {
    return {Kind::Unknown, {}, "", {}, 0, std::move(reason)};
  }
};

/// Satisfiability check of a finite clause set. Valid means the empty clause
/// was derived; Refuted means some structure satisfies the set at bounds.
Verdict check_unsat(const ClauseSet& c, const Budget& budget);

/// premises |= conclusion, checked clause by clause: for each conclusion
/// clause, its negation is grounded with fresh constants and the union with
/// the premises is checked for unsatisfiability. Valid iff every conclusion
/// clause is entailed.
Verdict check_entails(const ClauseSet& premises, const ClauseSet& conclusion,
                      const Budget& budget);

/// Provability of the universal closure of `goal` from universally
/// axiomatized `axioms`. The closure must prenex to a forall-exists shape
/// (open, universal and existential formulas included); anything else throws
/// FragmentError.
Verdict prove(const std::vector<Formula>& axioms, const Formula& goal, const Budget& budget);

/// Truth value of a ground quantifier-free arithmetic sentence in the
/// standard model. Throws std::invalid_argument on non-ground input or
/// predicate atoms.
bool decide_ground(const Formula& sentence);

/// Proves an existential arithmetic sentence by scanning witness tuples in
/// the standard model up to `witness_bound`; on success the verdict carries
/// the numeral instantiation as its trace. No witness yields Unknown.
Verdict prove_exists1_by_witness(const Formula& sentence, long long witness_bound);

}  // namespace csc
