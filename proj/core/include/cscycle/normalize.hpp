#pragma once

// The arithmetic normalization pipeline for existential formulas: unnesting,
// predecessor elimination, decomposition into components, classification of
// literals by which sides carry variables, zero elimination in terms, the
// staged elimination of variable-vs-ground literals under a lexicographic
// measure, and the final shift-and-strip step that leaves a 0-free, p-free
// existential formula.
//
// The pipeline works over the arithmetic language {0, s, p, +} only;
// predicate symbols and foreign constants (including eta) are rejected.

#include <string>
#include <utility>
#include <vector>

#include "cscycle/syntax.hpp"

namespace csc {

/// An existentially quantified conjunction of literals.
struct Component {
  std::vector<std::string> bound_vars;
  std::vector<Literal> literals;

  Formula to_formula() const;
  std::vector<std::string> free_vars() const;  // first-occurrence order
  std::string str() const;
  bool operator==(const Component&) const = default;
};

/// Side pattern of an equality literal: both sides carry a variable, exactly
/// one does, or neither does.
enum class SidePattern { BothVariable, Mixed, Ground };

struct LiteralClass {
  SidePattern pattern = SidePattern::Ground;
  bool positive = true;
  bool simple = false;  // Mixed only: a bare variable equated to a numeral
  std::string str() const;
};

/// Classification of an equality literal; throws on predicate literals.
LiteralClass classify_literal(const Literal& l);

/// The elimination measure: counts of negative literals, existential
/// quantifiers, complex mixed positive literals, and free variables, compared
/// lexicographically.
struct Measure {
  int negatives = 0;
  int existentials = 0;
  int complex_positives = 0;
  int free_variables = 0;

  auto operator<=>(const Measure&) const = default;
  std::string str() const;
};

Measure measure(const Component& chi);

/// Equivalent formula in which every atom is flat: each side of an equation
/// is a variable or a function symbol applied to variables, and p occurs only
/// in equations p(x) = y. New existential variables come from the reserved
/// u0, u1, ... family.
Formula unnest(const Formula& phi);

/// p-free equivalent (over the base theory with predecessor totality):
/// unnests, then replaces p(x) = y by (x = 0 & y = 0) | s(y) = x.
Formula eliminate_p(const Formula& phi);

/// Decomposition of an existential formula into p-free components whose
/// disjunction is equivalent over the base theory with predecessor totality.
std::vector<Component> to_components(const Formula& phi);

/// 0-free term equal to t under the numeral-commutation axioms; t must
/// contain a variable and be p-free.
Term eliminate_zero_term(const Term& t);

/// Splits u = numeral(k) into the disjunction, over all solution tuples of
/// u in the standard model with entries <= k, of the variable guards
/// z_j = numeral(m_j). The empty disjunction is 0 != 0.
Formula split_complex_atom(const Term& u, unsigned k);

/// Equivalent form of z != numeral(k): either z is s^{k+1} of something or z
/// is one of the smaller numerals.
Formula expand_disequation(const std::string& var, unsigned k);

struct GuardedComponent {
  std::vector<std::pair<std::string, unsigned>> guards;  // x_i = numeral(k_i)
  Component core;  // 0-free, p-free, no mixed literals, guarded variables absent
};

struct RewriteLogEntry {
  std::string rule;
  std::string detail;
  Measure before;
  std::vector<Measure> after;  // one per derived component

  bool strictly_decreasing() const {
    for (const Measure& m : after)
      if (!(m < before)) return false;
    return true;
  }
};

struct EliminationResult {
  std::vector<GuardedComponent> parts;
  std::vector<RewriteLogEntry> log;
};

/// Eliminates every mixed literal from a p-free component, producing numeral
/// guards on free variables paired with 0-free cores. Every logged rewrite
/// step strictly decreases the measure.
EliminationResult eliminate_mixed_literals(const Component& chi);

struct ShiftResult {
  unsigned shift = 0;  // N
  Formula stripped = Formula::falsum();
  std::vector<GuardedComponent> parts;  // full elimination output
  std::vector<RewriteLogEntry> log;
};

/// Runs the full pipeline and forms 1 + the largest guard constant; the
/// result formula is the disjunction of the guard-free cores with every
/// listed variable v replaced by s^N(v). It agrees with phi(s^N(vars)) in
/// every model of the justifying theories and is 0-free and p-free. With an
/// empty vars list the free variables of phi are used.
ShiftResult shift_and_strip(const Formula& phi, std::vector<std::string> vars = {});

/// Syntactic guarantee helpers.
bool is_p_free(const Formula& f);
bool is_zero_free(const Formula& f);

}  // namespace csc
