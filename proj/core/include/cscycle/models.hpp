#pragma once

// The structure families used for countermodel evidence: the standard model,
// the integers, the chain structures M_I (one standard chain plus I integer
// chains), the paired structure from the odd/even independence argument, and
// the progression structure over {0, s, P, f}. All of them evaluate terms
// over elements of the form value^[type] and support bounded satisfaction
// checking with explicit bounds reporting.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cscycle/syntax.hpp"

namespace csc {

/// Combines chain types under addition: the left type wins unless it is the
/// standard chain (type 0).
unsigned type_join(unsigned n, unsigned m);

/// n - m floored at zero.
unsigned truncated_sub(unsigned n, unsigned m);

/// An element value^[type]: type 0 is the standard chain (value >= 0), higher
/// types are integer chains.
struct ModelElement {
  unsigned type = 0;
  long long value = 0;

  bool operator==(const ModelElement&) const = default;
  bool operator<(const ModelElement& o) const {
    return type != o.type ? type < o.type : value < o.value;
  }
  std::string str() const;  // "n^[m]"
};

struct StructureId {
  enum class Family { N, Z, MChain, Shoenfield, PStruct };
  Family family = Family::N;
  unsigned chains = 0;  // the I of M_I

  static StructureId standard() { return {Family::N, 0}; }
  static StructureId integers() { return {Family::Z, 0}; }
  static StructureId m_chain(unsigned i) { return {Family::MChain, i}; }
  static StructureId shoenfield() { return {Family::Shoenfield, 0}; }
  static StructureId pstruct() { return {Family::PStruct, 0}; }

  /// Accepts N | Z | M:<i> | shoenfield | pstruct.
  static StructureId parse(const std::string& text);
  std::string str() const;
  bool operator==(const StructureId&) const = default;
};

struct Bounds {
  long long value_box = 30;   // |value| cap for enumerated elements
  unsigned type_cap = 2;      // type cap where the structure does not fix one
  long long witness_cap = 15; // |value| cap for existential witness search
};

/// A stateless evaluation table for one structure.
class Structure {
 public:
  explicit Structure(StructureId id);

  const StructureId& id() const { return id_; }
  const Language& language() const { return lang_; }

  bool in_domain(const ModelElement& e) const;
  ModelElement eval_fun(const std::string& sym, const std::vector<ModelElement>& args) const;
  bool eval_pred(const std::string& sym, const std::vector<ModelElement>& args) const;
  /// Native interpretation of eta, when the structure fixes one.
  std::optional<ModelElement> native_eta() const;

  /// The finite element box in enumeration order: ascending type, then value
  /// 0, 1, -1, 2, -2, ... (only nonnegative values on the standard chain).
  std::vector<ModelElement> box(const Bounds& b) const;
  /// Same order, restricted to |value| <= witness_cap.
  std::vector<ModelElement> witness_box(const Bounds& b) const;

 private:
  StructureId id_;
  Language lang_;
};

/// Interpretations for constants the structure does not fix (eta, Skolem
/// constants introduced by clausification).
using Interpretation = std::map<std::string, ModelElement>;

struct EvalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

ModelElement eval_term(const Structure& s, const std::map<std::string, ModelElement>& assignment,
                       const Interpretation& constants, const Term& t);

bool eval_literal(const Structure& s, const std::map<std::string, ModelElement>& assignment,
                  const Interpretation& constants, const Literal& l);

enum class Tri { True, False, Unknown };

std::string tri_str(Tri t);

/// Three-valued bounded evaluation of a formula: universal quantifiers range
/// over the element box, existential quantifiers search the witness box and
/// report Unknown when exhausted without a witness.
Tri eval_bounded(const Structure& s, const std::map<std::string, ModelElement>& assignment,
                 const Interpretation& constants, const Formula& f, const Bounds& b);

struct BoundedReport {
  Tri result = Tri::Unknown;
  Bounds bounds;
  std::string detail;  // human-readable summary
  // Definite violations carry the witnessing instance.
  std::optional<Clause> violated_clause;
  std::map<std::string, ModelElement> counter_assignment;
};

struct ClauseCheck {
  Tri result = Tri::Unknown;  // Unknown when the assignment space exceeds the scan cap
  std::map<std::string, ModelElement> violation;
};

/// Bounded check of one clause: literals that hold for every boxed assignment
/// of their own variables settle the clause early; otherwise the joint
/// assignment space is scanned in lexicographic order (first variable most
/// significant) for a violation, up to a fixed cap.
ClauseCheck check_clause_bounded(const Structure& s, const Clause& c, const Bounds& b,
                                 const Interpretation& constants = {});

/// Bounded satisfaction of a clause set: every clause checked over all box
/// assignments of its variables. True means holds-at-bounds; False carries
/// the first counter-assignment in enumeration order.
BoundedReport holds_bounded(const Structure& s, const ClauseSet& c, const Bounds& b,
                            const Interpretation& constants = {});
BoundedReport holds_bounded(const Structure& s, const Formula& f, const Bounds& b,
                            const Interpretation& constants = {});
/// All sentences of a list (used for theory axiom checks).
BoundedReport holds_bounded(const Structure& s, const std::vector<Formula>& sentences,
                            const Bounds& b, const Interpretation& constants = {});

/// n^[m] for 1 <= m <= I: the embedding of the integers into the m-th chain.
ModelElement embed_into_chain(unsigned m, long long n, unsigned chains);

struct CancellationWitnessReport {
  unsigned k = 0, n = 0, m = 0;
  ModelElement witness;     // k^[1]
  ModelElement lhs, rhs;    // evaluated sides of the cancellation premise
  bool sides_equal = false; // lhs == rhs in M_1
  bool differs_from_numeral = false;  // witness != k^[0]
  bool ok() const { return sides_equal && differs_from_numeral; }
};

/// Evaluates the weak-cancellation premise n*x + numeral((m-n)k) = m*x at
/// x = k^[1] in M_1 and checks x != numeral(k).
CancellationWitnessReport cancellation_witness(unsigned k, unsigned n, unsigned m);

struct InductionFailureReport {
  unsigned chains = 1;
  Formula induction_formula = Formula::verum();
  bool base_holds = false;                   // witnessed instances at standard points
  std::vector<long long> standard_sampled;   // values n with chi(n^[0]) witnessed
  bool step_holds_at_bounds = false;
  ModelElement failing_element;              // non-standard point where chi fails
  bool conclusion_fails = false;             // chi(failing_element) has no witness in box
  bool axiom_bounded_violated = false;
  std::string detail;
};

/// Exhibits the bounded violation of the induction axiom for the two-sided
/// cancellation formula in M_I: base and sampled steps hold, the conclusion
/// fails on the first integer chain.
InductionFailureReport induction_failure_witness(unsigned chains, const Bounds& b);

struct OddEvenReport {
  bool bprime_holds_at_bounds = false;
  bool witness_even = false;  // (1,0) = e + e for some boxed e
  bool witness_odd = false;   // (1,0) = s(e + e) for some boxed e
  long long bound = 0;
  std::string detail;
  bool ok() const { return bprime_holds_at_bounds && !witness_even && !witness_odd; }
};

/// Checks that the paired structure satisfies the extended base theory at
/// bounds while the element (1,0) is neither even nor odd within the bound.
OddEvenReport shoenfield_odd_even_check(long long bound);

}  // namespace csc
