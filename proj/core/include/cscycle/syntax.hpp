#pragma once

// First-order syntax over a declared one-sorted language: terms, literals,
// clauses, clause sets, formulas, substitution, parsing and printing, and the
// conversions between universal sentences and clause sets.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace csc {

struct ParseError : std::runtime_error {
  int line;
  int col;
  ParseError(const std::string& msg, int line_, int col_)
      : std::runtime_error(msg + " (line " + std::to_string(line_) + ", column " +
                           std::to_string(col_) + ")"),
        line(line_),
        col(col_) {}
};

struct LanguageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A first-order language: function and predicate symbols with arities, plus
/// an optional distinguished constant `eta`. The arithmetic core symbols
/// 0/0, s/1, p/1, +/2 have fixed arities; a language may enable any subset of
/// them, and user symbols may never clash with them or with `eta`.
class Language {
 public:
  Language() = default;  // empty language; use the factories below

  /// The language of linear arithmetic {0, s, p, +}.
  static Language linear_arithmetic(bool with_eta = true);
  /// The language {0, s, P/1, f/1} of the guarded-predicate examples.
  static Language progression(bool with_eta = true);
  /// A language with the full arithmetic core plus user symbols.
  static Language make(const std::map<std::string, int>& extra_functions,
                       const std::map<std::string, int>& extra_predicates,
                       bool with_eta);

  bool has_function(const std::string& name) const;
  bool has_predicate(const std::string& name) const;
  int function_arity(const std::string& name) const;
  int predicate_arity(const std::string& name) const;
  bool has_eta() const { return has_eta_; }

  const std::map<std::string, int>& functions() const { return functions_; }
  const std::map<std::string, int>& predicates() const { return predicates_; }

  /// True when every symbol of `other` is declared here with the same arity.
  bool extends(const Language& other) const;
  /// Pointwise union; throws on arity clashes.
  Language united(const Language& other) const;

  bool operator==(const Language& other) const = default;

 private:
  std::map<std::string, int> functions_;
  std::map<std::string, int> predicates_;
  bool has_eta_ = false;
};

inline const char* kEtaName = "eta";

/// An immutable first-order term: a variable or an application of a function
/// symbol. Constants are 0-ary applications; `eta` is the 0-ary application
/// of the reserved symbol "eta".
class Term {
 public:
  enum class Kind { Var, App };

  static Term var(std::string name);
  static Term app(std::string sym, std::vector<Term> args = {});

  Kind kind() const { return kind_; }
  bool is_var() const { return kind_ == Kind::Var; }
  bool is_app() const { return kind_ == Kind::App; }
  const std::string& sym() const { return sym_; }
  const std::vector<Term>& args() const { return args_; }

  bool ground() const;
  int size() const;   // total symbol count
  int depth() const;  // 0 for variables and constants
  bool contains_var(const std::string& name) const;
  bool contains_sym(const std::string& name) const;
  void collect_vars(std::vector<std::string>& out) const;  // first-occurrence order
  std::set<std::string> vars() const;

  Term substitute(const std::map<std::string, Term>& bindings) const;
  /// Replaces every occurrence of the constant `sym` by `replacement`.
  Term replace_constant(const std::string& sym, const Term& replacement) const;

  bool operator==(const Term& other) const;
  bool operator!=(const Term& other) const { return !(*this == other); }
  bool operator<(const Term& other) const;  // structural order

  std::string str() const;

 private:
  Kind kind_;
  std::string sym_;
  std::vector<Term> args_;
};

Term eta_term();
/// s^n(0).
Term numeral(unsigned n);
/// n * t per the inductive definition 0*t = 0, (i+1)*t = t + i*t.
Term scalar_mul(unsigned n, const Term& t);
/// Recognizes s^k(0); returns k.
std::optional<unsigned> numeral_value(const Term& t);
/// s^n(t).
Term s_tower(unsigned n, const Term& t);

/// Value of a ground term over {0,s,p,+} in the standard model, where p is
/// the truncated predecessor. Throws on variables or foreign symbols.
unsigned normalize_ground_term(const Term& t);

/// A literal: a possibly negated equality between terms or predicate atom.
/// Equalities are oriented at construction time when requested: if exactly
/// one side contains a variable, that side goes left.
struct Literal {
  bool positive = true;
  bool is_equality = true;
  std::string pred;         // predicate symbol when !is_equality
  std::vector<Term> terms;  // {lhs, rhs} for equalities, arguments otherwise

  static Literal equality(Term lhs, Term rhs, bool positive = true);
  /// Equality with the one-variable-side-left orientation applied.
  static Literal oriented_equality(Term lhs, Term rhs, bool positive = true);
  static Literal predicate(std::string sym, std::vector<Term> args, bool positive = true);

  const Term& lhs() const { return terms[0]; }
  const Term& rhs() const { return terms[1]; }
  Literal negated() const;
  bool ground() const;
  int size() const;
  void collect_vars(std::vector<std::string>& out) const;
  Literal substitute(const std::map<std::string, Term>& bindings) const;
  Literal replace_constant(const std::string& sym, const Term& replacement) const;
  /// True for t = t and for P-atoms equal on both polarities; used by clause
  /// simplification, not a semantic notion by itself.
  bool is_trivially_true() const { return positive && is_equality && terms[0] == terms[1]; }
  bool is_trivially_false() const { return !positive && is_equality && terms[0] == terms[1]; }

  bool operator==(const Literal& other) const;
  bool operator<(const Literal& other) const;

  std::string str() const;
};

/// A clause: a finite set of literals, kept in a canonical form (literals
/// sorted and deduplicated, variables renamed to x0, x1, ... so structural
/// equality coincides with equality up to variable renaming).
class Clause {
 public:
  Clause() = default;
  explicit Clause(std::vector<Literal> literals);

  const std::vector<Literal>& literals() const { return lits_; }
  bool empty() const { return lits_.empty(); }
  std::size_t size() const { return lits_.size(); }
  bool ground() const;
  /// Contains a literal and its negation, or a trivially true literal.
  bool tautological() const;
  std::vector<std::string> variables() const;
  bool contains_sym(const std::string& name) const;

  Clause replace_constant(const std::string& sym, const Term& replacement) const;

  bool operator==(const Clause& other) const { return lits_ == other.lits_; }
  bool operator<(const Clause& other) const { return lits_ < other.lits_; }

  std::string str() const;

 private:
  std::vector<Literal> lits_;
};

/// A finite set of clauses (sorted, deduplicated).
class ClauseSet {
 public:
  ClauseSet() = default;
  explicit ClauseSet(std::vector<Clause> clauses);

  const std::vector<Clause>& clauses() const { return clauses_; }
  bool empty() const { return clauses_.empty(); }
  std::size_t size() const { return clauses_.size(); }
  bool contains_sym(const std::string& name) const;

  ClauseSet united(const ClauseSet& other) const;
  ClauseSet replace_constant(const std::string& sym, const Term& replacement) const;

  bool operator==(const ClauseSet& other) const { return clauses_ == other.clauses_; }

  std::string str() const;  // one clause per line

 private:
  std::vector<Clause> clauses_;
};

/// Replaces every occurrence of eta in C by t. When t contains variables the
/// clause variables are renamed apart first.
ClauseSet instantiate_eta(const ClauseSet& c, const Term& t);

/// First-order formulas over atoms, ~ & | -> <->, forall, exists. Atoms are
/// stored as positive literals; `t != u` parses to the negation of an atom.
class Formula {
 public:
  enum class Kind { Atom, Not, And, Or, Implies, Iff, Forall, Exists };

  static Formula atom(Literal lit);
  static Formula negation(Formula f);
  static Formula conj(Formula a, Formula b);
  static Formula disj(Formula a, Formula b);
  static Formula conj(std::vector<Formula> fs);  // verum for empty input
  static Formula disj(std::vector<Formula> fs);  // falsum for empty input
  static Formula implies(Formula a, Formula b);
  static Formula iff(Formula a, Formula b);
  static Formula forall(std::string var, Formula body);
  static Formula exists(std::string var, Formula body);
  static Formula verum();   // 0 = 0
  static Formula falsum();  // 0 != 0

  Kind kind() const { return kind_; }
  const Literal& lit() const { return *atom_; }
  const Formula& child(std::size_t i = 0) const { return kids_[i]; }
  std::size_t child_count() const { return kids_.size(); }
  const std::string& var() const { return var_; }

  bool is_verum() const;
  bool is_falsum() const;
  bool is_quantifier_free() const;
  bool is_sentence() const { return free_vars().empty(); }
  std::vector<std::string> free_vars() const;  // first-occurrence order
  std::set<std::string> all_vars() const;      // free and bound
  bool contains_sym(const std::string& name) const;

  /// Simultaneous capture-avoiding substitution of free variables.
  Formula substitute(const std::map<std::string, Term>& bindings) const;
  Formula replace_constant(const std::string& sym, const Term& replacement) const;
  /// Universal closure, binding free variables in first-occurrence order.
  Formula universal_closure() const;

  bool operator==(const Formula& other) const;
  bool operator!=(const Formula& other) const { return !(*this == other); }
  bool operator<(const Formula& other) const;

  std::string str() const;

 private:
  Formula() = default;
  Kind kind_ = Kind::Atom;
  std::optional<Literal> atom_;
  std::vector<Formula> kids_;
  std::string var_;
};

/// Prenex quantifier shape of a formula.
enum class QuantShape { Open, ExistsK, ForallK, Unclassified };

struct QuantClass {
  QuantShape shape = QuantShape::Unclassified;
  int k = 0;  // number of quantifier blocks; 0 for open

  bool is_open() const { return shape == QuantShape::Open; }
  bool is_exists(int level) const { return shape == QuantShape::ExistsK && k <= level; }
  bool is_forall(int level) const { return shape == QuantShape::ForallK && k <= level; }
  std::string str() const;
};

/// The least prenex class of a formula as written; non-prenex formulas are
/// Unclassified.
QuantClass classify_quantifier(const Formula& f);

/// Prenex normal form with all bound variables renamed apart (deterministic
/// fresh names drawn from the reserved q0, q1, ... family).
Formula prenex_normal_form(const Formula& f);

/// Classification after prenexing; detects formulas that are logically in a
/// class without being written in prenex form.
QuantClass classify_prenexed(const Formula& f);

/// Negation normal form of a quantifier-free formula.
Formula negation_normal_form(const Formula& f);

struct FragmentError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Clause form of a universal sentence: quantifiers stripped after prenexing,
/// matrix put into distributive conjunctive normal form, one clause per
/// conjunct; tautologous clauses are dropped. Throws FragmentError unless the
/// prenex form is universal or the sentence is open.
ClauseSet clausify(const Formula& sentence);

/// Inverse direction: the conjunction of the universal closures of the clause
/// disjunctions. clausify(universal_sentence(C)) == C up to literal order and
/// per-clause variable renaming.
Formula universal_sentence(const ClauseSet& c);

/// A clause set equivalent to the disjunction of the given ones: the clause
/// form of the prenexed disjunction of their universal sentences with
/// variables renamed apart. Throws std::invalid_argument on empty input.
ClauseSet disjoin_clause_sets(const std::vector<ClauseSet>& family);

/// Fresh variable name: `base` if unused, else base1, base2, ...
std::string fresh_var(const std::string& base, const std::set<std::string>& used);

// -- parsing --------------------------------------------------------------

Term parse_term(const std::string& text, const Language& lang);
Literal parse_literal(const std::string& text, const Language& lang);
Clause parse_clause(const std::string& text, const Language& lang);
/// One clause per line; blank lines and '#'-comment lines are skipped.
ClauseSet parse_clause_set(const std::string& text, const Language& lang);
Formula parse_formula(const std::string& text, const Language& lang);

}  // namespace csc
