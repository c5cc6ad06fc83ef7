#include <algorithm>
#include <cassert>

#include "cscycle/syntax.hpp"

namespace csc {

// -- constructors -----------------------------------------------------------

Formula Formula::atom(Literal lit) {
  if (!lit.positive) return negation(atom(lit.negated()));
  Formula f;
  f.kind_ = Kind::Atom;
  f.atom_ = std::move(lit);
  return f;
}

Formula Formula::negation(Formula f) {
  Formula g;
  g.kind_ = Kind::Not;
  g.kids_.push_back(std::move(f));
  return g;
}

Formula Formula::conj(Formula a, Formula b) {
  Formula g;
  g.kind_ = Kind::And;
  g.kids_ = {std::move(a), std::move(b)};
  return g;
}

Formula Formula::disj(Formula a, Formula b) {
  Formula g;
  g.kind_ = Kind::Or;
  g.kids_ = {std::move(a), std::move(b)};
  return g;
}

Formula Formula::conj(std::vector<Formula> fs) {
  if (fs.empty()) return verum();
  Formula g = std::move(fs[0]);
  for (std::size_t i = 1; i < fs.size(); ++i) g = conj(std::move(g), std::move(fs[i]));
  return g;
}

Formula Formula::disj(std::vector<Formula> fs) {
  if (fs.empty()) return falsum();
  Formula g = std::move(fs[0]);
  for (std::size_t i = 1; i < fs.size(); ++i) g = disj(std::move(g), std::move(fs[i]));
  return g;
}

Formula Formula::implies(Formula a, Formula b) {
  Formula g;
  g.kind_ = Kind::Implies;
  g.kids_ = {std::move(a), std::move(b)};
  return g;
}

Formula Formula::iff(Formula a, Formula b) {
  Formula g;
  g.kind_ = Kind::Iff;
  g.kids_ = {std::move(a), std::move(b)};
  return g;
}

Formula Formula::forall(std::string var, Formula body) {
  Formula g;
  g.kind_ = Kind::Forall;
  g.var_ = std::move(var);
  g.kids_.push_back(std::move(body));
  return g;
}

Formula Formula::exists(std::string var, Formula body) {
  Formula g;
  g.kind_ = Kind::Exists;
  g.var_ = std::move(var);
  g.kids_.push_back(std::move(body));
  return g;
}

Formula Formula::verum() { return atom(Literal::equality(numeral(0), numeral(0))); }

Formula Formula::falsum() { return atom(Literal::equality(numeral(0), numeral(0), false)); }

bool Formula::is_verum() const { return kind_ == Kind::Atom && atom_->is_trivially_true(); }

bool Formula::is_falsum() const {
  return kind_ == Kind::Not && kids_[0].is_verum();
}

// -- structure queries --------------------------------------------------------

bool Formula::is_quantifier_free() const {
  if (kind_ == Kind::Forall || kind_ == Kind::Exists) return false;
  return std::all_of(kids_.begin(), kids_.end(),
                     [](const Formula& k) { return k.is_quantifier_free(); });
}

namespace {
void collect_free(const Formula& f, std::vector<std::string>& out,
                  std::vector<std::string>& bound) {
  switch (f.kind()) {
    case Formula::Kind::Atom: {
      std::vector<std::string> vs;
      f.lit().collect_vars(vs);
      for (const std::string& v : vs)
        if (std::find(bound.begin(), bound.end(), v) == bound.end() &&
            std::find(out.begin(), out.end(), v) == out.end())
          out.push_back(v);
      return;
    }
    case Formula::Kind::Forall:
    case Formula::Kind::Exists:
      bound.push_back(f.var());
      collect_free(f.child(), out, bound);
      bound.pop_back();
      return;
    default:
      for (std::size_t i = 0; i < f.child_count(); ++i) collect_free(f.child(i), out, bound);
  }
}

void collect_all_vars(const Formula& f, std::set<std::string>& out) {
  if (f.kind() == Formula::Kind::Atom) {
    std::vector<std::string> vs;
    f.lit().collect_vars(vs);
    out.insert(vs.begin(), vs.end());
    return;
  }
  if (f.kind() == Formula::Kind::Forall || f.kind() == Formula::Kind::Exists)
    out.insert(f.var());
  for (std::size_t i = 0; i < f.child_count(); ++i) collect_all_vars(f.child(i), out);
}
}  // namespace

std::vector<std::string> Formula::free_vars() const {
  std::vector<std::string> out, bound;
  collect_free(*this, out, bound);
  return out;
}

std::set<std::string> Formula::all_vars() const {
  std::set<std::string> out;
  collect_all_vars(*this, out);
  return out;
}

bool Formula::contains_sym(const std::string& name) const {
  if (kind_ == Kind::Atom)
    return std::any_of(atom_->terms.begin(), atom_->terms.end(),
                       [&](const Term& t) { return t.contains_sym(name); }) ||
           (!atom_->is_equality && atom_->pred == name);
  return std::any_of(kids_.begin(), kids_.end(),
                     [&](const Formula& k) { return k.contains_sym(name); });
}

// -- substitution ---------------------------------------------------------------

Formula Formula::substitute(const std::map<std::string, Term>& bindings) const {
  switch (kind_) {
    case Kind::Atom:
      return atom(atom_->substitute(bindings));
    case Kind::Not:
      return negation(kids_[0].substitute(bindings));
    case Kind::And:
      return conj(kids_[0].substitute(bindings), kids_[1].substitute(bindings));
    case Kind::Or:
      return disj(kids_[0].substitute(bindings), kids_[1].substitute(bindings));
    case Kind::Implies:
      return implies(kids_[0].substitute(bindings), kids_[1].substitute(bindings));
    case Kind::Iff:
      return iff(kids_[0].substitute(bindings), kids_[1].substitute(bindings));
    case Kind::Forall:
    case Kind::Exists: {
      std::map<std::string, Term> inner = bindings;
      inner.erase(var_);
      if (inner.empty()) return *this;
      // Rename the binder when a substituted term would capture it.
      bool capture = false;
      std::vector<std::string> free = kids_[0].free_vars();
      for (const auto& [v, t] : inner) {
        if (std::find(free.begin(), free.end(), v) != free.end() && t.contains_var(var_)) {
          capture = true;
          break;
        }
      }
      std::string binder = var_;
      Formula body = kids_[0];
      if (capture) {
        std::set<std::string> used = body.all_vars();
        for (const auto& [v, t] : inner) {
          auto tv = t.vars();
          used.insert(tv.begin(), tv.end());
        }
        std::string renamed = fresh_var(binder, used);
        body = body.substitute({{binder, Term::var(renamed)}});
        binder = renamed;
      }
      body = body.substitute(inner);
      return kind_ == Kind::Forall ? forall(binder, std::move(body))
                                   : exists(binder, std::move(body));
    }
  }
  throw std::logic_error("unreachable");
}

Formula Formula::replace_constant(const std::string& sym, const Term& replacement) const {
  switch (kind_) {
    case Kind::Atom:
      return atom(atom_->replace_constant(sym, replacement));
    case Kind::Forall:
    case Kind::Exists: {
      Formula body = kids_[0].replace_constant(sym, replacement);
      return kind_ == Kind::Forall ? forall(var_, std::move(body)) : exists(var_, std::move(body));
    }
    default: {
      Formula g;
      g.kind_ = kind_;
      g.var_ = var_;
      for (const Formula& k : kids_) g.kids_.push_back(k.replace_constant(sym, replacement));
      return g;
    }
  }
}

Formula Formula::universal_closure() const {
  std::vector<std::string> free = free_vars();
  Formula f = *this;
  for (auto it = free.rbegin(); it != free.rend(); ++it) f = forall(*it, std::move(f));
  return f;
}

bool Formula::operator==(const Formula& other) const {
  if (kind_ != other.kind_ || var_ != other.var_) return false;
  if (kind_ == Kind::Atom) return *atom_ == *other.atom_;
  return kids_ == other.kids_;
}

bool Formula::operator<(const Formula& other) const {
  if (kind_ != other.kind_) return kind_ < other.kind_;
  if (kind_ == Kind::Atom) return *atom_ < *other.atom_;
  if (var_ != other.var_) return var_ < other.var_;
  return kids_ < other.kids_;
}

// -- printing -------------------------------------------------------------------

namespace {
// Precedence: <-> 1, -> 2, | 3, & 4, ~/quantifiers 5, atoms 6.
int precedence(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Iff: return 1;
    case Formula::Kind::Implies: return 2;
    case Formula::Kind::Or: return 3;
    case Formula::Kind::And: return 4;
    case Formula::Kind::Not:
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: return 5;
    case Formula::Kind::Atom: return 6;
  }
  return 6;
}

std::string print(const Formula& f, int parent_prec) {
  int prec = precedence(f);
  std::string s;
  switch (f.kind()) {
    case Formula::Kind::Atom:
      s = f.lit().str();
      break;
    case Formula::Kind::Not:
      if (f.child().kind() == Formula::Kind::Atom && f.child().lit().is_equality) {
        s = f.child().lit().negated().str();
        prec = 6;
      } else {
        s = "~" + print(f.child(), 5);
      }
      break;
    case Formula::Kind::And:
      s = print(f.child(0), 4) + " & " + print(f.child(1), 5);
      break;
    case Formula::Kind::Or:
      s = print(f.child(0), 3) + " | " + print(f.child(1), 4);
      break;
    case Formula::Kind::Implies:
      s = print(f.child(0), 3) + " -> " + print(f.child(1), 2);
      break;
    case Formula::Kind::Iff:
      s = print(f.child(0), 2) + " <-> " + print(f.child(1), 2);
      break;
    case Formula::Kind::Forall:
      s = "forall " + f.var() + ". " + print(f.child(), 0);
      break;
    case Formula::Kind::Exists:
      s = "exists " + f.var() + ". " + print(f.child(), 0);
      break;
  }
  if (prec < parent_prec) return "(" + s + ")";
  // Quantifiers grab everything to their right; parenthesize them whenever
  // they appear as a left operand of a binary connective.
  if ((f.kind() == Formula::Kind::Forall || f.kind() == Formula::Kind::Exists) &&
      parent_prec > 0 && parent_prec < 6)
    return "(" + s + ")";
  return s;
}
}  // namespace

std::string Formula::str() const { return print(*this, 0); }

std::string QuantClass::str() const {
  switch (shape) {
    case QuantShape::Open: return "open";
    case QuantShape::ExistsK: return "exists_" + std::to_string(k);
    case QuantShape::ForallK: return "forall_" + std::to_string(k);
    case QuantShape::Unclassified: return "unclassified";
  }
  return "unclassified";
}

// -- classification ----------------------------------------------------------------

QuantClass classify_quantifier(const Formula& f) {
  const Formula* cur = &f;
  int blocks = 0;
  Formula::Kind block = Formula::Kind::Atom;
  while (cur->kind() == Formula::Kind::Forall || cur->kind() == Formula::Kind::Exists) {
    if (blocks == 0 || cur->kind() != block) {
      ++blocks;
      block = cur->kind();
    }
    cur = &cur->child();
  }
  if (!cur->is_quantifier_free()) return {QuantShape::Unclassified, 0};
  if (blocks == 0) return {QuantShape::Open, 0};
  // The class is named after the outermost block.
  Formula::Kind outer = f.kind();
  return {outer == Formula::Kind::Exists ? QuantShape::ExistsK : QuantShape::ForallK, blocks};
}

QuantClass classify_prenexed(const Formula& f) { return classify_quantifier(prenex_normal_form(f)); }

// -- normal forms ----------------------------------------------------------------

namespace {

struct PrenexState {
  std::set<std::string> used;
  int next = 0;
  std::string fresh() {
    for (;;) {
      std::string cand = "q" + std::to_string(next++);
      if (!used.count(cand)) {
        used.insert(cand);
        return cand;
      }
    }
  }
};

struct Prefix {
  std::vector<std::pair<Formula::Kind, std::string>> quants;
};

// Pulls quantifiers to the front, renaming each bound variable to a fresh
// name; `polarity` tracks how many negations/implication-antecedents wrap us.
Formula pull(const Formula& f, bool positive, Prefix& prefix, PrenexState& st) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
      return f;
    case Formula::Kind::Not:
      return Formula::negation(pull(f.child(), !positive, prefix, st));
    case Formula::Kind::And:
    case Formula::Kind::Or: {
      Formula a = pull(f.child(0), positive, prefix, st);
      Formula b = pull(f.child(1), positive, prefix, st);
      return f.kind() == Formula::Kind::And ? Formula::conj(std::move(a), std::move(b))
                                            : Formula::disj(std::move(a), std::move(b));
    }
    case Formula::Kind::Implies: {
      Formula a = pull(f.child(0), !positive, prefix, st);
      Formula b = pull(f.child(1), positive, prefix, st);
      return Formula::implies(std::move(a), std::move(b));
    }
    case Formula::Kind::Iff: {
      // Expand to two implications first; each side then has a definite
      // polarity for its quantifiers.
      Formula expanded = Formula::conj(Formula::implies(f.child(0), f.child(1)),
                                       Formula::implies(f.child(1), f.child(0)));
      return pull(expanded, positive, prefix, st);
    }
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: {
      bool is_forall = f.kind() == Formula::Kind::Forall;
      // Under negative polarity the quantifier flips in the prefix.
      Formula::Kind effective =
          (is_forall == positive) ? Formula::Kind::Forall : Formula::Kind::Exists;
      std::string name = st.fresh();
      prefix.quants.emplace_back(effective, name);
      Formula body = f.child().substitute({{f.var(), Term::var(name)}});
      return pull(body, positive, prefix, st);
    }
  }
  throw std::logic_error("unreachable");
}

}  // namespace

Formula prenex_normal_form(const Formula& f) {
  PrenexState st;
  st.used = f.all_vars();
  Prefix prefix;
  Formula matrix = pull(f, true, prefix, st);
  Formula out = std::move(matrix);
  for (auto it = prefix.quants.rbegin(); it != prefix.quants.rend(); ++it)
    out = it->first == Formula::Kind::Forall ? Formula::forall(it->second, std::move(out))
                                             : Formula::exists(it->second, std::move(out));
  return out;
}

Formula negation_normal_form(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
      return f;
    case Formula::Kind::And:
      return Formula::conj(negation_normal_form(f.child(0)), negation_normal_form(f.child(1)));
    case Formula::Kind::Or:
      return Formula::disj(negation_normal_form(f.child(0)), negation_normal_form(f.child(1)));
    case Formula::Kind::Implies:
      return Formula::disj(negation_normal_form(Formula::negation(f.child(0))),
                           negation_normal_form(f.child(1)));
    case Formula::Kind::Iff:
      return negation_normal_form(
          Formula::conj(Formula::implies(f.child(0), f.child(1)),
                        Formula::implies(f.child(1), f.child(0))));
    case Formula::Kind::Not: {
      const Formula& g = f.child();
      switch (g.kind()) {
        case Formula::Kind::Atom:
          return f;
        case Formula::Kind::Not:
          return negation_normal_form(g.child());
        case Formula::Kind::And:
          return Formula::disj(negation_normal_form(Formula::negation(g.child(0))),
                               negation_normal_form(Formula::negation(g.child(1))));
        case Formula::Kind::Or:
          return Formula::conj(negation_normal_form(Formula::negation(g.child(0))),
                               negation_normal_form(Formula::negation(g.child(1))));
        case Formula::Kind::Implies:
          return Formula::conj(negation_normal_form(g.child(0)),
                               negation_normal_form(Formula::negation(g.child(1))));
        case Formula::Kind::Iff:
          return negation_normal_form(Formula::negation(
              Formula::conj(Formula::implies(g.child(0), g.child(1)),
                            Formula::implies(g.child(1), g.child(0)))));
        default:
          throw FragmentError("quantifier under negation in quantifier-free context");
      }
    }
    default:
      throw FragmentError("quantifier in quantifier-free context");
  }
}

// -- clause form --------------------------------------------------------------------

namespace {

void gather_literal(const Formula& f, bool positive, Literal& out) {
  if (f.kind() != Formula::Kind::Atom) throw std::logic_error("not a literal");
  out = f.lit();
  out.positive = positive;
}

// Distributive CNF of an NNF matrix, as lists of literal lists.
std::vector<std::vector<Literal>> cnf(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Atom: {
      return {{f.lit()}};
    }
    case Formula::Kind::Not: {
      Literal l;
      gather_literal(f.child(), false, l);
      return {{l}};
    }
    case Formula::Kind::And: {
      auto a = cnf(f.child(0));
      auto b = cnf(f.child(1));
      a.insert(a.end(), b.begin(), b.end());
      return a;
    }
    case Formula::Kind::Or: {
      auto a = cnf(f.child(0));
      auto b = cnf(f.child(1));
      std::vector<std::vector<Literal>> out;
      out.reserve(a.size() * b.size());
      for (const auto& ca : a)
        for (const auto& cb : b) {
          std::vector<Literal> merged = ca;
          merged.insert(merged.end(), cb.begin(), cb.end());
          out.push_back(std::move(merged));
        }
      return out;
    }
    default:
      throw std::logic_error("cnf expects an NNF matrix");
  }
}

}  // namespace

ClauseSet clausify(const Formula& sentence) {
  Formula pf = prenex_normal_form(sentence);
  QuantClass qc = classify_quantifier(pf);
  if (!(qc.is_open() || qc.shape == QuantShape::ForallK))
    throw FragmentError("clausify expects a universal or open sentence, got " + qc.str());
  const Formula* matrix = &pf;
  while (matrix->kind() == Formula::Kind::Forall) matrix = &matrix->child();
  Formula nnf = negation_normal_form(*matrix);
  std::vector<Clause> clauses;
  for (auto& lits : cnf(nnf)) {
    Clause c(std::move(lits));
    if (!c.tautological()) clauses.push_back(std::move(c));
  }
  return ClauseSet(std::move(clauses));
}

Formula universal_sentence(const ClauseSet& c) {
  std::vector<Formula> parts;
  for (const Clause& cl : c.clauses()) {
    std::vector<Formula> lits;
    for (const Literal& l : cl.literals()) lits.push_back(Formula::atom(l));
    parts.push_back(Formula::disj(std::move(lits)).universal_closure());
  }
  return Formula::conj(std::move(parts));
}

ClauseSet disjoin_clause_sets(const std::vector<ClauseSet>& family) {
  if (family.empty()) throw std::invalid_argument("disjoin_clause_sets: empty family");
  std::vector<Formula> parts;
  for (const ClauseSet& c : family) parts.push_back(universal_sentence(c));
  Formula disjunction = Formula::disj(std::move(parts));
  return clausify(prenex_normal_form(disjunction));
}

}  // namespace csc
