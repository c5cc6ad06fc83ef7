#include <algorithm>
#include <functional>

#include "cscycle/syntax.hpp"

namespace csc {

// -- Literal ------------------------------------------------------------------

Literal Literal::equality(Term lhs, Term rhs, bool positive) {
  Literal l;
  l.positive = positive;
  l.is_equality = true;
  l.terms = {std::move(lhs), std::move(rhs)};
  return l;
}

Literal Literal::oriented_equality(Term lhs, Term rhs, bool positive) {
  bool lv = !lhs.ground();
  bool rv = !rhs.ground();
  if (!lv && rv) std::swap(lhs, rhs);
  return equality(std::move(lhs), std::move(rhs), positive);
}

Literal Literal::predicate(std::string sym, std::vector<Term> args, bool positive) {
  Literal l;
  l.positive = positive;
  l.is_equality = false;
  l.pred = std::move(sym);
  l.terms = std::move(args);
  return l;
}

Literal Literal::negated() const {
  Literal l = *this;
  l.positive = !l.positive;
  return l;
}

bool Literal::ground() const {
  return std::all_of(terms.begin(), terms.end(), [](const Term& t) { return t.ground(); });
}

int Literal::size() const {
  int n = 1;
  for (const Term& t : terms) n += t.size();
  return n;
}

void Literal::collect_vars(std::vector<std::string>& out) const {
  for (const Term& t : terms) t.collect_vars(out);
}

Literal Literal::substitute(const std::map<std::string, Term>& bindings) const {
  Literal l = *this;
  for (Term& t : l.terms) t = t.substitute(bindings);
  return l;
}

Literal Literal::replace_constant(const std::string& sym, const Term& replacement) const {
  Literal l = *this;
  for (Term& t : l.terms) t = t.replace_constant(sym, replacement);
  return l;
}

bool Literal::operator==(const Literal& other) const {
  return positive == other.positive && is_equality == other.is_equality && pred == other.pred &&
         terms == other.terms;
}

bool Literal::operator<(const Literal& other) const {
  if (is_equality != other.is_equality) return is_equality < other.is_equality;
  if (pred != other.pred) return pred < other.pred;
  if (positive != other.positive) return positive < other.positive;
  return terms < other.terms;
}

std::string Literal::str() const {
  if (is_equality) return terms[0].str() + (positive ? " = " : " != ") + terms[1].str();
  std::string s = pred;
  if (!terms.empty()) {
    s += "(";
    for (std::size_t i = 0; i < terms.size(); ++i) {
      if (i) s += ", ";
      s += terms[i].str();
    }
    s += ")";
  }
  return positive ? s : "~" + s;
}

// -- Clause ---------------------------------------------------------------------

namespace {

// Serialization with variables replaced by a placeholder; used to group
// literals whose orderings are interchangeable before renaming.
std::string skeleton(const Term& t) {
  if (t.is_var()) return "?";
  std::string s = t.sym() + "(";
  for (const Term& a : t.args()) s += skeleton(a) + ",";
  return s + ")";
}

std::string skeleton(const Literal& l) {
  std::string s = l.positive ? "+" : "-";
  s += l.is_equality ? "=" : l.pred;
  for (const Term& t : l.terms) s += "|" + skeleton(t);
  return s;
}

std::vector<Literal> rename_first_occurrence(const std::vector<Literal>& lits) {
  std::vector<std::string> order;
  for (const Literal& l : lits) l.collect_vars(order);
  std::map<std::string, Term> renaming;
  for (std::size_t i = 0; i < order.size(); ++i)
    renaming[order[i]] = Term::var("x" + std::to_string(i));
  std::vector<Literal> out;
  out.reserve(lits.size());
  for (const Literal& l : lits) out.push_back(l.substitute(renaming));
  return out;
}

std::string render(const std::vector<Literal>& lits) {
  std::string s;
  for (const Literal& l : lits) s += l.str() + ";";
  return s;
}

// Canonical literal order: sort by skeleton, then search the orderings within
// equal-skeleton groups for the renaming-minimal rendering. Group sizes are
// tiny in practice; the permutation budget keeps pathological inputs cheap.
std::vector<Literal> canonicalize(std::vector<Literal> lits) {
  std::sort(lits.begin(), lits.end());
  lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
  std::stable_sort(lits.begin(), lits.end(), [](const Literal& a, const Literal& b) {
    return skeleton(a) < skeleton(b);
  });

  std::vector<std::pair<std::size_t, std::size_t>> groups;  // [begin, end)
  std::size_t i = 0;
  long long permutations = 1;
  while (i < lits.size()) {
    std::size_t j = i + 1;
    std::string sk = skeleton(lits[i]);
    while (j < lits.size() && skeleton(lits[j]) == sk) ++j;
    groups.emplace_back(i, j);
    for (std::size_t n = 2; n <= j - i && permutations < 10000; ++n) permutations *= (long long)n;
    i = j;
  }

  if (permutations >= 10000) {
    // Fallback: iterate rename-then-sort to a fixpoint.
    for (int round = 0; round < 8; ++round) {
      std::vector<Literal> renamed = rename_first_occurrence(lits);
      std::sort(renamed.begin(), renamed.end());
      if (renamed == lits) break;
      lits = std::move(renamed);
    }
    return rename_first_occurrence(lits);
  }

  std::vector<Literal> best;
  std::string best_key;
  std::vector<Literal> current = lits;
  std::function<void(std::size_t)> go = [&](std::size_t g) {
    if (g == groups.size()) {
      std::vector<Literal> renamed = rename_first_occurrence(current);
      std::string key = render(renamed);
      if (best_key.empty() || key < best_key) {
        best_key = key;
        best = renamed;
      }
      return;
    }
    auto [b, e] = groups[g];
    std::vector<Literal> group(current.begin() + b, current.begin() + e);
    std::sort(group.begin(), group.end());
    do {
      std::copy(group.begin(), group.end(), current.begin() + b);
      go(g + 1);
    } while (std::next_permutation(group.begin(), group.end()));
  };
  go(0);
  // Duplicates can surface only now that variables are shared canonically.
  best.erase(std::unique(best.begin(), best.end()), best.end());
  return best;
}

}  // namespace

Clause::Clause(std::vector<Literal> literals) : lits_(canonicalize(std::move(literals))) {}

bool Clause::ground() const {
  return std::all_of(lits_.begin(), lits_.end(), [](const Literal& l) { return l.ground(); });
}

bool Clause::tautological() const {
  for (const Literal& l : lits_) {
    if (l.is_trivially_true()) return true;
    if (l.positive) continue;
    Literal pos = l.negated();
    if (std::find(lits_.begin(), lits_.end(), pos) != lits_.end()) return true;
  }
  return false;
}

std::vector<std::string> Clause::variables() const {
  std::vector<std::string> out;
  for (const Literal& l : lits_) l.collect_vars(out);
  return out;
}

bool Clause::contains_sym(const std::string& name) const {
  return std::any_of(lits_.begin(), lits_.end(), [&](const Literal& l) {
    return std::any_of(l.terms.begin(), l.terms.end(),
                       [&](const Term& t) { return t.contains_sym(name); });
  });
}

Clause Clause::replace_constant(const std::string& sym, const Term& replacement) const {
  std::vector<Literal> lits;
  lits.reserve(lits_.size());
  for (const Literal& l : lits_) lits.push_back(l.replace_constant(sym, replacement));
  return Clause(std::move(lits));
}

std::string Clause::str() const {
  std::string s = "[";
  for (std::size_t i = 0; i < lits_.size(); ++i) {
    if (i) s += ", ";
    s += lits_[i].str();
  }
  return s + "]";
}

// -- ClauseSet ---------------------------------------------------------------------

ClauseSet::ClauseSet(std::vector<Clause> clauses) : clauses_(std::move(clauses)) {
  std::sort(clauses_.begin(), clauses_.end());
  clauses_.erase(std::unique(clauses_.begin(), clauses_.end()), clauses_.end());
}

bool ClauseSet::contains_sym(const std::string& name) const {
  return std::any_of(clauses_.begin(), clauses_.end(),
                     [&](const Clause& c) { return c.contains_sym(name); });
}

ClauseSet ClauseSet::united(const ClauseSet& other) const {
  std::vector<Clause> all = clauses_;
  all.insert(all.end(), other.clauses_.begin(), other.clauses_.end());
  return ClauseSet(std::move(all));
}

ClauseSet ClauseSet::replace_constant(const std::string& sym, const Term& replacement) const {
  std::vector<Clause> out;
  out.reserve(clauses_.size());
  for (const Clause& c : clauses_) out.push_back(c.replace_constant(sym, replacement));
  return ClauseSet(std::move(out));
}

std::string ClauseSet::str() const {
  std::string s;
  for (const Clause& c : clauses_) {
    s += c.str();
    s += "\n";
  }
  return s;
}

ClauseSet instantiate_eta(const ClauseSet& c, const Term& t) {
  std::set<std::string> tvars = t.vars();
  std::vector<Clause> out;
  for (const Clause& cl : c.clauses()) {
    std::vector<Literal> lits(cl.literals().begin(), cl.literals().end());
    if (!tvars.empty()) {
      // Rename clause variables apart from the variables of t.
      std::vector<std::string> cvars = cl.variables();
      std::set<std::string> used = tvars;
      std::map<std::string, Term> renaming;
      for (const std::string& v : cvars) {
        if (tvars.count(v)) {
          std::string nv = fresh_var(v, used);
          used.insert(nv);
          renaming[v] = Term::var(nv);
        }
      }
      if (!renaming.empty())
        for (Literal& l : lits) l = l.substitute(renaming);
    }
    for (Literal& l : lits) l = l.replace_constant(kEtaName, t);
    out.push_back(Clause(std::move(lits)));
  }
  return ClauseSet(std::move(out));
}

}  // namespace csc
