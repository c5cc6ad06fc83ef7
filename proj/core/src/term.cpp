#include "cscycle/syntax.hpp"

#include <algorithm>

namespace csc {

// -- Language ---------------------------------------------------------------

namespace {
const std::map<std::string, int>& core_arities() {
  static const std::map<std::string, int> table = {{"0", 0}, {"s", 1}, {"p", 1}, {"+", 2}};
  return table;
}
}  // namespace

Language Language::linear_arithmetic(bool with_eta) {
  Language l;
  l.functions_ = core_arities();
  l.has_eta_ = with_eta;
  return l;
}

Language Language::progression(bool with_eta) {
  Language l;
  l.functions_ = {{"0", 0}, {"s", 1}, {"f", 1}};
  l.predicates_ = {{"P", 1}};
  l.has_eta_ = with_eta;
  return l;
}

Language Language::make(const std::map<std::string, int>& extra_functions,
                        const std::map<std::string, int>& extra_predicates, bool with_eta) {
  Language l = linear_arithmetic(with_eta);
  for (const auto& [name, arity] : extra_functions) {
    if (arity < 0) throw LanguageError("negative arity for symbol " + name);
    if (name == kEtaName) throw LanguageError("eta is reserved");
    auto it = core_arities().find(name);
    if (it != core_arities().end() && it->second != arity)
      throw LanguageError("core symbol " + name + " has fixed arity " + std::to_string(it->second));
    if (extra_predicates.count(name))
      throw LanguageError("symbol " + name + " declared as both function and predicate");
    l.functions_[name] = arity;
  }
  for (const auto& [name, arity] : extra_predicates) {
    if (arity < 0) throw LanguageError("negative arity for symbol " + name);
    if (name == kEtaName) throw LanguageError("eta is reserved");
    if (core_arities().count(name)) throw LanguageError(name + " is a reserved function symbol");
    l.predicates_[name] = arity;
  }
  return l;
}

bool Language::has_function(const std::string& name) const {
  return functions_.count(name) > 0 || (name == kEtaName && has_eta_);
}

bool Language::has_predicate(const std::string& name) const { return predicates_.count(name) > 0; }

int Language::function_arity(const std::string& name) const {
  if (name == kEtaName && has_eta_) return 0;
  auto it = functions_.find(name);
  if (it == functions_.end()) throw LanguageError("undeclared function symbol " + name);
  return it->second;
}

int Language::predicate_arity(const std::string& name) const {
  auto it = predicates_.find(name);
  if (it == predicates_.end()) throw LanguageError("undeclared predicate symbol " + name);
  return it->second;
}

bool Language::extends(const Language& other) const {
  for (const auto& [name, arity] : other.functions_) {
    auto it = functions_.find(name);
    if (it == functions_.end() || it->second != arity) return false;
  }
  for (const auto& [name, arity] : other.predicates_) {
    auto it = predicates_.find(name);
    if (it == predicates_.end() || it->second != arity) return false;
  }
  return !other.has_eta_ || has_eta_;
}

Language Language::united(const Language& other) const {
  Language l = *this;
  for (const auto& [name, arity] : other.functions_) {
    auto it = l.functions_.find(name);
    if (it != l.functions_.end() && it->second != arity)
      throw LanguageError("arity clash on symbol " + name);
    l.functions_[name] = arity;
  }
  for (const auto& [name, arity] : other.predicates_) {
    auto it = l.predicates_.find(name);
    if (it != l.predicates_.end() && it->second != arity)
      throw LanguageError("arity clash on symbol " + name);
    l.predicates_[name] = arity;
  }
  l.has_eta_ = l.has_eta_ || other.has_eta_;
  return l;
}

// -- Term -------------------------------------------------------------------

Term Term::var(std::string name) {
  Term t;
  t.kind_ = Kind::Var;
  t.sym_ = std::move(name);
  return t;
}

Term Term::app(std::string sym, std::vector<Term> args) {
  Term t;
  t.kind_ = Kind::App;
  t.sym_ = std::move(sym);
  t.args_ = std::move(args);
  return t;
}

bool Term::ground() const {
  if (is_var()) return false;
  return std::all_of(args_.begin(), args_.end(), [](const Term& a) { return a.ground(); });
}

int Term::size() const {
  int n = 1;
  for (const Term& a : args_) n += a.size();
  return n;
}

int Term::depth() const {
  int d = 0;
  for (const Term& a : args_) d = std::max(d, a.depth() + 1);
  return d;
}

bool Term::contains_var(const std::string& name) const {
  if (is_var()) return sym_ == name;
  return std::any_of(args_.begin(), args_.end(),
                     [&](const Term& a) { return a.contains_var(name); });
}

bool Term::contains_sym(const std::string& name) const {
  if (is_app() && sym_ == name) return true;
  return std::any_of(args_.begin(), args_.end(),
                     [&](const Term& a) { return a.contains_sym(name); });
}

void Term::collect_vars(std::vector<std::string>& out) const {
  if (is_var()) {
    if (std::find(out.begin(), out.end(), sym_) == out.end()) out.push_back(sym_);
    return;
  }
  for (const Term& a : args_) a.collect_vars(out);
}

std::set<std::string> Term::vars() const {
  std::vector<std::string> v;
  collect_vars(v);
  return {v.begin(), v.end()};
}

Term Term::substitute(const std::map<std::string, Term>& bindings) const {
  if (is_var()) {
    auto it = bindings.find(sym_);
    return it == bindings.end() ? *this : it->second;
  }
  std::vector<Term> args;
  args.reserve(args_.size());
  for (const Term& a : args_) args.push_back(a.substitute(bindings));
  return app(sym_, std::move(args));
}

Term Term::replace_constant(const std::string& sym, const Term& replacement) const {
  if (is_var()) return *this;
  if (sym_ == sym && args_.empty()) return replacement;
  std::vector<Term> args;
  args.reserve(args_.size());
  for (const Term& a : args_) args.push_back(a.replace_constant(sym, replacement));
  return app(sym_, std::move(args));
}

bool Term::operator==(const Term& other) const {
  return kind_ == other.kind_ && sym_ == other.sym_ && args_ == other.args_;
}

bool Term::operator<(const Term& other) const {
  if (kind_ != other.kind_) return kind_ < other.kind_;
  if (sym_ != other.sym_) return sym_ < other.sym_;
  return args_ < other.args_;
}

std::string Term::str() const {
  if (is_var()) return sym_;
  if (auto k = numeral_value(*this)) {
    if (*k == 0) return "0";
    return "#" + std::to_string(*k);
  }
  if (sym_ == "+") {
    auto side = [](const Term& t) {
      std::string s = t.str();
      if (t.is_app() && t.sym() == "+") return "(" + s + ")";
      return s;
    };
    return side(args_[0]) + " + " + side(args_[1]);
  }
  if (args_.empty()) return sym_;
  std::string s = sym_ + "(";
  for (std::size_t i = 0; i < args_.size(); ++i) {
    if (i) s += ", ";
    s += args_[i].str();
  }
  return s + ")";
}

// -- numerals and eta ---------------------------------------------------------

Term eta_term() { return Term::app(kEtaName); }

Term numeral(unsigned n) { return s_tower(n, Term::app("0")); }

Term s_tower(unsigned n, const Term& t) {
  Term r = t;
  for (unsigned i = 0; i < n; ++i) r = Term::app("s", {r});
  return r;
}

Term scalar_mul(unsigned n, const Term& t) {
  if (n == 0) return Term::app("0");
  return Term::app("+", {t, scalar_mul(n - 1, t)});
}

std::optional<unsigned> numeral_value(const Term& t) {
  const Term* cur = &t;
  unsigned k = 0;
  while (cur->is_app() && cur->sym() == "s") {
    ++k;
    cur = &cur->args()[0];
  }
  if (cur->is_app() && cur->sym() == "0") return k;
  return std::nullopt;
}

unsigned normalize_ground_term(const Term& t) {
  if (t.is_var()) throw std::invalid_argument("term is not ground: " + t.str());
  const std::string& f = t.sym();
  if (f == "0") return 0;
  if (f == "s") return normalize_ground_term(t.args()[0]) + 1;
  if (f == "p") {
    unsigned v = normalize_ground_term(t.args()[0]);
    return v == 0 ? 0 : v - 1;
  }
  if (f == "+") return normalize_ground_term(t.args()[0]) + normalize_ground_term(t.args()[1]);
  throw std::invalid_argument("foreign symbol in arithmetic ground term: " + f);
}

std::string fresh_var(const std::string& base, const std::set<std::string>& used) {
  if (!used.count(base)) return base;
  for (unsigned i = 1;; ++i) {
    std::string cand = base + std::to_string(i);
    if (!used.count(cand)) return cand;
  }
}

}  // namespace csc
