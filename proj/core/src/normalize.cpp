#include <algorithm>
#include <deque>
#include <functional>

#include "cscycle/normalize.hpp"

namespace csc {

// -- Component ---------------------------------------------------------------

Formula Component::to_formula() const {
  std::vector<Formula> atoms;
  for (const Literal& l : literals) atoms.push_back(Formula::atom(l));
  Formula body = Formula::conj(std::move(atoms));
  for (auto it = bound_vars.rbegin(); it != bound_vars.rend(); ++it)
    body = Formula::exists(*it, std::move(body));
  return body;
}

std::vector<std::string> Component::free_vars() const {
  std::vector<std::string> all;
  for (const Literal& l : literals) l.collect_vars(all);
  std::vector<std::string> out;
  for (const std::string& v : all)
    if (std::find(bound_vars.begin(), bound_vars.end(), v) == bound_vars.end())
      out.push_back(v);
  return out;
}

std::string Component::str() const { return to_formula().str(); }

// -- classification ------------------------------------------------------------

LiteralClass classify_literal(const Literal& l) {
  if (!l.is_equality) throw std::invalid_argument("predicate literals have no side pattern");
  LiteralClass c;
  c.positive = l.positive;
  bool lv = !l.lhs().ground();
  bool rv = !l.rhs().ground();
  if (lv && rv) c.pattern = SidePattern::BothVariable;
  else if (!lv && !rv) c.pattern = SidePattern::Ground;
  else c.pattern = SidePattern::Mixed;
  if (c.pattern == SidePattern::Mixed) {
    const Term& var_side = lv ? l.lhs() : l.rhs();
    const Term& ground_side = lv ? l.rhs() : l.lhs();
    c.simple = var_side.is_var() && numeral_value(ground_side).has_value();
  }
  return c;
}

std::string LiteralClass::str() const {
  std::string s;
  switch (pattern) {
    case SidePattern::BothVariable: s = "var-var"; break;
    case SidePattern::Mixed: s = simple ? "var-ground simple" : "var-ground complex"; break;
    case SidePattern::Ground: s = "ground-ground"; break;
  }
  return s + (positive ? " positive" : " negative");
}

Measure measure(const Component& chi) {
  Measure m;
  m.existentials = (int)chi.bound_vars.size();
  m.free_variables = (int)chi.free_vars().size();
  for (const Literal& l : chi.literals) {
    LiteralClass c = classify_literal(l);
    if (!c.positive) ++m.negatives;
    if (c.positive && c.pattern == SidePattern::Mixed && !c.simple) ++m.complex_positives;
  }
  return m;
}

std::string Measure::str() const {
  return "(" + std::to_string(negatives) + ", " + std::to_string(existentials) + ", " +
         std::to_string(complex_positives) + ", " + std::to_string(free_variables) + ")";
}

// -- fragment checks --------------------------------------------------------------

namespace {

void check_arithmetic_term(const Term& t) {
  if (t.is_var()) return;
  const std::string& f = t.sym();
  if (f != "0" && f != "s" && f != "p" && f != "+")
    throw FragmentError("symbol outside the arithmetic language: " + f);
  for (const Term& a : t.args()) check_arithmetic_term(a);
}

void check_arithmetic(const Formula& f) {
  if (f.kind() == Formula::Kind::Atom) {
    if (!f.lit().is_equality)
      throw FragmentError("the pipeline handles equality literals only");
    for (const Term& t : f.lit().terms) check_arithmetic_term(t);
    return;
  }
  for (std::size_t i = 0; i < f.child_count(); ++i) check_arithmetic(f.child(i));
}

// Existential prefix of a prenexed formula; the matrix must be
// quantifier-free.
std::pair<std::vector<std::string>, Formula> strip_exists(const Formula& pf) {
  std::vector<std::string> prefix;
  const Formula* m = &pf;
  while (m->kind() == Formula::Kind::Exists) {
    prefix.push_back(m->var());
    m = &m->child();
  }
  if (!m->is_quantifier_free())
    throw FragmentError("expected an existential formula, found a universal quantifier");
  return {prefix, *m};
}

std::vector<std::vector<Literal>> dnf(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
      return {{f.lit()}};
    case Formula::Kind::Not: {
      if (f.child().kind() != Formula::Kind::Atom) throw std::logic_error("dnf expects NNF");
      Literal l = f.child().lit();
      l.positive = false;
      return {{l}};
    }
    case Formula::Kind::Or: {
      auto a = dnf(f.child(0));
      auto b = dnf(f.child(1));
      a.insert(a.end(), b.begin(), b.end());
      return a;
    }
    case Formula::Kind::And: {
      auto a = dnf(f.child(0));
      auto b = dnf(f.child(1));
      std::vector<std::vector<Literal>> out;
      out.reserve(a.size() * b.size());
      for (const auto& da : a)
        for (const auto& db : b) {
          std::vector<Literal> merged = da;
          merged.insert(merged.end(), db.begin(), db.end());
          out.push_back(std::move(merged));
        }
      return out;
    }
    default:
      throw std::logic_error("dnf expects an NNF matrix");
  }
}

std::vector<Literal> dedup_keep_order(const std::vector<Literal>& lits) {
  std::vector<Literal> out;
  for (const Literal& l : lits)
    if (std::find(out.begin(), out.end(), l) == out.end()) out.push_back(l);
  return out;
}

std::vector<Component> decompose(const Formula& f) {
  Formula pf = prenex_normal_form(f);
  auto [prefix, matrix] = strip_exists(pf);
  Formula nnf = negation_normal_form(matrix);
  std::vector<Component> out;
  for (const auto& raw : dnf(nnf)) {
    std::vector<Literal> lits = dedup_keep_order(raw);
    std::vector<std::string> used;
    for (const Literal& l : lits) l.collect_vars(used);
    std::vector<std::string> bound;
    for (const std::string& v : prefix)
      if (std::find(used.begin(), used.end(), v) != used.end()) bound.push_back(v);
    Component c{std::move(bound), std::move(lits)};
    if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(std::move(c));
  }
  return out;
}

}  // namespace

// -- unnesting and predecessor elimination --------------------------------------------

namespace {

struct Flattener {
  std::set<std::string> used;
  int counter = 0;
  std::vector<std::string> created;
  std::vector<Literal> defs;

  std::string fresh() {
    for (;;) {
      std::string cand = "u" + std::to_string(counter++);
      if (!used.count(cand)) {
        used.insert(cand);
        created.push_back(cand);
        return cand;
      }
    }
  }

  // Variable or function applied to variables; nested applications are
  // definition-split.
  Term flatten_args(const Term& t) {
    if (t.is_var()) return t;
    std::vector<Term> args;
    for (const Term& a : t.args()) {
      if (a.is_var()) {
        args.push_back(a);
        continue;
      }
      Term fa = flatten_args(a);
      std::string v = fresh();
      defs.push_back(Literal::oriented_equality(fa, Term::var(v)));
      args.push_back(Term::var(v));
    }
    return Term::app(t.sym(), std::move(args));
  }

  // Sides of the core literal; p applications always end up in definitions.
  Term flatten_side(const Term& t) {
    Term ft = flatten_args(t);
    if (ft.is_app() && ft.sym() == "p") {
      std::string v = fresh();
      defs.push_back(Literal::oriented_equality(ft, Term::var(v)));
      return Term::var(v);
    }
    return ft;
  }

  Formula flatten_literal(const Literal& l) {
    defs.clear();
    Term a = flatten_side(l.lhs());
    Term b = flatten_side(l.rhs());
    Literal core = Literal::oriented_equality(a, b, l.positive);
    std::vector<Formula> parts;
    for (const Literal& d : defs) parts.push_back(Formula::atom(d));
    parts.push_back(Formula::atom(core));
    return Formula::conj(std::move(parts));
  }

  Formula walk(const Formula& f) {
    switch (f.kind()) {
      case Formula::Kind::Atom:
        return flatten_literal(f.lit());
      case Formula::Kind::Not: {
        if (f.child().kind() != Formula::Kind::Atom) throw std::logic_error("matrix not in NNF");
        Literal l = f.child().lit();
        l.positive = false;
        return flatten_literal(l);
      }
      case Formula::Kind::And:
        return Formula::conj(walk(f.child(0)), walk(f.child(1)));
      case Formula::Kind::Or:
        return Formula::disj(walk(f.child(0)), walk(f.child(1)));
      default:
        throw std::logic_error("matrix not in NNF");
    }
  }
};

}  // namespace

Formula unnest(const Formula& phi) {
  check_arithmetic(phi);
  Formula pf = prenex_normal_form(phi);
  auto [prefix, matrix] = strip_exists(pf);
  Formula nnf = negation_normal_form(matrix);
  Flattener fl;
  fl.used = pf.all_vars();
  Formula body = fl.walk(nnf);
  std::vector<std::string> all = prefix;
  all.insert(all.end(), fl.created.begin(), fl.created.end());
  for (auto it = all.rbegin(); it != all.rend(); ++it)
    body = Formula::exists(*it, std::move(body));
  return body;
}

namespace {
Formula predecessor_definition(const Term& arg, const Term& value) {
  // (arg = 0 & value = 0) | s(value) = arg
  Formula zero_case = Formula::conj(Formula::atom(Literal::oriented_equality(arg, numeral(0))),
                                    Formula::atom(Literal::oriented_equality(value, numeral(0))));
  Formula succ_case =
      Formula::atom(Literal::oriented_equality(Term::app("s", {value}), arg));
  return Formula::disj(std::move(zero_case), std::move(succ_case));
}

Formula replace_p_atoms(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Atom: {
      const Literal& l = f.lit();
      if (l.is_equality && l.lhs().is_app() && l.lhs().sym() == "p")
        return predecessor_definition(l.lhs().args()[0], l.rhs());
      if (l.is_equality && l.rhs().is_app() && l.rhs().sym() == "p")
        return predecessor_definition(l.rhs().args()[0], l.lhs());
      return f;
    }
    case Formula::Kind::Not: {
      if (f.child().kind() == Formula::Kind::Atom && f.child().contains_sym("p"))
        throw std::logic_error("negative p literal after unnesting");
      return f;
    }
    case Formula::Kind::And:
      return Formula::conj(replace_p_atoms(f.child(0)), replace_p_atoms(f.child(1)));
    case Formula::Kind::Or:
      return Formula::disj(replace_p_atoms(f.child(0)), replace_p_atoms(f.child(1)));
    default:
      throw std::logic_error("unexpected shape after unnesting");
  }
}
}  // namespace

Formula eliminate_p(const Formula& phi) {
  Formula up = unnest(phi);
  auto [prefix, matrix] = strip_exists(up);
  Formula body = replace_p_atoms(matrix);
  for (auto it = prefix.rbegin(); it != prefix.rend(); ++it)
    body = Formula::exists(*it, std::move(body));
  return body;
}

std::vector<Component> to_components(const Formula& phi) {
  return decompose(eliminate_p(phi));
}

// -- zero elimination ---------------------------------------------------------------

Term eliminate_zero_term(const Term& t) {
  if (t.ground()) throw std::invalid_argument("term has no variables: " + t.str());
  if (t.is_var()) return t;
  if (t.sym() == "p") throw std::invalid_argument("term is not p-free: " + t.str());
  if (t.sym() == "s") return Term::app("s", {eliminate_zero_term(t.args()[0])});
  if (t.sym() == "+") {
    const Term& u = t.args()[0];
    const Term& v = t.args()[1];
    if (u.ground()) return s_tower(normalize_ground_term(u), eliminate_zero_term(v));
    if (v.ground()) return s_tower(normalize_ground_term(v), eliminate_zero_term(u));
    return Term::app("+", {eliminate_zero_term(u), eliminate_zero_term(v)});
  }
  throw std::invalid_argument("foreign symbol in arithmetic term: " + t.sym());
}

// -- mixed literal machinery -----------------------------------------------------------

Formula split_complex_atom(const Term& u, unsigned k) {
  if (u.ground()) throw std::invalid_argument("split expects a term with variables");
  std::vector<std::string> vars;
  u.collect_vars(vars);
  std::vector<unsigned> tuple(vars.size(), 0);
  std::vector<Formula> disjuncts;
  for (;;) {
    std::map<std::string, Term> subst;
    for (std::size_t i = 0; i < vars.size(); ++i) subst[vars[i]] = numeral(tuple[i]);
    if (normalize_ground_term(u.substitute(subst)) == k) {
      std::vector<Formula> guards;
      for (std::size_t i = 0; i < vars.size(); ++i)
        guards.push_back(
            Formula::atom(Literal::equality(Term::var(vars[i]), numeral(tuple[i]))));
      disjuncts.push_back(Formula::conj(std::move(guards)));
    }
    bool advanced = false;
    for (std::size_t i = vars.size(); i-- > 0;) {
      if (++tuple[i] <= k) {
        advanced = true;
        break;
      }
      tuple[i] = 0;
    }
    if (!advanced) break;
  }
  return Formula::disj(std::move(disjuncts));
}

Formula expand_disequation(const std::string& var, unsigned k) {
  std::string inner = fresh_var(var, {var});
  Formula succ_case = Formula::exists(
      inner, Formula::atom(Literal::equality(Term::var(var), s_tower(k + 1, Term::var(inner)))));
  std::vector<Formula> parts{std::move(succ_case)};
  for (unsigned i = 0; i < k; ++i)
    parts.push_back(Formula::atom(Literal::equality(Term::var(var), numeral(i))));
  return Formula::disj(std::move(parts));
}

namespace {

// Ground literals decided, equalities re-oriented, duplicates dropped, unused
// binders pruned. Returns nothing when the conjunction is outright false.
std::optional<Component> settle(Component c) {
  std::vector<Literal> lits;
  for (const Literal& raw : c.literals) {
    Literal l = raw.is_equality ? Literal::oriented_equality(raw.lhs(), raw.rhs(), raw.positive)
                                : raw;
    if (l.ground()) {
      bool truth = normalize_ground_term(l.lhs()) == normalize_ground_term(l.rhs());
      if (truth != l.positive) return std::nullopt;
      continue;
    }
    if (std::find(lits.begin(), lits.end(), l) == lits.end()) lits.push_back(l);
  }
  for (const Literal& l : lits)
    if (std::find(lits.begin(), lits.end(), l.negated()) != lits.end()) return std::nullopt;
  std::vector<std::string> used;
  for (const Literal& l : lits) l.collect_vars(used);
  std::vector<std::string> bound;
  for (const std::string& v : c.bound_vars)
    if (std::find(used.begin(), used.end(), v) != used.end()) bound.push_back(v);
  return Component{std::move(bound), std::move(lits)};
}

std::pair<Term, Term> mixed_sides(const Literal& l) {
  if (!l.lhs().ground()) return {l.lhs(), l.rhs()};
  return {l.rhs(), l.lhs()};
}

bool is_free_in(const Component& c, const std::string& v) {
  return std::find(c.bound_vars.begin(), c.bound_vars.end(), v) == c.bound_vars.end();
}

// Replaces one literal of the component by a formula and re-decomposes into
// settled components.
std::vector<Component> replace_literal(const Component& c, std::size_t index,
                                       const Formula& replacement) {
  std::vector<Formula> parts;
  for (std::size_t i = 0; i < c.literals.size(); ++i)
    parts.push_back(i == index ? replacement : Formula::atom(c.literals[i]));
  Formula body = Formula::conj(std::move(parts));
  for (auto it = c.bound_vars.rbegin(); it != c.bound_vars.rend(); ++it)
    body = Formula::exists(*it, body);
  std::vector<Component> out;
  for (const Component& child : decompose(body))
    if (auto settled = settle(child)) out.push_back(std::move(*settled));
  return out;
}

// Splits every complex mixed positive literal that substitution may have
// created, so guard extraction never raises the complex count.
std::vector<Component> settle_and_split_positives(Component c) {
  std::vector<Component> out;
  std::deque<Component> work;
  if (auto s = settle(std::move(c))) work.push_back(std::move(*s));
  while (!work.empty()) {
    Component cur = std::move(work.front());
    work.pop_front();
    bool split_done = false;
    for (std::size_t i = 0; i < cur.literals.size(); ++i) {
      LiteralClass lc = classify_literal(cur.literals[i]);
      if (lc.pattern == SidePattern::Mixed && lc.positive && !lc.simple) {
        auto [u, g] = mixed_sides(cur.literals[i]);
        Formula guards = split_complex_atom(u, normalize_ground_term(g));
        for (Component& child : replace_literal(cur, i, guards)) work.push_back(std::move(child));
        split_done = true;
        break;
      }
    }
    if (!split_done) out.push_back(std::move(cur));
  }
  return out;
}

}  // namespace

EliminationResult eliminate_mixed_literals(const Component& chi) {
  for (const Literal& l : chi.literals) {
    if (!l.is_equality) throw FragmentError("the pipeline handles equality literals only");
    for (const Term& t : l.terms) {
      check_arithmetic_term(t);
      if (t.contains_sym("p")) throw FragmentError("component is not p-free");
    }
  }

  EliminationResult result;
  struct Item {
    std::vector<std::pair<std::string, unsigned>> guards;
    Component component;
  };
  std::deque<Item> work;
  if (auto s = settle(chi)) work.push_back({{}, std::move(*s)});

  int steps = 0;
  while (!work.empty()) {
    if (++steps > 100000) throw std::runtime_error("mixed literal elimination did not terminate");
    Item item = std::move(work.front());
    work.pop_front();
    Component& cur = item.component;

    auto find_case = [&](auto pred) -> int {
      for (std::size_t i = 0; i < cur.literals.size(); ++i)
        if (pred(classify_literal(cur.literals[i]), cur.literals[i])) return (int)i;
      return -1;
    };

    int idx;
    // negative mixed literal
    if ((idx = find_case([](const LiteralClass& lc, const Literal&) {
           return lc.pattern == SidePattern::Mixed && !lc.positive;
         })) >= 0) {
      auto [u, g] = mixed_sides(cur.literals[idx]);
      unsigned k = normalize_ground_term(g);
      // Split the atom, negate the guards, and expand each disequation.
      std::vector<std::string> uvars;
      u.collect_vars(uvars);
      std::vector<Formula> conjuncts;
      std::vector<unsigned> tuple(uvars.size(), 0);
      for (;;) {
        std::map<std::string, Term> subst;
        for (std::size_t i = 0; i < uvars.size(); ++i) subst[uvars[i]] = numeral(tuple[i]);
        if (normalize_ground_term(u.substitute(subst)) == k) {
          std::vector<Formula> alts;
          for (std::size_t i = 0; i < uvars.size(); ++i)
            alts.push_back(expand_disequation(uvars[i], tuple[i]));
          conjuncts.push_back(Formula::disj(std::move(alts)));
        }
        bool advanced = false;
        for (std::size_t i = uvars.size(); i-- > 0;) {
          if (++tuple[i] <= k) {
            advanced = true;
            break;
          }
          tuple[i] = 0;
        }
        if (!advanced) break;
      }
      Formula replacement = Formula::conj(std::move(conjuncts));
      RewriteLogEntry entry{"negative-mixed", cur.literals[idx].str(), measure(cur), {}};
      std::vector<Component> children = replace_literal(cur, idx, replacement);
      for (Component& child : children) {
        entry.after.push_back(measure(child));
        work.push_back({item.guards, std::move(child)});
      }
      result.log.push_back(std::move(entry));
      continue;
    }

    // complex mixed positive literal
    if ((idx = find_case([](const LiteralClass& lc, const Literal&) {
           return lc.pattern == SidePattern::Mixed && lc.positive && !lc.simple;
         })) >= 0) {
      auto [u, g] = mixed_sides(cur.literals[idx]);
      Formula replacement = split_complex_atom(u, normalize_ground_term(g));
      RewriteLogEntry entry{"complex-positive", cur.literals[idx].str(), measure(cur), {}};
      std::vector<Component> children = replace_literal(cur, idx, replacement);
      for (Component& child : children) {
        entry.after.push_back(measure(child));
        work.push_back({item.guards, std::move(child)});
      }
      result.log.push_back(std::move(entry));
      continue;
    }

    // simple mixed positive on a free variable: extract a guard
    if ((idx = find_case([&](const LiteralClass& lc, const Literal& l) {
           if (!(lc.pattern == SidePattern::Mixed && lc.positive && lc.simple)) return false;
           auto [u, g] = mixed_sides(l);
           return is_free_in(cur, u.sym());
         })) >= 0) {
      auto [u, g] = mixed_sides(cur.literals[idx]);
      unsigned k = *numeral_value(g);
      RewriteLogEntry entry{"guard", cur.literals[idx].str(), measure(cur), {}};
      std::vector<Literal> substituted;
      for (const Literal& l : cur.literals)
        substituted.push_back(l.substitute({{u.sym(), numeral(k)}}));
      std::vector<Component> children =
          settle_and_split_positives({cur.bound_vars, std::move(substituted)});
      auto guards = item.guards;
      guards.emplace_back(u.sym(), k);
      for (Component& child : children) {
        entry.after.push_back(measure(child));
        work.push_back({guards, std::move(child)});
      }
      result.log.push_back(std::move(entry));
      continue;
    }

    // simple mixed positive on a bound variable: substitute it away
    if ((idx = find_case([&](const LiteralClass& lc, const Literal& l) {
           if (!(lc.pattern == SidePattern::Mixed && lc.positive && lc.simple)) return false;
           auto [u, g] = mixed_sides(l);
           return !is_free_in(cur, u.sym());
         })) >= 0) {
      auto [u, g] = mixed_sides(cur.literals[idx]);
      unsigned k = *numeral_value(g);
      RewriteLogEntry entry{"bound-simple", cur.literals[idx].str(), measure(cur), {}};
      std::vector<Literal> substituted;
      for (const Literal& l : cur.literals)
        substituted.push_back(l.substitute({{u.sym(), numeral(k)}}));
      std::vector<std::string> bound;
      for (const std::string& v : cur.bound_vars)
        if (v != u.sym()) bound.push_back(v);
      if (auto child = settle({std::move(bound), std::move(substituted)})) {
        entry.after.push_back(measure(*child));
        work.push_back({item.guards, std::move(*child)});
      }
      result.log.push_back(std::move(entry));
      continue;
    }

    // no mixed literals left: make the remaining two-variable literals 0-free
    std::vector<Literal> finished;
    for (const Literal& l : cur.literals)
      finished.push_back(Literal::equality(eliminate_zero_term(l.lhs()),
                                           eliminate_zero_term(l.rhs()), l.positive));
    result.parts.push_back({item.guards, Component{cur.bound_vars, std::move(finished)}});
  }
  return result;
}

// -- shift and strip ------------------------------------------------------------------

ShiftResult shift_and_strip(const Formula& phi, std::vector<std::string> vars) {
  std::vector<std::string> free = phi.free_vars();
  if (vars.empty()) vars = free;
  for (const std::string& v : free)
    if (std::find(vars.begin(), vars.end(), v) == vars.end())
      throw std::invalid_argument("shift variable list misses free variable " + v);

  ShiftResult r;
  for (const Component& chi : to_components(phi)) {
    EliminationResult one = eliminate_mixed_literals(chi);
    r.parts.insert(r.parts.end(), one.parts.begin(), one.parts.end());
    r.log.insert(r.log.end(), one.log.begin(), one.log.end());
  }
  unsigned max_guard = 0;
  for (const GuardedComponent& part : r.parts)
    for (const auto& [var, k] : part.guards) max_guard = std::max(max_guard, k);
  r.shift = max_guard + 1;

  std::map<std::string, Term> shift_subst;
  for (const std::string& v : vars) shift_subst[v] = s_tower(r.shift, Term::var(v));
  std::vector<Formula> disjuncts;
  for (const GuardedComponent& part : r.parts) {
    if (!part.guards.empty()) continue;
    disjuncts.push_back(part.core.to_formula().substitute(shift_subst));
  }
  r.stripped = Formula::disj(std::move(disjuncts));
  return r;
}

bool is_p_free(const Formula& f) { return !f.contains_sym("p"); }

bool is_zero_free(const Formula& f) { return !f.contains_sym("0"); }

}  // namespace csc
