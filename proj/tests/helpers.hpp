#pragma once

// Shared test utilities: seeded random generators for terms, formulas and
// clause sets over the arithmetic language, and a small standalone evaluator
// used as an independent oracle against the library's own evaluation paths.

#include <map>
#include <random>
#include <string>
#include <vector>

#include "cscycle/syntax.hpp"

namespace testutil {

using namespace csc;

using Rng = std::mt19937_64;

inline int pick(Rng& rng, int lo, int hi) {
  return (int)(lo + (long long)(rng() % (unsigned long long)(hi - lo + 1)));
}

// Random term over {0, s, p, +} and the given variables.
inline Term random_term(Rng& rng, const std::vector<std::string>& vars, int depth,
                        bool allow_p = true) {
  if (depth <= 0 || pick(rng, 0, 3) == 0) {
    if (!vars.empty() && pick(rng, 0, 2) > 0) return Term::var(vars[pick(rng, 0, (int)vars.size() - 1)]);
    return numeral((unsigned)pick(rng, 0, 3));
  }
  switch (pick(rng, 0, allow_p ? 2 : 1)) {
    case 0:
      return Term::app("s", {random_term(rng, vars, depth - 1, allow_p)});
    case 1:
      return Term::app("+", {random_term(rng, vars, depth - 1, allow_p),
                             random_term(rng, vars, depth - 1, allow_p)});
    default:
      return Term::app("p", {random_term(rng, vars, depth - 1, allow_p)});
  }
}

inline Literal random_literal(Rng& rng, const std::vector<std::string>& vars, int depth,
                              bool allow_p = true) {
  return Literal::oriented_equality(random_term(rng, vars, depth, allow_p),
                                    random_term(rng, vars, depth, allow_p),
                                    pick(rng, 0, 1) == 0);
}

// Random quantifier-free formula.
inline Formula random_matrix(Rng& rng, const std::vector<std::string>& vars, int size,
                             bool allow_p = true) {
  if (size <= 1) return Formula::atom(random_literal(rng, vars, 1, allow_p).negated().negated());
  switch (pick(rng, 0, 4)) {
    case 0:
      return Formula::negation(random_matrix(rng, vars, size - 1, allow_p));
    case 1:
      return Formula::conj(random_matrix(rng, vars, size / 2, allow_p),
                           random_matrix(rng, vars, size / 2, allow_p));
    case 2:
      return Formula::disj(random_matrix(rng, vars, size / 2, allow_p),
                           random_matrix(rng, vars, size / 2, allow_p));
    case 3:
      return Formula::implies(random_matrix(rng, vars, size / 2, allow_p),
                              random_matrix(rng, vars, size / 2, allow_p));
    default:
      return Formula::atom(random_literal(rng, vars, 2, allow_p).negated().negated());
  }
}

// Random existential formula with the given free and bound variables.
inline Formula random_exists1(Rng& rng, int free_count, int bound_count, int size,
                              bool allow_p = true) {
  std::vector<std::string> vars;
  for (int i = 0; i < free_count; ++i) vars.push_back("x" + std::to_string(i));
  std::vector<std::string> bound;
  for (int i = 0; i < bound_count; ++i) {
    bound.push_back("y" + std::to_string(i));
    vars.push_back(bound.back());
  }
  Formula f = random_matrix(rng, vars, size, allow_p);
  for (auto it = bound.rbegin(); it != bound.rend(); ++it) f = Formula::exists(*it, f);
  return f;
}

// Independent standard-model evaluator (kept separate from the library's
// evaluation paths on purpose).
inline long long nat_eval(const Term& t, const std::map<std::string, long long>& env) {
  if (t.is_var()) return env.at(t.sym());
  if (t.sym() == "0") return 0;
  if (t.sym() == "s") return nat_eval(t.args()[0], env) + 1;
  if (t.sym() == "p") {
    long long v = nat_eval(t.args()[0], env);
    return v > 0 ? v - 1 : 0;
  }
  if (t.sym() == "+") return nat_eval(t.args()[0], env) + nat_eval(t.args()[1], env);
  throw std::runtime_error("unexpected symbol " + t.sym());
}

// Bounded truth in the standard model; existentials search [0..witness_cap].
inline bool nat_holds(const Formula& f, std::map<std::string, long long>& env,
                      long long witness_cap) {
  switch (f.kind()) {
    case Formula::Kind::Atom: {
      const Literal& l = f.lit();
      bool eq = nat_eval(l.lhs(), env) == nat_eval(l.rhs(), env);
      return l.positive ? eq : !eq;
    }
    case Formula::Kind::Not:
      return !nat_holds(f.child(), env, witness_cap);
    case Formula::Kind::And:
      return nat_holds(f.child(0), env, witness_cap) && nat_holds(f.child(1), env, witness_cap);
    case Formula::Kind::Or:
      return nat_holds(f.child(0), env, witness_cap) || nat_holds(f.child(1), env, witness_cap);
    case Formula::Kind::Implies:
      return !nat_holds(f.child(0), env, witness_cap) || nat_holds(f.child(1), env, witness_cap);
    case Formula::Kind::Iff:
      return nat_holds(f.child(0), env, witness_cap) == nat_holds(f.child(1), env, witness_cap);
    case Formula::Kind::Exists: {
      for (long long v = 0; v <= witness_cap; ++v) {
        env[f.var()] = v;
        bool ok = nat_holds(f.child(), env, witness_cap);
        env.erase(f.var());
        if (ok) return true;
      }
      return false;
    }
    case Formula::Kind::Forall: {
      for (long long v = 0; v <= witness_cap; ++v) {
        env[f.var()] = v;
        bool ok = nat_holds(f.child(), env, witness_cap);
        env.erase(f.var());
        if (!ok) return false;
      }
      return true;
    }
  }
  return false;
}

}  // namespace testutil
