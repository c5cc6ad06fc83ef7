#include <algorithm>
#include <cassert>

#include "cscycle/models.hpp"

namespace csc {

unsigned type_join(unsigned n, unsigned m) { return n != 0 ? n : m; }

unsigned truncated_sub(unsigned n, unsigned m) { return n >= m ? n - m : 0; }

std::string ModelElement::str() const {
  return std::to_string(value) + "^[" + std::to_string(type) + "]";
}

StructureId StructureId::parse(const std::string& text) {
  if (text == "N") return standard();
  if (text == "Z") return integers();
  if (text == "shoenfield") return shoenfield();
  if (text == "pstruct") return pstruct();
  if (text.rfind("M:", 0) == 0) {
    unsigned i = (unsigned)std::stoul(text.substr(2));
    return m_chain(i);
  }
  throw std::invalid_argument("unknown structure id: " + text);
}

std::string StructureId::str() const {
  switch (family) {
    case Family::N: return "N";
    case Family::Z: return "Z";
    case Family::MChain: return "M:" + std::to_string(chains);
    case Family::Shoenfield: return "shoenfield";
    case Family::PStruct: return "pstruct";
  }
  return "?";
}

Structure::Structure(StructureId id) : id_(id) {
  lang_ = id.family == StructureId::Family::PStruct ? Language::progression(true)
                                                    : Language::linear_arithmetic(true);
}

bool Structure::in_domain(const ModelElement& e) const {
  switch (id_.family) {
    case StructureId::Family::N:
      return e.type == 0 && e.value >= 0;
    case StructureId::Family::Z:
      return e.type == 0;
    case StructureId::Family::MChain:
      if (e.type > id_.chains) return false;
      return e.type != 0 || e.value >= 0;
    case StructureId::Family::Shoenfield:
      return e.type != 0 || e.value >= 0;
    case StructureId::Family::PStruct:
      if (e.type > 1) return false;
      return e.type != 0 || e.value >= 0;
  }
  return false;
}

ModelElement Structure::eval_fun(const std::string& sym,
                                 const std::vector<ModelElement>& args) const {
  using F = StructureId::Family;
  if (sym == "0") return {0, 0};
  if (sym == "s") return {args[0].type, args[0].value + 1};
  if (sym == "p") {
    if (id_.family == F::PStruct) throw EvalError("p is not in the structure language");
    const ModelElement& a = args[0];
    if (id_.family == F::Z) return {0, a.value - 1};
    if (a.type == 0) return {0, a.value > 0 ? a.value - 1 : 0};
    return {a.type, a.value - 1};
  }
  if (sym == "+") {
    if (id_.family == F::PStruct) throw EvalError("+ is not in the structure language");
    const ModelElement& a = args[0];
    const ModelElement& b = args[1];
    if (id_.family == F::Shoenfield) return {a.type + b.type, a.value + b.value};
    if (id_.family == F::N || id_.family == F::Z) return {0, a.value + b.value};
    return {type_join(a.type, b.type), a.value + b.value};
  }
  if (sym == "f") {
    if (id_.family != F::PStruct) throw EvalError("f is not in the structure language");
    return {1, args[0].value};
  }
  throw EvalError("structure " + id_.str() + " does not interpret " + sym);
}

bool Structure::eval_pred(const std::string& sym, const std::vector<ModelElement>& args) const {
  if (id_.family == StructureId::Family::PStruct && sym == "P") return args[0].type == 0;
  throw EvalError("structure " + id_.str() + " does not interpret predicate " + sym);
}

std::optional<ModelElement> Structure::native_eta() const {
  if (id_.family == StructureId::Family::PStruct) return ModelElement{0, 0};
  return std::nullopt;
}

namespace {
void push_values(std::vector<ModelElement>& out, unsigned type, long long cap, bool negatives) {
  out.push_back({type, 0});
  for (long long v = 1; v <= cap; ++v) {
    out.push_back({type, v});
    if (negatives) out.push_back({type, -v});
  }
}
}  // namespace

std::vector<ModelElement> Structure::box(const Bounds& b) const {
  std::vector<ModelElement> out;
  switch (id_.family) {
    case StructureId::Family::N:
      push_values(out, 0, b.value_box, false);
      break;
    case StructureId::Family::Z:
      push_values(out, 0, b.value_box, true);
      break;
    case StructureId::Family::MChain:
      push_values(out, 0, b.value_box, false);
      for (unsigned m = 1; m <= id_.chains; ++m) push_values(out, m, b.value_box, true);
      break;
    case StructureId::Family::Shoenfield:
      push_values(out, 0, b.value_box, false);
      for (unsigned m = 1; m <= b.type_cap; ++m) push_values(out, m, b.value_box, true);
      break;
    case StructureId::Family::PStruct:
      push_values(out, 0, b.value_box, false);
      push_values(out, 1, b.value_box, true);
      break;
  }
  return out;
}

std::vector<ModelElement> Structure::witness_box(const Bounds& b) const {
  Bounds wb = b;
  wb.value_box = b.witness_cap;
  return box(wb);
}

ModelElement eval_term(const Structure& s, const std::map<std::string, ModelElement>& assignment,
                       const Interpretation& constants, const Term& t) {
  if (t.is_var()) {
    auto it = assignment.find(t.sym());
    if (it == assignment.end()) throw EvalError("unbound variable " + t.sym());
    return it->second;
  }
  if (t.args().empty()) {
    if (t.sym() == kEtaName) {
      auto it = constants.find(kEtaName);
      if (it != constants.end()) return it->second;
      if (auto nat = s.native_eta()) return *nat;
      throw EvalError("eta has no interpretation in " + s.id().str());
    }
    if (t.sym() != "0") {
      auto it = constants.find(t.sym());
      if (it != constants.end()) return it->second;
      if (s.language().functions().count(t.sym()) == 0)
        throw EvalError("constant " + t.sym() + " has no interpretation in " + s.id().str());
    }
  }
  std::vector<ModelElement> args;
  args.reserve(t.args().size());
  for (const Term& a : t.args()) args.push_back(eval_term(s, assignment, constants, a));
  return s.eval_fun(t.sym(), args);
}

bool eval_literal(const Structure& s, const std::map<std::string, ModelElement>& assignment,
                  const Interpretation& constants, const Literal& l) {
  bool atom;
  if (l.is_equality) {
    atom = eval_term(s, assignment, constants, l.lhs()) ==
           eval_term(s, assignment, constants, l.rhs());
  } else {
    std::vector<ModelElement> args;
    for (const Term& t : l.terms) args.push_back(eval_term(s, assignment, constants, t));
    atom = s.eval_pred(l.pred, args);
  }
  return l.positive ? atom : !atom;
}

std::string tri_str(Tri t) {
  switch (t) {
    case Tri::True: return "holds-at-bounds";
    case Tri::False: return "violated";
    case Tri::Unknown: return "unknown";
  }
  return "unknown";
}

Tri eval_bounded(const Structure& s, const std::map<std::string, ModelElement>& assignment,
                 const Interpretation& constants, const Formula& f, const Bounds& b) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
      return eval_literal(s, assignment, constants, f.lit()) ? Tri::True : Tri::False;
    case Formula::Kind::Not: {
      Tri t = eval_bounded(s, assignment, constants, f.child(), b);
      if (t == Tri::Unknown) return t;
      return t == Tri::True ? Tri::False : Tri::True;
    }
    case Formula::Kind::And: {
      Tri a = eval_bounded(s, assignment, constants, f.child(0), b);
      if (a == Tri::False) return Tri::False;
      Tri c = eval_bounded(s, assignment, constants, f.child(1), b);
      if (c == Tri::False) return Tri::False;
      return (a == Tri::Unknown || c == Tri::Unknown) ? Tri::Unknown : Tri::True;
    }
    case Formula::Kind::Or: {
      Tri a = eval_bounded(s, assignment, constants, f.child(0), b);
      if (a == Tri::True) return Tri::True;
      Tri c = eval_bounded(s, assignment, constants, f.child(1), b);
      if (c == Tri::True) return Tri::True;
      return (a == Tri::Unknown || c == Tri::Unknown) ? Tri::Unknown : Tri::False;
    }
    case Formula::Kind::Implies:
      return eval_bounded(
          s, assignment, constants,
          Formula::disj(Formula::negation(f.child(0)), f.child(1)), b);
    case Formula::Kind::Iff: {
      Tri a = eval_bounded(s, assignment, constants, f.child(0), b);
      Tri c = eval_bounded(s, assignment, constants, f.child(1), b);
      if (a == Tri::Unknown || c == Tri::Unknown) return Tri::Unknown;
      return a == c ? Tri::True : Tri::False;
    }
    case Formula::Kind::Forall: {
      bool unknown = false;
      for (const ModelElement& e : s.box(b)) {
        auto inner = assignment;
        inner[f.var()] = e;
        Tri t = eval_bounded(s, inner, constants, f.child(), b);
        if (t == Tri::False) return Tri::False;
        if (t == Tri::Unknown) unknown = true;
      }
      return unknown ? Tri::Unknown : Tri::True;
    }
    case Formula::Kind::Exists: {
      for (const ModelElement& e : s.witness_box(b)) {
        auto inner = assignment;
        inner[f.var()] = e;
        if (eval_bounded(s, inner, constants, f.child(), b) == Tri::True) return Tri::True;
      }
      // Exhausted witness search: the formula may still hold beyond bounds.
      return Tri::Unknown;
    }
  }
  return Tri::Unknown;
}

namespace {
constexpr long long kScanCap = 8'000'000;

// True when the literal holds for every boxed assignment of its own
// variables; such a literal settles its whole clause.
bool literal_universally_true(const Structure& s, const Literal& l, const Bounds& b,
                              const Interpretation& constants) {
  std::vector<std::string> vars;
  l.collect_vars(vars);
  std::vector<ModelElement> box = s.box(b);
  long long space = 1;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    space *= (long long)box.size();
    if (space > kScanCap) return false;
  }
  std::vector<std::size_t> idx(vars.size(), 0);
  for (;;) {
    std::map<std::string, ModelElement> assignment;
    for (std::size_t i = 0; i < vars.size(); ++i) assignment[vars[i]] = box[idx[i]];
    if (!eval_literal(s, assignment, constants, l)) return false;
    bool advanced = false;
    for (std::size_t i = vars.size(); i-- > 0;) {
      if (++idx[i] < box.size()) {
        advanced = true;
        break;
      }
      idx[i] = 0;
    }
    if (!advanced) return true;
  }
}
}  // namespace

ClauseCheck check_clause_bounded(const Structure& s, const Clause& c, const Bounds& b,
                                 const Interpretation& constants) {
  for (const Literal& l : c.literals())
    if (literal_universally_true(s, l, b, constants)) return {Tri::True, {}};

  std::vector<std::string> vars = c.variables();
  std::vector<ModelElement> box = s.box(b);
  long long space = 1;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    space *= (long long)box.size();
    if (space > kScanCap) return {Tri::Unknown, {}};
  }
  std::vector<std::size_t> idx(vars.size(), 0);
  for (;;) {
    std::map<std::string, ModelElement> assignment;
    for (std::size_t i = 0; i < vars.size(); ++i) assignment[vars[i]] = box[idx[i]];
    bool any = false;
    for (const Literal& l : c.literals())
      if (eval_literal(s, assignment, constants, l)) {
        any = true;
        break;
      }
    if (!any) return {Tri::False, assignment};
    // Advance the odometer with the first variable most significant.
    bool advanced = false;
    for (std::size_t i = vars.size(); i-- > 0;) {
      if (++idx[i] < box.size()) {
        advanced = true;
        break;
      }
      idx[i] = 0;
    }
    if (!advanced) return {Tri::True, {}};
  }
}

BoundedReport holds_bounded(const Structure& s, const ClauseSet& c, const Bounds& b,
                            const Interpretation& constants) {
  BoundedReport r;
  r.bounds = b;
  for (const Clause& cl : c.clauses()) {
    ClauseCheck check = check_clause_bounded(s, cl, b, constants);
    if (check.result == Tri::False) {
      r.result = Tri::False;
      r.violated_clause = cl;
      r.counter_assignment = check.violation;
      r.detail = "clause " + cl.str() + " violated in " + s.id().str();
      return r;
    }
    if (check.result == Tri::Unknown) {
      r.result = Tri::Unknown;
      r.detail = "clause " + cl.str() + " exceeds the assignment scan cap";
      return r;
    }
  }
  r.result = Tri::True;
  r.detail = "all " + std::to_string(c.size()) + " clauses hold at value bound " +
             std::to_string(b.value_box) + " in " + s.id().str();
  return r;
}

BoundedReport holds_bounded(const Structure& s, const Formula& f, const Bounds& b,
                            const Interpretation& constants) {
  BoundedReport r;
  r.bounds = b;
  // Free variables are read universally, matching clause semantics.
  Formula closed = f.universal_closure();
  r.result = eval_bounded(s, {}, constants, closed, b);
  r.detail = tri_str(r.result) + " in " + s.id().str();
  return r;
}

BoundedReport holds_bounded(const Structure& s, const std::vector<Formula>& sentences,
                            const Bounds& b, const Interpretation& constants) {
  BoundedReport r;
  r.bounds = b;
  for (const Formula& f : sentences) {
    BoundedReport one = holds_bounded(s, f, b, constants);
    if (one.result != Tri::True) {
      one.detail = "sentence " + f.str() + ": " + one.detail;
      return one;
    }
  }
  r.result = Tri::True;
  r.detail = "all " + std::to_string(sentences.size()) + " sentences hold at bounds in " +
             s.id().str();
  return r;
}

ModelElement embed_into_chain(unsigned m, long long n, unsigned chains) {
  if (m < 1 || m > chains)
    throw std::invalid_argument("chain index must lie in [1, " + std::to_string(chains) + "]");
  return {m, n};
}

CancellationWitnessReport cancellation_witness(unsigned k, unsigned n, unsigned m) {
  if (!(0 < n && n < m)) throw std::invalid_argument("cancellation parameters require 0 < n < m");
  CancellationWitnessReport r;
  r.k = k;
  r.n = n;
  r.m = m;
  r.witness = {1, (long long)k};
  Structure m1(StructureId::m_chain(1));
  Term x = Term::var("x");
  Term lhs = Term::app("+", {scalar_mul(n, x), numeral((m - n) * k)});
  Term rhs = scalar_mul(m, x);
  std::map<std::string, ModelElement> a{{"x", r.witness}};
  r.lhs = eval_term(m1, a, {}, lhs);
  r.rhs = eval_term(m1, a, {}, rhs);
  r.sides_equal = r.lhs == r.rhs;
  ModelElement kn = eval_term(m1, {}, {}, numeral(k));
  r.differs_from_numeral = !(r.witness == kn);
  return r;
}

InductionFailureReport induction_failure_witness(unsigned chains, const Bounds& b) {
  if (chains == 0) throw std::invalid_argument("need at least one integer chain");
  InductionFailureReport r;
  r.chains = chains;
  Structure s(StructureId::m_chain(chains));
  Language la = Language::linear_arithmetic(false);
  Formula chi = parse_formula(
      "exists y1. exists y2. exists y3. "
      "(x + y1 != x + y2 & x + (y3 + y1) = x + (y3 + y2))",
      la);
  r.induction_formula = chi;

  // Base and sampled standard instances hold via the explicit witnesses
  // (0^[0], 0^[1], 0^[1]).
  r.base_holds = true;
  for (long long v = 0; v <= 5; ++v) {
    std::map<std::string, ModelElement> a{{"x", {0, v}},
                                          {"y1", {0, 0}},
                                          {"y2", {1, 0}},
                                          {"y3", {1, 0}}};
    Formula matrix = chi.child().child().child();  // strip the three exists
    bool holds = eval_bounded(s, a, {}, matrix, b) == Tri::True;
    if (!holds) r.base_holds = false;
    if (holds) r.standard_sampled.push_back(v);
  }

  // The conclusion fails on the first integer chain: witness search within
  // bounds finds nothing.
  r.failing_element = {1, 0};
  {
    std::map<std::string, ModelElement> a{{"x", r.failing_element}};
    Tri t = eval_bounded(s, a, {}, chi, b);
    r.conclusion_fails = t != Tri::True;
  }

  // Sampled step instances: on the standard chain both sides hold, on an
  // integer chain the antecedent already fails at bounds.
  r.step_holds_at_bounds = true;
  for (const ModelElement& e : {ModelElement{0, 0}, ModelElement{0, 3}, ModelElement{1, 0},
                                ModelElement{1, 2}}) {
    std::map<std::string, ModelElement> a{{"x", e}};
    Tri ante = eval_bounded(s, a, {}, chi, b);
    std::map<std::string, ModelElement> a2{{"x", {e.type, e.value + 1}}};
    Tri succ = eval_bounded(s, a2, {}, chi, b);
    if (ante == Tri::True && succ != Tri::True) r.step_holds_at_bounds = false;
  }

  r.axiom_bounded_violated = r.base_holds && r.step_holds_at_bounds && r.conclusion_fails;
  r.detail = std::string("base ") + (r.base_holds ? "holds" : "fails") + ", step " +
             (r.step_holds_at_bounds ? "holds at bounds" : "fails") + ", conclusion at " +
             r.failing_element.str() + (r.conclusion_fails ? " fails" : " holds") +
             " under witness bound " + std::to_string(b.witness_cap);
  return r;
}

OddEvenReport shoenfield_odd_even_check(long long bound) {
  OddEvenReport r;
  r.bound = bound;
  Structure s(StructureId::shoenfield());
  Language la = Language::linear_arithmetic(false);
  std::vector<Formula> bprime;
  for (const char* ax :
       {"s(0) != 0", "p(0) = 0", "p(s(x)) = x", "x + 0 = x", "x + s(y) = s(x + y)",
        "x = 0 | x = s(p(x))", "x + y = y + x", "x + (y + z) = (x + y) + z",
        "x + y = x + z -> y = z"})
    bprime.push_back(parse_formula(ax, la).universal_closure());

  Bounds b;
  b.value_box = bound;
  b.type_cap = (unsigned)bound;
  r.bprime_holds_at_bounds = holds_bounded(s, bprime, b).result == Tri::True;

  ModelElement target{1, 0};
  for (const ModelElement& e : s.box(b)) {
    ModelElement twice = s.eval_fun("+", {e, e});
    if (twice == target) r.witness_even = true;
    if (s.eval_fun("s", {twice}) == target) r.witness_odd = true;
  }
  r.detail = std::string("base theory ") +
             (r.bprime_holds_at_bounds ? "holds at bounds" : "violated") + "; (1,0) is " +
             (r.witness_even ? "even" : "not even") + " and " +
             (r.witness_odd ? "odd" : "not odd") + " within bound " + std::to_string(bound);
  return r;
}

}  // namespace csc
