#include <algorithm>
#include <chrono>
#include <functional>
#include <set>
#include <tuple>
#include <unordered_map>
#include <unordered_set>

#include "cscycle/entailment.hpp"

namespace csc {

void Budget::validate() const {
  if (max_inferences <= 0 || max_term_depth < 0 || max_witness_magnitude <= 0 ||
      time_cap_seconds <= 0)
    throw std::invalid_argument("budget fields must be positive");
}

std::string Verdict::kind_str() const {
  switch (kind) {
    case Kind::Valid: return "valid";
    case Kind::Refuted: return "refuted";
    case Kind::Unknown: return "unknown";
  }
  return "unknown";
}

// -- ground decision ----------------------------------------------------------

namespace {
bool eval_ground(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Atom: {
      const Literal& l = f.lit();
      if (!l.is_equality)
        throw std::invalid_argument("predicate atom in an arithmetic sentence");
      bool eq = normalize_ground_term(l.lhs()) == normalize_ground_term(l.rhs());
      return l.positive ? eq : !eq;
    }
    case Formula::Kind::Not:
      return !eval_ground(f.child());
    case Formula::Kind::And:
      return eval_ground(f.child(0)) && eval_ground(f.child(1));
    case Formula::Kind::Or:
      return eval_ground(f.child(0)) || eval_ground(f.child(1));
    case Formula::Kind::Implies:
      return !eval_ground(f.child(0)) || eval_ground(f.child(1));
    case Formula::Kind::Iff:
      return eval_ground(f.child(0)) == eval_ground(f.child(1));
    default:
      throw std::invalid_argument("quantifier in a ground sentence");
  }
}
}  // namespace

bool decide_ground(const Formula& sentence) {
  if (!sentence.free_vars().empty())
    throw std::invalid_argument("sentence has free variables");
  return eval_ground(sentence);
}

// -- existential witness search --------------------------------------------------

Verdict prove_exists1_by_witness(const Formula& sentence, long long witness_bound) {
  if (witness_bound < 0) throw std::invalid_argument("negative witness bound");
  Formula pf = prenex_normal_form(sentence);
  QuantClass qc = classify_quantifier(pf);
  if (!(qc.is_open() || qc.shape == QuantShape::ExistsK))
    throw FragmentError("witness search needs an existential sentence, got " + qc.str());
  std::vector<std::string> vars;
  const Formula* matrix = &pf;
  while (matrix->kind() == Formula::Kind::Exists) {
    vars.push_back(matrix->var());
    matrix = &matrix->child();
  }
  if (!matrix->is_quantifier_free())
    throw FragmentError("witness search needs a purely existential prefix");

  std::vector<long long> tuple(vars.size(), 0);
  for (;;) {
    std::map<std::string, Term> subst;
    for (std::size_t i = 0; i < vars.size(); ++i) subst[vars[i]] = numeral((unsigned)tuple[i]);
    Formula instance = matrix->substitute(subst);
    if (decide_ground(instance)) {
      TraceStep step;
      step.kind = TraceStep::Kind::Witness;
      step.substitution = subst;
      step.witness_sentence = std::make_shared<Formula>(instance);
      step.note = "numeral instantiation verified in the standard model";
      ProofTrace trace;
      trace.steps.push_back(std::move(step));
      return Verdict::valid(std::move(trace));
    }
    if (vars.empty()) break;
    bool advanced = false;
    for (std::size_t i = vars.size(); i-- > 0;) {
      if (++tuple[i] <= witness_bound) {
        advanced = true;
        break;
      }
      tuple[i] = 0;
    }
    if (!advanced) break;
  }
  return Verdict::unknown("no witness tuple within bound " + std::to_string(witness_bound));
}

// -- prenexing into a forall-exists shape ------------------------------------------

namespace {

struct Prefix {
  std::vector<std::pair<bool, std::string>> q;  // (is_forall, var)
};

Prefix merge_forall_first(Prefix a, Prefix b) {
  Prefix out;
  std::size_t i = 0, j = 0;
  while (i < a.q.size() || j < b.q.size()) {
    if (i < a.q.size() && a.q[i].first) out.q.push_back(a.q[i++]);
    else if (j < b.q.size() && b.q[j].first) out.q.push_back(b.q[j++]);
    else if (i < a.q.size()) out.q.push_back(a.q[i++]);
    else out.q.push_back(b.q[j++]);
  }
  return out;
}

struct Pi2State {
  std::set<std::string> used;
  int counter = 0;
  std::string fresh() {
    for (;;) {
      std::string cand = "q" + std::to_string(counter++);
      if (!used.count(cand)) {
        used.insert(cand);
        return cand;
      }
    }
  }
};

std::pair<Prefix, Formula> pull_quantifiers(const Formula& f, bool positive, Pi2State& st) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
      return {{}, f};
    case Formula::Kind::Not: {
      auto [p, m] = pull_quantifiers(f.child(), !positive, st);
      return {std::move(p), Formula::negation(std::move(m))};
    }
    case Formula::Kind::And:
    case Formula::Kind::Or: {
      auto [pa, ma] = pull_quantifiers(f.child(0), positive, st);
      auto [pb, mb] = pull_quantifiers(f.child(1), positive, st);
      Formula m = f.kind() == Formula::Kind::And ? Formula::conj(std::move(ma), std::move(mb))
                                                 : Formula::disj(std::move(ma), std::move(mb));
      return {merge_forall_first(std::move(pa), std::move(pb)), std::move(m)};
    }
    case Formula::Kind::Implies: {
      auto [pa, ma] = pull_quantifiers(f.child(0), !positive, st);
      auto [pb, mb] = pull_quantifiers(f.child(1), positive, st);
      return {merge_forall_first(std::move(pa), std::move(pb)),
              Formula::implies(std::move(ma), std::move(mb))};
    }
    case Formula::Kind::Iff: {
      Formula expanded = Formula::conj(Formula::implies(f.child(0), f.child(1)),
                                       Formula::implies(f.child(1), f.child(0)));
      return pull_quantifiers(expanded, positive, st);
    }
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: {
      bool forall_here = (f.kind() == Formula::Kind::Forall) == positive;
      std::string name = st.fresh();
      Formula body = f.child().substitute({{f.var(), Term::var(name)}});
      auto [p, m] = pull_quantifiers(body, positive, st);
      p.q.insert(p.q.begin(), {forall_here, name});
      return {std::move(p), std::move(m)};
    }
  }
  throw std::logic_error("unreachable");
}

void collect_app_syms(const Term& t, std::set<std::string>& out) {
  if (t.is_app()) {
    out.insert(t.sym());
    for (const Term& a : t.args()) collect_app_syms(a, out);
  }
}

void collect_app_syms(const ClauseSet& c, std::set<std::string>& out) {
  for (const Clause& cl : c.clauses())
    for (const Literal& l : cl.literals())
      for (const Term& t : l.terms) collect_app_syms(t, out);
}

}  // namespace

// -- countermodel search --------------------------------------------------------------

namespace {

struct UsedSymbols {
  std::map<std::string, int> funs;
  std::map<std::string, int> preds;
};

void scan_term(const Term& t, UsedSymbols& u) {
  if (t.is_app()) {
    u.funs[t.sym()] = (int)t.args().size();
    for (const Term& a : t.args()) scan_term(a, u);
  }
}

UsedSymbols used_symbols(const ClauseSet& c) {
  UsedSymbols u;
  for (const Clause& cl : c.clauses())
    for (const Literal& l : cl.literals()) {
      if (!l.is_equality) u.preds[l.pred] = (int)l.terms.size();
      for (const Term& t : l.terms) scan_term(t, u);
    }
  return u;
}

constexpr std::size_t kMaxSearchedConstants = 3;

std::optional<Verdict> find_bounded_model(const ClauseSet& c, const Budget& budget) {
  Bounds bounds;
  bounds.value_box = budget.max_witness_magnitude;
  bounds.type_cap = 2;
  bounds.witness_cap = budget.max_witness_magnitude;
  UsedSymbols use = used_symbols(c);

  const StructureId family[] = {StructureId::standard(),   StructureId::integers(),
                                StructureId::m_chain(1),   StructureId::m_chain(2),
                                StructureId::shoenfield(), StructureId::pstruct()};
  for (const StructureId& id : family) {
    Structure s(id);
    std::vector<std::string> extras;
    bool covered = true;
    for (const auto& [sym, arity] : use.funs) {
      if (arity == 0) {
        if (sym == "0") continue;
        if (sym == kEtaName && s.native_eta()) continue;
        extras.push_back(sym);
        continue;
      }
      auto it = s.language().functions().find(sym);
      if (it == s.language().functions().end() || it->second != arity) {
        covered = false;
        break;
      }
    }
    if (covered)
      for (const auto& [sym, arity] : use.preds) {
        auto it = s.language().predicates().find(sym);
        if (it == s.language().predicates().end() || it->second != arity) {
          covered = false;
          break;
        }
      }
    if (!covered) continue;
    std::sort(extras.begin(), extras.end(), [](const std::string& a, const std::string& b) {
      if ((a == kEtaName) != (b == kEtaName)) return a == kEtaName;
      return a < b;
    });
    if (extras.size() > kMaxSearchedConstants) continue;

    // Group clauses by the last searched constant they mention; constant-free
    // clauses are checked once.
    std::vector<std::vector<Clause>> groups(extras.size() + 1);
    for (const Clause& cl : c.clauses()) {
      std::size_t level = 0;
      for (std::size_t i = 0; i < extras.size(); ++i)
        if (cl.contains_sym(extras[i])) level = i + 1;
      groups[level].push_back(cl);
    }

    try {
      bool indep_ok = true;
      for (const Clause& cl : groups[0])
        if (check_clause_bounded(s, cl, bounds).result != Tri::True) {
          indep_ok = false;
          break;
        }
      if (!indep_ok) continue;

      std::vector<ModelElement> box = s.box(bounds);
      Interpretation interp;
      std::function<bool(std::size_t)> assign = [&](std::size_t level) -> bool {
        if (level == extras.size()) return true;
        for (const ModelElement& e : box) {
          interp[extras[level]] = e;
          bool good = true;
          for (const Clause& cl : groups[level + 1])
            if (check_clause_bounded(s, cl, bounds, interp).result != Tri::True) {
              good = false;
              break;
            }
          if (good && assign(level + 1)) return true;
        }
        interp.erase(extras[level]);
        return false;
      };
      if (assign(0))
        return Verdict::refuted(id.str(), interp, bounds.value_box);
    } catch (const EvalError&) {
      continue;
    }
  }
  return std::nullopt;
}

}  // namespace

// -- ground saturation ------------------------------------------------------------------

namespace {

constexpr int kMaxClauseWeight = 120;
constexpr std::size_t kMaxClauseLiterals = 16;
constexpr int kMaxStoredClauses = 300000;

class Saturation {
 public:
  Saturation(std::vector<Clause> inputs, const Budget& budget)
      : budget_(budget), inputs_(std::move(inputs)) {
    start_ = std::chrono::steady_clock::now();
    for (std::size_t i = 0; i < inputs_.size(); ++i) {
      input_vars_.push_back(inputs_[i].variables());
      std::vector<int> pattern;
      for (const Literal& l : inputs_[i].literals()) pattern.push_back(intern_lit(l));
      input_patterns_.push_back(std::move(pattern));
    }
    collect_bases();
  }

  Verdict run() {
    // Ground the cheap instantiation rounds up front so input instances are
    // never starved behind derived clauses; expensive rounds wait until the
    // queue drains. The cap also protects the clause store.
    long long ground_budget =
        std::min(budget_.max_inferences / 4, (long long)kMaxStoredClauses / 3) + 1;
    ground_round(0);
    int next_round = 1;
    while (next_round <= budget_.max_term_depth && !done()) {
      if (inferences_ + estimate_instances(next_round) > ground_budget) break;
      ground_round(next_round++);
    }
    for (;;) {
      if (empty_clause_ >= 0) return Verdict::valid(extract_trace());
      if (!stop_reason_.empty()) return Verdict::unknown(stop_reason_);
      if (passive_.empty()) {
        if (next_round <= budget_.max_term_depth) {
          ground_round(next_round++);
          continue;
        }
        return Verdict::unknown("saturated at instantiation depth " +
                                std::to_string(rounds_done_));
      }
      auto it = passive_.begin();
      int cid = std::get<2>(*it);
      passive_.erase(it);
      if (unit_subsumed(cid)) {
        processed_flag_[cid] = 1;  // discard
        continue;
      }
      // Rules derived since this clause was queued may simplify it; if so the
      // normalized version re-enters the queue instead.
      if (!processed_flag_[cid] && clause_lits_[cid].size() >= 1) {
        if (auto hit = find_demod(clause_lits_[cid], cid)) {
          processed_flag_[cid] = 1;
          const std::vector<int> lits = clause_lits_[cid];
          const GLit g = lits_[lits[hit->lit_index]];
          std::vector<int> path(hit->position.begin() + 1, hit->position.end());
          int new_term = rewrite_at(g.terms[hit->position[0]], path, 0, hit->to);
          std::vector<int> ts = g.terms;
          ts[hit->position[0]] = new_term;
          int nl = mk_lit(g.pos, g.eq, g.pred, std::move(ts));
          std::vector<int> rewritten;
          for (std::size_t i = 0; i < lits.size(); ++i)
            if (i != hit->lit_index) rewritten.push_back(lits[i]);
          rewritten.push_back(nl);
          const GLit& rule = lits_[clause_lits_[hit->rule_cid][0]];
          Deriv d;
          d.kind = TraceStep::Kind::Paramodulation;
          d.p0 = hit->rule_cid;
          d.p1 = cid;
          d.eq_lit = clause_lits_[hit->rule_cid][0];
          d.l2r = rule.terms[0] == hit->from;
          d.into_lit = lits[hit->lit_index];
          d.result_lit = nl;
          d.position = hit->position;
          add_clause(std::move(rewritten), std::move(d));
          continue;
        }
      }
      process(cid);
    }
  }

 private:
  // symbols
  std::vector<std::string> sym_names_;
  std::unordered_map<std::string, int> sym_ids_;

  int sym(const std::string& name) {
    auto it = sym_ids_.find(name);
    if (it != sym_ids_.end()) return it->second;
    int id = (int)sym_names_.size();
    sym_names_.push_back(name);
    sym_ids_.emplace(name, id);
    return id;
  }

  // terms
  struct GTerm {
    int sym;
    bool var;
    std::vector<int> args;
  };
  std::vector<GTerm> terms_;
  std::vector<int> term_weight_;
  std::vector<bool> term_has_var_;
  std::map<std::tuple<int, bool, std::vector<int>>, int> term_ids_;

  int mk_term(int s, bool var, std::vector<int> args) {
    auto key = std::make_tuple(s, var, args);
    auto it = term_ids_.find(key);
    if (it != term_ids_.end()) return it->second;
    int id = (int)terms_.size();
    int w = 1;
    bool hv = var;
    for (int a : args) {
      w += term_weight_[a];
      hv = hv || term_has_var_[a];
    }
    terms_.push_back({s, var, std::move(args)});
    term_weight_.push_back(w);
    term_has_var_.push_back(hv);
    term_ids_.emplace(std::move(key), id);
    return id;
  }

  int intern_term(const Term& t) {
    if (t.is_var()) return mk_term(sym(t.sym()), true, {});
    std::vector<int> args;
    args.reserve(t.args().size());
    for (const Term& a : t.args()) args.push_back(intern_term(a));
    return mk_term(sym(t.sym()), false, std::move(args));
  }

  Term unintern_term(int id) const {
    const GTerm& g = terms_[id];
    if (g.var) return Term::var(sym_names_[g.sym]);
    std::vector<Term> args;
    args.reserve(g.args.size());
    for (int a : g.args) args.push_back(unintern_term(a));
    return Term::app(sym_names_[g.sym], std::move(args));
  }

  std::string render_term(int id) const {
    const GTerm& g = terms_[id];
    std::string s = sym_names_[g.sym];
    if (g.args.empty()) return s;
    s += "(";
    for (std::size_t i = 0; i < g.args.size(); ++i) {
      if (i) s += ",";
      s += render_term(g.args[i]);
    }
    return s + ")";
  }

  // literals
  struct GLit {
    bool pos;
    bool eq;
    int pred;  // -1 for equalities
    std::vector<int> terms;
  };
  std::vector<GLit> lits_;
  std::vector<int> lit_weight_;
  std::map<std::tuple<bool, bool, int, std::vector<int>>, int> lit_ids_;

  int mk_lit(bool pos, bool eq, int pred, std::vector<int> ts) {
    auto key = std::make_tuple(pos, eq, pred, ts);
    auto it = lit_ids_.find(key);
    if (it != lit_ids_.end()) return it->second;
    int id = (int)lits_.size();
    int w = 1;
    for (int t : ts) w += term_weight_[t];
    lits_.push_back({pos, eq, pred, std::move(ts)});
    lit_weight_.push_back(w);
    lit_ids_.emplace(std::move(key), id);
    return id;
  }

  int intern_lit(const Literal& l) {
    std::vector<int> ts;
    ts.reserve(l.terms.size());
    for (const Term& t : l.terms) ts.push_back(intern_term(t));
    return mk_lit(l.positive, l.is_equality, l.is_equality ? -1 : sym(l.pred), std::move(ts));
  }

  Literal unintern_lit(int id) const {
    const GLit& g = lits_[id];
    std::vector<Term> ts;
    ts.reserve(g.terms.size());
    for (int t : g.terms) ts.push_back(unintern_term(t));
    if (g.eq) return Literal::equality(ts[0], ts[1], g.pos);
    return Literal::predicate(sym_names_[g.pred], std::move(ts), g.pos);
  }

  int negate_lit(int id) {
    const GLit g = lits_[id];
    return mk_lit(!g.pos, g.eq, g.pred, g.terms);
  }

  bool lit_trivially_true(int id) const {
    const GLit& g = lits_[id];
    return g.pos && g.eq && g.terms[0] == g.terms[1];
  }

  std::string render_lit(int id) const {
    const GLit& g = lits_[id];
    std::string s = g.pos ? "" : "~";
    if (g.eq) return s + render_term(g.terms[0]) + "=" + render_term(g.terms[1]);
    s += sym_names_[g.pred];
    for (int t : g.terms) s += "|" + render_term(t);
    return s;
  }

  // clauses
  struct Deriv {
    TraceStep::Kind kind = TraceStep::Kind::Input;
    int p0 = -1, p1 = -1;
    int input_index = -1;
    std::vector<std::pair<int, int>> subst;  // (var term, ground term)
    int eq_lit = -1;
    bool l2r = true;
    int into_lit = -1;
    int result_lit = -1;
    std::vector<int> position;
    int resolved_lit = -1;
  };
  std::vector<std::vector<int>> clause_lits_;
  std::vector<Deriv> clause_deriv_;
  std::vector<long long> clause_weight_;
  std::map<std::vector<int>, int> clause_ids_;

  std::set<std::tuple<long long, std::string, int>> passive_;
  std::vector<char> processed_flag_;
  std::vector<int> processed_;

  std::unordered_map<int, std::vector<int>> lit_index_;      // selected literal -> clauses
  std::unordered_map<int, std::vector<int>> subterm_index_;  // selected-literal subterm -> clauses
  std::unordered_map<int, std::vector<int>> eqside_index_;   // larger equation side -> clauses
  std::unordered_map<int, int> selected_;                    // clause -> selected literal
  std::unordered_set<int> unit_literals_;                    // literals of unit clauses
  std::unordered_map<int, int> demod_rules_;                 // larger side -> unit clause

  const Budget& budget_;
  std::vector<Clause> inputs_;
  std::vector<std::vector<std::string>> input_vars_;
  std::vector<std::vector<int>> input_patterns_;
  std::vector<int> bases_;       // constant term ids
  std::vector<int> seed_terms_;  // ground input subterms beyond the constants
  std::vector<int> pool_;        // instantiation terms
  std::vector<int> pool_round_;  // round each pool entry became available
  std::vector<bool> pool_is_seed_;
  long long inferences_ = 0;
  int rounds_done_ = -1;
  int empty_clause_ = -1;
  std::string stop_reason_;
  std::chrono::steady_clock::time_point start_;

  bool done() const { return empty_clause_ >= 0 || !stop_reason_.empty(); }

  bool tick() {
    if (done()) return false;
    if (++inferences_ > budget_.max_inferences) {
      stop_reason_ = "inference budget exhausted (" + std::to_string(budget_.max_inferences) + ")";
      return false;
    }
    if ((inferences_ & 0xFFF) == 0) {
      double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
      if (elapsed > budget_.time_cap_seconds) {
        stop_reason_ = "time cap exceeded";
        return false;
      }
    }
    return true;
  }

  void collect_bases() {
    // Constants occurring in the input, 0 and eta first, then by name.
    std::set<std::string> names{"0"};
    for (const auto& pattern : input_patterns_)
      for (int l : pattern)
        for (int t : lits_[l].terms) collect_constants(t, names);
    std::vector<std::string> ordered(names.begin(), names.end());
    std::sort(ordered.begin(), ordered.end(), [](const std::string& a, const std::string& b) {
      auto rank = [](const std::string& x) { return x == "0" ? 0 : x == kEtaName ? 1 : 2; };
      if (rank(a) != rank(b)) return rank(a) < rank(b);
      return a < b;
    });
    for (const std::string& n : ordered) bases_.push_back(mk_term(sym(n), false, {}));

    // Ground subterms of the input join the depth-0 pool: proofs routinely
    // need axiom instances at compound terms mentioned by the problem.
    std::set<int> seeds;
    for (const auto& pattern : input_patterns_)
      for (int l : pattern)
        for (int t : lits_[l].terms) collect_ground_subterms(t, seeds);
    for (int b : bases_) seeds.erase(b);
    std::vector<int> ordered_seeds(seeds.begin(), seeds.end());
    std::sort(ordered_seeds.begin(), ordered_seeds.end(),
              [this](int a, int b) { return term_cmp(a, b) < 0; });
    seed_terms_ = std::move(ordered_seeds);
  }

  void collect_constants(int t, std::set<std::string>& out) {
    const GTerm& g = terms_[t];
    if (!g.var && g.args.empty()) out.insert(sym_names_[g.sym]);
    for (int a : g.args) collect_constants(a, out);
  }

  void collect_ground_subterms(int t, std::set<int>& out) {
    if (term_has_var_[t]) {
      for (int a : terms_[t].args) collect_ground_subterms(a, out);
      return;
    }
    if (out.insert(t).second)
      for (int a : terms_[t].args) collect_ground_subterms(a, out);
  }

  long long estimate_instances(int depth) const {
    long long total = 0;
    for (const auto& vars : input_vars_) {
      // Compound seed terms join the pool only for clauses with at most two
      // variables; wide clauses stay on the tower terms.
      long long seeds = vars.size() <= 2 ? (long long)seed_terms_.size() : 0;
      long long pool_now = (long long)(depth + 1) * (long long)bases_.size() + seeds;
      long long pool_prev = depth == 0 ? 0 : (long long)depth * (long long)bases_.size() + seeds;
      long long now = 1, prev = 1;
      for (std::size_t v = 0; v < vars.size(); ++v) {
        now *= pool_now;
        prev *= pool_prev;
        if (now > budget_.max_inferences) return budget_.max_inferences + 1;
      }
      total += vars.empty() ? 0 : now - prev;
      if (total > budget_.max_inferences) return budget_.max_inferences + 1;
    }
    return total;
  }

  void ground_round(int depth) {
    rounds_done_ = depth;
    int s_sym = sym("s");
    if (depth == 0 && pool_.empty()) {
      for (int b : bases_) {
        pool_.push_back(b);
        pool_round_.push_back(0);
        pool_is_seed_.push_back(false);
      }
      for (int s : seed_terms_) {
        pool_.push_back(s);
        pool_round_.push_back(0);
        pool_is_seed_.push_back(true);
      }
    }
    for (int h = 1; h <= depth; ++h) {
      if ((int)pool_round_.size() >= (int)(bases_.size() + seed_terms_.size()) +
                                         h * (int)bases_.size())
        continue;
      for (int b : bases_) {
        int t = b;
        for (int i = 0; i < h; ++i) t = mk_term(s_sym, false, {t});
        pool_.push_back(t);
        pool_round_.push_back(h);
        pool_is_seed_.push_back(false);
      }
    }
    // Positions usable by wide clauses (towers only) and by narrow ones.
    std::vector<std::size_t> slim_positions, full_positions;
    for (std::size_t p = 0; p < pool_.size(); ++p) {
      full_positions.push_back(p);
      if (!pool_is_seed_[p]) slim_positions.push_back(p);
    }
    for (std::size_t i = 0; i < inputs_.size(); ++i) {
      const auto& vars = input_vars_[i];
      const auto& positions = vars.size() <= 2 ? full_positions : slim_positions;
      std::vector<std::size_t> idx(vars.size(), 0);
      for (;;) {
        if (done()) return;
        int max_round = 0;
        for (std::size_t v = 0; v < vars.size(); ++v)
          max_round = std::max(max_round, pool_round_[positions[idx[v]]]);
        bool fresh_round = vars.empty() ? depth == 0 : max_round == depth;
        if (fresh_round) {
          if (!tick()) return;
          emit_instance(i, idx, positions);
        }
        bool advanced = false;
        for (std::size_t v = vars.size(); v-- > 0;) {
          if (++idx[v] < positions.size()) {
            advanced = true;
            break;
          }
          idx[v] = 0;
        }
        if (!advanced) break;
      }
    }
  }

  void emit_instance(std::size_t input_idx, const std::vector<std::size_t>& idx,
                     const std::vector<std::size_t>& positions) {
    const auto& vars = input_vars_[input_idx];
    std::unordered_map<int, int> assignment;  // var term -> ground term
    Deriv d;
    d.kind = TraceStep::Kind::Grounding;
    d.input_index = (int)input_idx;
    for (std::size_t v = 0; v < vars.size(); ++v) {
      int var_term = mk_term(sym(vars[v]), true, {});
      assignment[var_term] = pool_[positions[idx[v]]];
      d.subst.emplace_back(var_term, pool_[positions[idx[v]]]);
    }
    std::vector<int> ground;
    for (int l : input_patterns_[input_idx]) ground.push_back(ground_lit(l, assignment));
    add_clause(std::move(ground), std::move(d));
  }

  int ground_term(int t, const std::unordered_map<int, int>& assignment) {
    if (!term_has_var_[t]) return t;
    const GTerm g = terms_[t];
    if (g.var) {
      auto it = assignment.find(t);
      return it == assignment.end() ? t : it->second;
    }
    std::vector<int> args;
    args.reserve(g.args.size());
    for (int a : g.args) args.push_back(ground_term(a, assignment));
    return mk_term(g.sym, false, std::move(args));
  }

  int ground_lit(int l, const std::unordered_map<int, int>& assignment) {
    const GLit g = lits_[l];
    std::vector<int> ts;
    ts.reserve(g.terms.size());
    for (int t : g.terms) ts.push_back(ground_term(t, assignment));
    return mk_lit(g.pos, g.eq, g.pred, std::move(ts));
  }

  // One applicable unit rewrite inside the literal list, if any: (literal
  // index, position, rule clause, from, to).
  struct DemodHit {
    std::size_t lit_index;
    std::vector<int> position;  // term index + path
    int rule_cid;
    int from, to;
  };

  std::optional<DemodHit> find_demod(const std::vector<int>& lits, int exclude_cid = -1) const {
    for (std::size_t i = 0; i < lits.size(); ++i) {
      const GLit& g = lits_[lits[i]];
      for (std::size_t ti = 0; ti < g.terms.size(); ++ti) {
        std::optional<DemodHit> hit = find_demod_in_term(g.terms[ti], {(int)ti}, exclude_cid);
        if (hit) {
          hit->lit_index = i;
          return hit;
        }
      }
    }
    return std::nullopt;
  }

  std::optional<DemodHit> find_demod_in_term(int t, std::vector<int> path,
                                             int exclude_cid) const {
    auto it = demod_rules_.find(t);
    if (it != demod_rules_.end() && it->second != exclude_cid) {
      const GLit& rule = lits_[clause_lits_[it->second][0]];
      int from = t;
      int to = rule.terms[0] == t ? rule.terms[1] : rule.terms[0];
      return DemodHit{0, std::move(path), it->second, from, to};
    }
    const GTerm& g = terms_[t];
    for (std::size_t i = 0; i < g.args.size(); ++i) {
      std::vector<int> sub = path;
      sub.push_back((int)i);
      if (auto hit = find_demod_in_term(g.args[i], std::move(sub), exclude_cid)) return hit;
    }
    return std::nullopt;
  }

  // Stores the clause; new clauses are first normalized by the unit rewrite
  // rules, each rewrite recorded as a paramodulation so traces replay.
  void add_clause(std::vector<int> lits, Deriv d) {
    for (int round = 0;; ++round) {
      std::sort(lits.begin(), lits.end());
      lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
      if (lits.size() > kMaxClauseLiterals) return;
      long long w = 0;
      for (int l : lits) {
        if (lit_trivially_true(l)) return;  // tautology
        w += lit_weight_[l];
      }
      if (lits.size() > 1)
        for (int l : lits)
          if (unit_literals_.count(l)) return;  // subsumed by a unit
      for (int l : lits) {
        const GLit& g = lits_[l];
        auto it = lit_ids_.find(std::make_tuple(!g.pos, g.eq, g.pred, g.terms));
        if (it != lit_ids_.end() && std::binary_search(lits.begin(), lits.end(), it->second))
          return;  // complementary pair
      }
      if (w > kMaxClauseWeight && !lits.empty()) return;
      if ((int)clause_lits_.size() > kMaxStoredClauses) {
        stop_reason_ = "clause store limit reached";
        return;
      }
      if (clause_ids_.count(lits)) return;

      std::optional<DemodHit> hit = round < 400 ? find_demod(lits) : std::nullopt;
      int id = (int)clause_lits_.size();
      clause_ids_.emplace(lits, id);
      clause_lits_.push_back(lits);
      clause_deriv_.push_back(std::move(d));
      clause_weight_.push_back(w);
      processed_flag_.push_back(hit ? 1 : 0);  // intermediates are never queued
      if (clause_lits_.back().empty()) {
        empty_clause_ = id;
        return;
      }
      if (!hit) {
        if (lits.size() == 1) {
          unit_literals_.insert(lits[0]);
          const GLit& g = lits_[lits[0]];
          if (g.pos && g.eq) {
            int c = term_cmp(g.terms[0], g.terms[1]);
            if (c != 0) demod_rules_.emplace(g.terms[c > 0 ? 0 : 1], id);
          }
        }
        std::string key;
        for (int l : lits) key += render_lit(l) + ";";
        passive_.insert({w, std::move(key), id});
        return;
      }

      // Rewrite and continue with the normalized clause.
      const GLit g = lits_[lits[hit->lit_index]];
      std::vector<int> path(hit->position.begin() + 1, hit->position.end());
      int new_term = rewrite_at(g.terms[hit->position[0]], path, 0, hit->to);
      std::vector<int> ts = g.terms;
      ts[hit->position[0]] = new_term;
      int nl = mk_lit(g.pos, g.eq, g.pred, std::move(ts));
      std::vector<int> rewritten;
      for (std::size_t i = 0; i < lits.size(); ++i)
        if (i != hit->lit_index) rewritten.push_back(lits[i]);
      rewritten.push_back(nl);

      const GLit& rule = lits_[clause_lits_[hit->rule_cid][0]];
      Deriv next;
      next.kind = TraceStep::Kind::Paramodulation;
      next.p0 = hit->rule_cid;
      next.p1 = id;
      next.eq_lit = clause_lits_[hit->rule_cid][0];
      next.l2r = rule.terms[0] == hit->from;
      next.into_lit = lits[hit->lit_index];
      next.result_lit = nl;
      next.position = hit->position;
      d = std::move(next);
      lits = std::move(rewritten);
      if (!tick()) return;
    }
  }

  // Lazy backward subsumption: clauses that acquired a unit-subsumed literal
  // while waiting in the queue are dropped when popped.
  bool unit_subsumed(int cid) const {
    const std::vector<int>& lits = clause_lits_[cid];
    if (lits.size() < 2) return false;
    for (int l : lits)
      if (unit_literals_.count(l)) return true;
    return false;
  }

  // Indexes cover only the selected literal of each clause; equations of
  // fully positive clauses additionally index their larger side for
  // paramodulation partners.
  void index_clause(int cid) {
    processed_flag_[cid] = 1;
    processed_.push_back(cid);
    int sel = selected_literal(cid);
    selected_[cid] = sel;
    lit_index_[sel].push_back(cid);
    std::set<int> subterms;
    for (int t : lits_[sel].terms) collect_subterms(t, subterms);
    for (int t : subterms) subterm_index_[t].push_back(cid);
    if (clause_is_positive(cid)) {
      const GLit& g = lits_[sel];
      if (g.eq) {
        int c = term_cmp(g.terms[0], g.terms[1]);
        if (c > 0) eqside_index_[g.terms[0]].push_back(cid);
        if (c < 0) eqside_index_[g.terms[1]].push_back(cid);
      }
    }
  }

  void collect_subterms(int t, std::set<int>& out) {
    if (out.insert(t).second)
      for (int a : terms_[t].args) collect_subterms(a, out);
  }

  // Total order on ground terms: weight first, then symbol names and
  // arguments lexicographically. Distinct ids never compare equal.
  int term_cmp(int a, int b) const {
    if (a == b) return 0;
    if (term_weight_[a] != term_weight_[b]) return term_weight_[a] < term_weight_[b] ? -1 : 1;
    const GTerm& ga = terms_[a];
    const GTerm& gb = terms_[b];
    const std::string& na = sym_names_[ga.sym];
    const std::string& nb = sym_names_[gb.sym];
    if (na != nb) return na < nb ? -1 : 1;
    if (ga.args.size() != gb.args.size()) return ga.args.size() < gb.args.size() ? -1 : 1;
    for (std::size_t i = 0; i < ga.args.size(); ++i)
      if (int c = term_cmp(ga.args[i], gb.args[i])) return c;
    return 0;
  }

  // Literal order used for selecting the literal a clause participates with:
  // by heavier term pair, predicates above equations, then structurally.
  int lit_cmp(int a, int b) const {
    if (a == b) return 0;
    const GLit& ga = lits_[a];
    const GLit& gb = lits_[b];
    auto sides = [this](const GLit& g) {
      int hi = g.terms[0], lo = g.terms[0];
      for (int t : g.terms) {
        if (term_cmp(t, hi) > 0) hi = t;
        if (term_cmp(t, lo) < 0) lo = t;
      }
      return std::make_pair(hi, lo);
    };
    auto [ahi, alo] = sides(ga);
    auto [bhi, blo] = sides(gb);
    if (int c = term_cmp(ahi, bhi)) return c;
    if (ga.eq != gb.eq) return ga.eq ? -1 : 1;
    if (!ga.eq && ga.pred != gb.pred)
      return sym_names_[ga.pred] < sym_names_[gb.pred] ? -1 : 1;
    if (int c = term_cmp(alo, blo)) return c;
    if (ga.pos != gb.pos) return ga.pos ? -1 : 1;  // negative above positive
    return a < b ? -1 : 1;
  }

  // Eager selection: the largest negative literal when one exists, otherwise
  // the largest literal. Inferences touch only selected literals; equations
  // paramodulate from positive clauses only.
  int selected_literal(int cid) const {
    const std::vector<int>& lits = clause_lits_[cid];
    int best_neg = -1, best = -1;
    for (int l : lits) {
      if (best < 0 || lit_cmp(l, best) > 0) best = l;
      if (!lits_[l].pos && (best_neg < 0 || lit_cmp(l, best_neg) > 0)) best_neg = l;
    }
    return best_neg >= 0 ? best_neg : best;
  }

  bool clause_is_positive(int cid) const {
    for (int l : clause_lits_[cid])
      if (!lits_[l].pos) return false;
    return true;
  }

  std::vector<int> without(const std::vector<int>& lits, int drop) {
    std::vector<int> out;
    out.reserve(lits.size());
    for (int l : lits)
      if (l != drop) out.push_back(l);
    return out;
  }

  void process(int cid) {
    if (processed_flag_[cid]) return;
    index_clause(cid);
    const std::vector<int> lits = clause_lits_[cid];
    const int sel = selected_[cid];
    const bool positive = clause_is_positive(cid);

    // equality resolution on the selected literal
    {
      const GLit& g = lits_[sel];
      if (!g.pos && g.eq && g.terms[0] == g.terms[1]) {
        if (!tick()) return;
        Deriv d;
        d.kind = TraceStep::Kind::EqualityResolution;
        d.p0 = cid;
        d.eq_lit = sel;
        add_clause(without(lits, sel), std::move(d));
        if (done()) return;
      }
    }

    // binary resolution between selected literals
    {
      int nl = negate_lit(sel);
      auto it = lit_index_.find(nl);
      if (it != lit_index_.end()) {
        const std::vector<int> partners = it->second;
        for (int pid : partners) {
          if (!tick()) return;
          std::vector<int> merged = without(lits, sel);
          for (int x : without(clause_lits_[pid], nl)) merged.push_back(x);
          Deriv d;
          d.kind = TraceStep::Kind::Resolution;
          if (lits_[sel].pos) {
            d.p0 = cid;
            d.p1 = pid;
            d.resolved_lit = sel;
          } else {
            d.p0 = pid;
            d.p1 = cid;
            d.resolved_lit = nl;
          }
          add_clause(std::move(merged), std::move(d));
          if (done()) return;
        }
      }
    }

    // equality factoring on the selected literal of a positive clause
    if (positive && lits_[sel].eq) {
      const GLit gi = lits_[sel];
      for (int lj : lits) {
        if (lj == sel) continue;
        const GLit gj = lits_[lj];
        if (!(gj.pos && gj.eq)) continue;
        for (int a = 0; a < 2; ++a) {
          // Factor only on the larger side of the removed literal.
          if (term_cmp(gi.terms[a], gi.terms[1 - a]) <= 0) continue;
          for (int b = 0; b < 2; ++b) {
            if (gi.terms[a] != gj.terms[b]) continue;
            if (!tick()) return;
            int residue = mk_lit(false, true, -1, {gi.terms[1 - a], gj.terms[1 - b]});
            std::vector<int> merged = without(lits, sel);
            merged.push_back(residue);
            Deriv d;
            d.kind = TraceStep::Kind::EqualityFactoring;
            d.p0 = cid;
            d.eq_lit = sel;
            d.into_lit = lj;
            d.result_lit = residue;
            d.position = {a, b};
            add_clause(std::move(merged), std::move(d));
            if (done()) return;
          }
        }
      }
    }

    // paramodulation from this clause (positive, selected equation, larger
    // side) into the selected literals of processed clauses
    if (positive && lits_[sel].eq) {
      const GLit g = lits_[sel];
      for (int dir = 0; dir < 2; ++dir) {
        int from = g.terms[dir], to = g.terms[1 - dir];
        if (term_cmp(from, to) <= 0) continue;
        auto it = subterm_index_.find(from);
        if (it == subterm_index_.end()) continue;
        const std::vector<int> partners = it->second;
        for (int pid : partners) {
          if (cid == pid && clause_lits_[cid].size() == 1) continue;  // would re-derive itself
          paramodulate(cid, sel, dir == 0, pid, selected_[pid], from, to);
          if (done()) return;
        }
      }
    }

    // paramodulation from processed positive equations into this clause's
    // selected literal
    {
      const GLit g = lits_[sel];
      for (std::size_t ti = 0; ti < g.terms.size(); ++ti) {
        std::set<int> subterms;
        collect_subterms(g.terms[ti], subterms);
        for (int s : subterms) {
          auto it = eqside_index_.find(s);
          if (it == eqside_index_.end()) continue;
          const std::vector<int> partners = it->second;
          for (int pid : partners) {
            if (pid == cid) continue;  // covered above
            int le = selected_[pid];
            const GLit ge = lits_[le];
            if (!(ge.pos && ge.eq)) continue;
            if (ge.terms[0] == s && term_cmp(ge.terms[0], ge.terms[1]) > 0)
              paramodulate(pid, le, true, cid, sel, s, ge.terms[1]);
            if (done()) return;
            if (ge.terms[1] == s && term_cmp(ge.terms[1], ge.terms[0]) > 0)
              paramodulate(pid, le, false, cid, sel, s, ge.terms[0]);
            if (done()) return;
          }
        }
      }
    }
  }

  // All rewrites of `from` to `to` inside the literal `into_lit` of
  // `into_cid`, one position at a time. Copies are taken up front: the arenas
  // may grow (and reallocate) while new clauses are added.
  void paramodulate(int from_cid, int eq_lit, bool l2r, int into_cid, int into_lit, int from,
                    int to) {
    const std::vector<int> into_lits = clause_lits_[into_cid];
    const std::vector<int> from_lits = clause_lits_[from_cid];
    if (into_lit == eq_lit && from_cid == into_cid) return;
    const GLit g = lits_[into_lit];
    for (std::size_t ti = 0; ti < g.terms.size(); ++ti) {
      std::vector<std::vector<int>> positions;
      std::vector<int> path;
      find_positions(g.terms[ti], from, path, positions);
      for (const auto& pos : positions) {
        if (!tick()) return;
        int new_term = rewrite_at(g.terms[ti], pos, 0, to);
        std::vector<int> ts = g.terms;
        ts[ti] = new_term;
        int nl = mk_lit(g.pos, g.eq, g.pred, std::move(ts));
        std::vector<int> merged = without(from_lits, eq_lit);
        for (int x : without(into_lits, into_lit)) merged.push_back(x);
        merged.push_back(nl);
        Deriv d;
        d.kind = TraceStep::Kind::Paramodulation;
        d.p0 = from_cid;
        d.p1 = into_cid;
        d.eq_lit = eq_lit;
        d.l2r = l2r;
        d.into_lit = into_lit;
        d.result_lit = nl;
        d.position.push_back((int)ti);
        d.position.insert(d.position.end(), pos.begin(), pos.end());
        add_clause(std::move(merged), std::move(d));
        if (done()) return;
      }
    }
  }

  void find_positions(int t, int target, std::vector<int>& path,
                      std::vector<std::vector<int>>& out) {
    if (t == target) out.push_back(path);
    const GTerm& g = terms_[t];
    for (std::size_t i = 0; i < g.args.size(); ++i) {
      path.push_back((int)i);
      find_positions(g.args[i], target, path, out);
      path.pop_back();
    }
  }

  int rewrite_at(int t, const std::vector<int>& pos, std::size_t depth, int to) {
    if (depth == pos.size()) return to;
    GTerm g = terms_[t];
    g.args[pos[depth]] = rewrite_at(g.args[pos[depth]], pos, depth + 1, to);
    return mk_term(g.sym, g.var, std::move(g.args));
  }

  Clause unintern_clause(int cid) const {
    std::vector<Literal> lits;
    for (int l : clause_lits_[cid]) lits.push_back(unintern_lit(l));
    return Clause(std::move(lits));
  }

  static int literal_index(const Clause& c, const Literal& l) {
    for (std::size_t i = 0; i < c.literals().size(); ++i)
      if (c.literals()[i] == l) return (int)i;
    return -1;
  }

  ProofTrace extract_trace() const {
    // Backward slice from the empty clause; ids ascend along derivations.
    std::set<int> needed;
    std::vector<int> stack{empty_clause_};
    while (!stack.empty()) {
      int cid = stack.back();
      stack.pop_back();
      if (!needed.insert(cid).second) continue;
      const Deriv& d = clause_deriv_[cid];
      if (d.p0 >= 0) stack.push_back(d.p0);
      if (d.p1 >= 0) stack.push_back(d.p1);
    }
    std::set<int> input_needed;
    for (int cid : needed)
      if (clause_deriv_[cid].kind == TraceStep::Kind::Grounding)
        input_needed.insert(clause_deriv_[cid].input_index);

    ProofTrace trace;
    std::map<int, int> input_step;   // input index -> step index
    std::map<int, int> clause_step;  // clause id -> step index
    for (int i : input_needed) {
      TraceStep step;
      step.kind = TraceStep::Kind::Input;
      step.clause = inputs_[i];
      step.note = "input clause";
      input_step[i] = (int)trace.steps.size();
      trace.steps.push_back(std::move(step));
    }
    for (int cid : needed) {
      const Deriv& d = clause_deriv_[cid];
      TraceStep step;
      step.kind = d.kind;
      step.clause = unintern_clause(cid);
      switch (d.kind) {
        case TraceStep::Kind::Grounding: {
          step.parents.push_back(input_step.at(d.input_index));
          for (const auto& [vt, gt] : d.subst)
            step.substitution[sym_names_[terms_[vt].sym]] = unintern_term(gt);
          break;
        }
        case TraceStep::Kind::Resolution: {
          step.parents.push_back(clause_step.at(d.p0));
          step.parents.push_back(clause_step.at(d.p1));
          step.resolved_atom = unintern_lit(d.resolved_lit);
          break;
        }
        case TraceStep::Kind::Paramodulation: {
          step.parents.push_back(clause_step.at(d.p0));
          step.parents.push_back(clause_step.at(d.p1));
          Clause from = unintern_clause(d.p0);
          Clause into = unintern_clause(d.p1);
          step.from_literal = literal_index(from, unintern_lit(d.eq_lit));
          step.into_literal = literal_index(into, unintern_lit(d.into_lit));
          step.left_to_right = d.l2r;
          step.position = d.position;
          break;
        }
        case TraceStep::Kind::EqualityResolution: {
          step.parents.push_back(clause_step.at(d.p0));
          Clause from = unintern_clause(d.p0);
          step.from_literal = literal_index(from, unintern_lit(d.eq_lit));
          break;
        }
        case TraceStep::Kind::EqualityFactoring: {
          step.parents.push_back(clause_step.at(d.p0));
          Clause from = unintern_clause(d.p0);
          step.from_literal = literal_index(from, unintern_lit(d.eq_lit));
          step.into_literal = literal_index(from, unintern_lit(d.into_lit));
          step.position = d.position;
          break;
        }
        default:
          break;
      }
      clause_step[cid] = (int)trace.steps.size();
      trace.steps.push_back(std::move(step));
    }
    return trace;
  }
};

Verdict run_obligation(const ClauseSet& clauses, const Budget& budget, bool positive_first) {
  if (positive_first) {
    Saturation sat(clauses.clauses(), budget);
    Verdict v = sat.run();
    if (v.is_valid()) return v;
    if (auto neg = find_bounded_model(clauses, budget)) return *neg;
    return v;
  }
  if (auto neg = find_bounded_model(clauses, budget)) return *neg;
  Saturation sat(clauses.clauses(), budget);
  return sat.run();
}

}  // namespace

// -- public entry points ---------------------------------------------------------------

Verdict check_unsat(const ClauseSet& c, const Budget& budget) {
  budget.validate();
  return run_obligation(c, budget, /*positive_first=*/false);
}

Verdict check_entails(const ClauseSet& premises, const ClauseSet& conclusion,
                      const Budget& budget) {
  budget.validate();
  std::set<std::string> used;
  collect_app_syms(premises, used);
  collect_app_syms(conclusion, used);

  ProofTrace combined;
  bool any_unknown = false;
  Verdict first_unknown = Verdict::unknown("");
  for (const Clause& d : conclusion.clauses()) {
    std::vector<std::string> vars = d.variables();
    std::map<std::string, Term> to_constants;
    int next = 0;
    for (const std::string& v : vars) {
      std::string name;
      do {
        name = "c" + std::to_string(next++);
      } while (used.count(name));
      to_constants[v] = Term::app(name);
    }
    std::vector<Clause> units;
    for (const Literal& l : d.literals())
      units.push_back(Clause({l.substitute(to_constants).negated()}));
    ClauseSet obligation = premises.united(ClauseSet(std::move(units)));
    Verdict v = run_obligation(obligation, budget, /*positive_first=*/true);
    if (v.is_valid()) {
      int offset = (int)combined.steps.size();
      for (TraceStep step : v.trace.steps) {
        for (int& p : step.parents) p += offset;
        combined.steps.push_back(std::move(step));
      }
    } else if (v.is_refuted()) {
      v.reason = "conclusion clause " + d.str() + " is not entailed";
      return v;
    } else if (!any_unknown) {
      any_unknown = true;
      v.reason += " (conclusion clause " + d.str() + ")";
      first_unknown = v;
    }
  }
  if (any_unknown) return first_unknown;
  return Verdict::valid(std::move(combined));
}

Verdict prove(const std::vector<Formula>& axioms, const Formula& goal, const Budget& budget) {
  budget.validate();
  Formula closure = goal.universal_closure();
  Pi2State st;
  st.used = closure.all_vars();
  auto [prefix, matrix] = pull_quantifiers(closure, true, st);
  bool seen_exists = false;
  for (const auto& [is_forall, var] : prefix.q) {
    if (!is_forall) seen_exists = true;
    else if (seen_exists)
      throw FragmentError("goal is outside the forall-exists fragment");
  }

  ClauseSet axiom_clauses;
  std::set<std::string> used = st.used;
  for (const Formula& ax : axioms) {
    std::set<std::string> vs = ax.all_vars();
    used.insert(vs.begin(), vs.end());
    axiom_clauses = axiom_clauses.united(clausify(ax.universal_closure()));
  }
  collect_app_syms(axiom_clauses, used);
  std::function<void(const Formula&)> gather = [&](const Formula& f) {
    if (f.kind() == Formula::Kind::Atom) {
      for (const Term& t : f.lit().terms) collect_app_syms(t, used);
      return;
    }
    for (std::size_t i = 0; i < f.child_count(); ++i) gather(f.child(i));
  };
  gather(matrix);

  std::map<std::string, Term> skolem;
  int next = 0;
  for (const auto& [is_forall, var] : prefix.q) {
    if (!is_forall) continue;
    std::string name;
    do {
      name = "c" + std::to_string(next++);
    } while (used.count(name));
    used.insert(name);
    skolem[var] = Term::app(name);
  }
  Formula negated = Formula::negation(matrix.substitute(skolem));
  ClauseSet obligation = clausify(negated).united(axiom_clauses);
  return run_obligation(obligation, budget, /*positive_first=*/true);
}

// -- trace replay ---------------------------------------------------------------------

namespace {

Clause substitute_clause(const Clause& c, const std::map<std::string, Term>& subst) {
  std::vector<Literal> lits;
  for (const Literal& l : c.literals()) lits.push_back(l.substitute(subst));
  return Clause(std::move(lits));
}

bool navigate_and_rewrite(Term& t, const std::vector<int>& pos, std::size_t depth,
                          const Term& expect, const Term& replacement) {
  if (depth == pos.size()) {
    if (!(t == expect)) return false;
    t = replacement;
    return true;
  }
  if (!t.is_app() || pos[depth] < 0 || pos[depth] >= (int)t.args().size()) return false;
  std::vector<Term> args = t.args();
  if (!navigate_and_rewrite(args[pos[depth]], pos, depth + 1, expect, replacement)) return false;
  t = Term::app(t.sym(), std::move(args));
  return true;
}

}  // namespace

bool replay_trace(const ProofTrace& trace, std::string* error) {
  auto fail = [&](const std::string& msg) {
    if (error) *error = msg;
    return false;
  };
  if (trace.steps.empty()) return fail("empty trace");
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    const TraceStep& s = trace.steps[i];
    for (int p : s.parents)
      if (p < 0 || p >= (int)i) return fail("step " + std::to_string(i) + ": bad parent");
    switch (s.kind) {
      case TraceStep::Kind::Input:
        break;
      case TraceStep::Kind::Witness: {
        if (!s.witness_sentence) return fail("witness step without sentence");
        if (!decide_ground(*s.witness_sentence))
          return fail("witness sentence is false in the standard model");
        break;
      }
      case TraceStep::Kind::Grounding: {
        if (s.parents.size() != 1) return fail("grounding needs one parent");
        Clause expected = substitute_clause(trace.steps[s.parents[0]].clause, s.substitution);
        if (!(expected == s.clause))
          return fail("step " + std::to_string(i) + ": grounding mismatch");
        break;
      }
      case TraceStep::Kind::Resolution: {
        if (s.parents.size() != 2) return fail("resolution needs two parents");
        const Clause& pos = trace.steps[s.parents[0]].clause;
        const Clause& neg = trace.steps[s.parents[1]].clause;
        Literal atom = s.resolved_atom;
        atom.positive = true;
        Literal natom = atom.negated();
        // find literals
        std::vector<Literal> lits;
        bool found_pos = false, found_neg = false;
        for (const Literal& l : pos.literals()) {
          if (!found_pos && l == atom) {
            found_pos = true;
            continue;
          }
          lits.push_back(l);
        }
        for (const Literal& l : neg.literals()) {
          if (!found_neg && l == natom) {
            found_neg = true;
            continue;
          }
          lits.push_back(l);
        }
        if (!found_pos || !found_neg)
          return fail("step " + std::to_string(i) + ": resolved atom not present");
        if (!(Clause(std::move(lits)) == s.clause))
          return fail("step " + std::to_string(i) + ": resolvent mismatch");
        break;
      }
      case TraceStep::Kind::Paramodulation: {
        if (s.parents.size() != 2) return fail("paramodulation needs two parents");
        const Clause& from = trace.steps[s.parents[0]].clause;
        const Clause& into = trace.steps[s.parents[1]].clause;
        if (s.from_literal < 0 || s.from_literal >= (int)from.size() || s.into_literal < 0 ||
            s.into_literal >= (int)into.size())
          return fail("step " + std::to_string(i) + ": literal index out of range");
        const Literal& eq = from.literals()[s.from_literal];
        if (!eq.positive || !eq.is_equality)
          return fail("step " + std::to_string(i) + ": not a positive equation");
        Term src = s.left_to_right ? eq.lhs() : eq.rhs();
        Term dst = s.left_to_right ? eq.rhs() : eq.lhs();
        Literal target = into.literals()[s.into_literal];
        if (s.position.empty() || s.position[0] < 0 || s.position[0] >= (int)target.terms.size())
          return fail("step " + std::to_string(i) + ": bad position");
        std::vector<int> path(s.position.begin() + 1, s.position.end());
        Term rewritten = target.terms[s.position[0]];
        if (!navigate_and_rewrite(rewritten, path, 0, src, dst))
          return fail("step " + std::to_string(i) + ": position does not match the equation side");
        target.terms[s.position[0]] = rewritten;
        std::vector<Literal> lits;
        for (std::size_t j = 0; j < from.size(); ++j)
          if ((int)j != s.from_literal) lits.push_back(from.literals()[j]);
        for (std::size_t j = 0; j < into.size(); ++j)
          if ((int)j != s.into_literal) lits.push_back(into.literals()[j]);
        lits.push_back(target);
        if (!(Clause(std::move(lits)) == s.clause))
          return fail("step " + std::to_string(i) + ": paramodulant mismatch");
        break;
      }
      case TraceStep::Kind::EqualityResolution: {
        if (s.parents.size() != 1) return fail("equality resolution needs one parent");
        const Clause& from = trace.steps[s.parents[0]].clause;
        if (s.from_literal < 0 || s.from_literal >= (int)from.size())
          return fail("step " + std::to_string(i) + ": literal index out of range");
        const Literal& l = from.literals()[s.from_literal];
        if (l.positive || !l.is_equality || !(l.lhs() == l.rhs()))
          return fail("step " + std::to_string(i) + ": literal is not a reflexivity negation");
        std::vector<Literal> lits;
        for (std::size_t j = 0; j < from.size(); ++j)
          if ((int)j != s.from_literal) lits.push_back(from.literals()[j]);
        if (!(Clause(std::move(lits)) == s.clause))
          return fail("step " + std::to_string(i) + ": residue mismatch");
        break;
      }
      case TraceStep::Kind::EqualityFactoring: {
        if (s.parents.size() != 1) return fail("equality factoring needs one parent");
        const Clause& from = trace.steps[s.parents[0]].clause;
        if (s.from_literal < 0 || s.from_literal >= (int)from.size() || s.into_literal < 0 ||
            s.into_literal >= (int)from.size() || s.from_literal == s.into_literal)
          return fail("step " + std::to_string(i) + ": literal index out of range");
        if (s.position.size() != 2 || s.position[0] < 0 || s.position[0] > 1 ||
            s.position[1] < 0 || s.position[1] > 1)
          return fail("step " + std::to_string(i) + ": bad side indices");
        const Literal& l1 = from.literals()[s.from_literal];
        const Literal& l2 = from.literals()[s.into_literal];
        if (!l1.positive || !l1.is_equality || !l2.positive || !l2.is_equality)
          return fail("step " + std::to_string(i) + ": factoring needs positive equations");
        if (!(l1.terms[s.position[0]] == l2.terms[s.position[1]]))
          return fail("step " + std::to_string(i) + ": factored sides differ");
        Literal residue = Literal::equality(l1.terms[1 - s.position[0]],
                                            l2.terms[1 - s.position[1]], false);
        std::vector<Literal> lits;
        for (std::size_t j = 0; j < from.size(); ++j)
          if ((int)j != s.from_literal) lits.push_back(from.literals()[j]);
        lits.push_back(residue);
        if (!(Clause(std::move(lits)) == s.clause))
          return fail("step " + std::to_string(i) + ": factoring result mismatch");
        break;
      }
    }
  }
  const TraceStep& last = trace.steps.back();
  if (last.kind != TraceStep::Kind::Witness && !last.clause.empty())
    return fail("final step does not derive the empty clause");
  return true;
}

}  // namespace csc
