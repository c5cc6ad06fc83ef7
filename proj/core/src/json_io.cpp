#include <json.hpp>

#include "cscycle/json_io.hpp"

namespace csc {

using nlohmann::json;

namespace {

json term_json(const Term& t) {
  if (t.is_var()) return {{"kind", "var"}, {"name", t.sym()}};
  json args = json::array();
  for (const Term& a : t.args()) args.push_back(term_json(a));
  return {{"kind", "app"}, {"sym", t.sym()}, {"args", args}};
}

json literal_json(const Literal& l) {
  json j;
  j["kind"] = l.is_equality ? "eq" : "pred";
  j["positive"] = l.positive;
  if (l.is_equality) {
    j["lhs"] = term_json(l.lhs());
    j["rhs"] = term_json(l.rhs());
  } else {
    j["sym"] = l.pred;
    json args = json::array();
    for (const Term& t : l.terms) args.push_back(term_json(t));
    j["args"] = args;
  }
  return j;
}

json clause_json(const Clause& c) {
  json lits = json::array();
  for (const Literal& l : c.literals()) lits.push_back(literal_json(l));
  return {{"kind", "clause"}, {"literals", lits}, {"text", c.str()}};
}

json clause_set_json(const ClauseSet& c) {
  json clauses = json::array();
  for (const Clause& cl : c.clauses()) clauses.push_back(clause_json(cl));
  return {{"kind", "clauseset"}, {"clauses", clauses}};
}

json formula_json(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
      return {{"kind", "atom"}, {"literal", literal_json(f.lit())}};
    case Formula::Kind::Not:
      return {{"kind", "not"}, {"body", formula_json(f.child())}};
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Implies:
    case Formula::Kind::Iff: {
      const char* name = f.kind() == Formula::Kind::And       ? "and"
                         : f.kind() == Formula::Kind::Or      ? "or"
                         : f.kind() == Formula::Kind::Implies ? "implies"
                                                              : "iff";
      return {{"kind", name},
              {"lhs", formula_json(f.child(0))},
              {"rhs", formula_json(f.child(1))}};
    }
    case Formula::Kind::Forall:
    case Formula::Kind::Exists:
      return {{"kind", f.kind() == Formula::Kind::Forall ? "forall" : "exists"},
              {"var", f.var()},
              {"body", formula_json(f.child())}};
  }
  throw std::logic_error("unreachable");
}

json element_json(const ModelElement& e) {
  return {{"type", e.type}, {"value", e.value}};
}

json substitution_json(const std::map<std::string, Term>& subst) {
  json j = json::object();
  for (const auto& [v, t] : subst) j[v] = t.str();
  return j;
}

json trace_json(const ProofTrace& trace) {
  json steps = json::array();
  for (const TraceStep& s : trace.steps) {
    json step;
    switch (s.kind) {
      case TraceStep::Kind::Input: step["rule"] = "input"; break;
      case TraceStep::Kind::Grounding: step["rule"] = "grounding"; break;
      case TraceStep::Kind::Resolution: step["rule"] = "resolution"; break;
      case TraceStep::Kind::Paramodulation: step["rule"] = "paramodulation"; break;
      case TraceStep::Kind::EqualityResolution: step["rule"] = "equality-resolution"; break;
      case TraceStep::Kind::EqualityFactoring: step["rule"] = "equality-factoring"; break;
      case TraceStep::Kind::Witness: step["rule"] = "witness"; break;
    }
    step["clause"] = s.clause.str();
    if (!s.parents.empty()) step["parents"] = s.parents;
    if (!s.substitution.empty()) step["substitution"] = substitution_json(s.substitution);
    if (s.kind == TraceStep::Kind::Resolution) step["atom"] = s.resolved_atom.str();
    if (s.kind == TraceStep::Kind::Paramodulation) {
      step["from_literal"] = s.from_literal;
      step["into_literal"] = s.into_literal;
      step["left_to_right"] = s.left_to_right;
      step["position"] = s.position;
    }
    if (s.kind == TraceStep::Kind::EqualityResolution) step["literal"] = s.from_literal;
    if (s.witness_sentence) step["sentence"] = s.witness_sentence->str();
    if (!s.note.empty()) step["note"] = s.note;
    steps.push_back(std::move(step));
  }
  return steps;
}

json verdict_json(const Verdict& v) {
  json j;
  j["verdict"] = v.kind_str();
  if (v.is_valid()) j["trace"] = trace_json(v.trace);
  if (v.is_refuted()) {
    json witness;
    witness["structure"] = v.structure;
    json interp = json::object();
    for (const auto& [name, e] : v.interpretation) interp[name] = element_json(e);
    witness["constants"] = interp;
    j["witness"] = witness;
    j["bounds"] = {{"value_box", v.bound_used}, {"flag", "bounded"}};
  }
  if (v.is_unknown()) j["reason"] = v.reason;
  return j;
}

json cycle_report_json(const CycleReport& r) {
  json j;
  j["status"] = cycle_status_str(r.status);
  j["descent"] = verdict_json(r.descent);
  json bases = json::array();
  for (const Verdict& v : r.base_cases) bases.push_back(verdict_json(v));
  j["base_cases"] = bases;
  return j;
}

Term term_from(const json& j, const Language& lang);

Literal literal_from(const json& j, const Language& lang) {
  bool positive = j.value("positive", true);
  if (j.at("kind") == "eq")
    return Literal::equality(term_from(j.at("lhs"), lang), term_from(j.at("rhs"), lang), positive);
  std::vector<Term> args;
  for (const json& a : j.value("args", json::array())) args.push_back(term_from(a, lang));
  return Literal::predicate(j.at("sym"), std::move(args), positive);
}

Term term_from(const json& j, const Language& lang) {
  if (j.at("kind") == "var") return Term::var(j.at("name"));
  std::vector<Term> args;
  for (const json& a : j.value("args", json::array())) args.push_back(term_from(a, lang));
  std::string sym = j.at("sym");
  if (sym != kEtaName && !lang.functions().count(sym))
    throw LanguageError("undeclared function symbol " + sym);
  return Term::app(sym, std::move(args));
}

Formula formula_from(const json& j, const Language& lang) {
  std::string kind = j.at("kind");
  if (kind == "atom") return Formula::atom(literal_from(j.at("literal"), lang));
  if (kind == "not") return Formula::negation(formula_from(j.at("body"), lang));
  if (kind == "and")
    return Formula::conj(formula_from(j.at("lhs"), lang), formula_from(j.at("rhs"), lang));
  if (kind == "or")
    return Formula::disj(formula_from(j.at("lhs"), lang), formula_from(j.at("rhs"), lang));
  if (kind == "implies")
    return Formula::implies(formula_from(j.at("lhs"), lang), formula_from(j.at("rhs"), lang));
  if (kind == "iff")
    return Formula::iff(formula_from(j.at("lhs"), lang), formula_from(j.at("rhs"), lang));
  if (kind == "forall") return Formula::forall(j.at("var"), formula_from(j.at("body"), lang));
  if (kind == "exists") return Formula::exists(j.at("var"), formula_from(j.at("body"), lang));
  throw std::invalid_argument("unknown formula kind: " + kind);
}

}  // namespace

std::string to_json(const Term& t) { return term_json(t).dump(); }
std::string to_json(const Literal& l) { return literal_json(l).dump(); }
std::string to_json(const Clause& c) { return clause_json(c).dump(); }
std::string to_json(const ClauseSet& c) { return clause_set_json(c).dump(); }
std::string to_json(const Formula& f) { return formula_json(f).dump(); }
std::string to_json(const Verdict& v) { return verdict_json(v).dump(); }
std::string to_json(const CycleReport& r) { return cycle_report_json(r).dump(); }

std::string to_json(const RefutationCertificate& r) {
  json j;
  j["status"] = cycle_status_str(r.status);
  j["cycle"] = cycle_report_json(r.cycle);
  j["entailment"] = verdict_json(r.entailment);
  return j.dump();
}

std::string to_json(const BoundedReport& r) {
  json j;
  j["result"] = tri_str(r.result);
  j["bounds"] = {{"value_box", r.bounds.value_box},
                 {"type_cap", r.bounds.type_cap},
                 {"witness_cap", r.bounds.witness_cap}};
  j["detail"] = r.detail;
  if (r.violated_clause) {
    j["violated_clause"] = r.violated_clause->str();
    json assign = json::object();
    for (const auto& [v, e] : r.counter_assignment) assign[v] = element_json(e);
    j["counter_assignment"] = assign;
  }
  return j.dump();
}

std::string to_json(const ModelElement& e) { return element_json(e).dump(); }

std::string to_json(const DescentResult& r) {
  json j;
  j["component_index"] = r.component_index;
  j["component"] = r.component.str();
  j["sol1"] = r.sol1;
  j["sol2"] = r.sol2;
  j["difference"] = r.sequence.difference;
  j["threshold"] = r.sequence.threshold;
  j["sequence"] = r.sequence.head_values;
  json vectors = json::array();
  for (const auto& v : r.sequence.vectors) vectors.push_back(v);
  j["vectors"] = vectors;
  return j.dump();
}

std::string to_json(const ShiftResult& r) {
  json j;
  j["shift"] = r.shift;
  j["stripped"] = r.stripped.str();
  json parts = json::array();
  for (const GuardedComponent& part : r.parts) {
    json p;
    json guards = json::array();
    for (const auto& [v, k] : part.guards) guards.push_back({{"var", v}, {"value", k}});
    p["guards"] = guards;
    p["core"] = part.core.str();
    parts.push_back(std::move(p));
  }
  j["parts"] = parts;
  json log = json::array();
  for (const RewriteLogEntry& e : r.log) {
    json entry;
    entry["rule"] = e.rule;
    entry["literal"] = e.detail;
    entry["before"] = e.before.str();
    json after = json::array();
    for (const Measure& m : e.after) after.push_back(m.str());
    entry["after"] = after;
    entry["strictly_decreasing"] = e.strictly_decreasing();
    log.push_back(std::move(entry));
  }
  j["log"] = log;
  return j.dump();
}

Formula formula_from_json(const std::string& text, const Language& lang) {
  return formula_from(json::parse(text), lang);
}

ClauseSet clause_set_from_text(const std::string& text, const Language& lang) {
  std::size_t first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    json j = json::parse(text);
    std::vector<Clause> clauses;
    for (const json& cj : j.at("clauses")) {
      std::vector<Literal> lits;
      for (const json& lj : cj.at("literals")) lits.push_back(literal_from(lj, lang));
      clauses.push_back(Clause(std::move(lits)));
    }
    return ClauseSet(std::move(clauses));
  }
  return parse_clause_set(text, lang);
}

Theory theory_from_json(const std::string& text) {
  json j = json::parse(text);
  std::map<std::string, int> funs, preds;
  bool eta = true;
  if (j.contains("language")) {
    const json& lj = j.at("language");
    json fj = lj.value("functions", json::object());
    for (const auto& [key, value] : fj.items()) funs[key] = value.get<int>();
    json pj = lj.value("predicates", json::object());
    for (const auto& [key, value] : pj.items()) preds[key] = value.get<int>();
    eta = lj.value("eta", true);
  }
  Theory t;
  t.name = j.value("name", "theory");
  t.language = Language::make(funs, preds, eta);
  for (const json& ax : j.value("axioms", json::array()))
    t.axioms.push_back(parse_formula(ax.get<std::string>(), t.language).universal_closure());
  return t;
}

ModelElement parse_element(const std::string& text) {
  std::size_t caret = text.find("^[");
  if (caret == std::string::npos || text.back() != ']')
    throw std::invalid_argument("expected value^[type], got: " + text);
  ModelElement e;
  e.value = std::stoll(text.substr(0, caret));
  e.type = (unsigned)std::stoul(text.substr(caret + 2, text.size() - caret - 3));
  return e;
}

}  // namespace csc
