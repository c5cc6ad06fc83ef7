#include <algorithm>

#include "cscycle/cycles.hpp"
#include "cscycle/theories.hpp"

namespace csc {

std::string cycle_status_str(CycleStatus s) {
  switch (s) {
    case CycleStatus::Yes: return "yes";
    case CycleStatus::No: return "no";
    case CycleStatus::Undetermined: return "undetermined";
  }
  return "undetermined";
}

namespace {
CycleStatus combine(const std::vector<const Verdict*>& verdicts) {
  bool all_valid = true;
  for (const Verdict* v : verdicts) {
    if (v->is_refuted()) return CycleStatus::No;
    if (!v->is_valid()) all_valid = false;
  }
  return all_valid ? CycleStatus::Yes : CycleStatus::Undetermined;
}
}  // namespace

CycleReport verify_cycle(const ClauseSet& c, const Budget& budget) {
  return verify_param_cycle(c, {1, 0, 0}, budget);
}

CycleReport verify_param_cycle(const ClauseSet& c, const ParamCycleSpec& spec,
                               const Budget& budget) {
  if (spec.step < 1) throw std::invalid_argument("descent step size must be at least 1");
  CycleReport r;
  r.descent = check_entails(instantiate_eta(c, s_tower(spec.step + spec.internal_offset, eta_term())),
                            instantiate_eta(c, s_tower(spec.internal_offset, eta_term())), budget);
  for (unsigned m = 0; m < spec.step; ++m)
    r.base_cases.push_back(check_unsat(instantiate_eta(c, numeral(m + spec.internal_offset)), budget));
  std::vector<const Verdict*> all{&r.descent};
  for (const Verdict& v : r.base_cases) all.push_back(&v);
  r.status = combine(all);
  return r;
}

ClauseSet reduce_param_cycle(const ClauseSet& c, unsigned j, unsigned k) {
  if (j < 1) throw std::invalid_argument("descent step size must be at least 1");
  ClauseSet shifted = instantiate_eta(c, s_tower(k, eta_term()));
  std::vector<ClauseSet> family;
  for (unsigned m = 0; m < j; ++m)
    family.push_back(instantiate_eta(shifted, s_tower(m, eta_term())));
  return disjoin_clause_sets(family);
}

ClauseSet reduce_external_offset(const ClauseSet& d, const ClauseSet& plain_cycle, unsigned i) {
  std::vector<ClauseSet> family;
  for (unsigned m = 0; m < i; ++m) family.push_back(instantiate_eta(d, s_tower(m, eta_term())));
  family.push_back(plain_cycle);
  return disjoin_clause_sets(family);
}

Formula inductive_formula_of_cycle(const ClauseSet& c) {
  Formula sentence = universal_sentence(c);
  std::set<std::string> used = sentence.all_vars();
  std::string var = "x";
  for (int i = 0; used.count(var); ++i) var = "x" + std::to_string(i);
  return Formula::negation(sentence.replace_constant(kEtaName, Term::var(var)));
}

ClauseSet cycle_of_inductive_formula(const Formula& psi, const Budget& budget) {
  std::vector<std::string> free = psi.free_vars();
  if (free.size() > 1)
    throw std::invalid_argument("expected a formula in at most one free variable");
  QuantClass qc = classify_prenexed(psi);
  if (!(qc.is_open() || qc.is_exists(1)))
    throw FragmentError("expected an existential formula, got " + qc.str());

  Theory empty;
  empty.name = "empty";
  if (free.empty()) {
    Verdict v = prove(empty, psi, budget);
    if (!v.is_valid())
      throw CertificateError("closed formula is not provable outright: " + v.kind_str(), {});
  } else {
    InductivityReport report = is_inductive(empty, psi, free[0], budget);
    if (!report.both_valid())
      throw CertificateError("formula is not inductive over the empty theory: base " +
                                 report.base.kind_str() + ", step " + report.step.kind_str(),
                             report);
  }

  Formula theta = prenex_normal_form(Formula::negation(psi));
  Formula at_eta = free.empty() ? theta : theta.substitute({{free[0], eta_term()}});
  return clausify(at_eta);
}

RefutationCertificate verify_refutation(const ClauseSet& d, const ClauseSet& c,
                                        const Budget& budget) {
  RefutationCertificate cert;
  cert.cycle = verify_cycle(c, budget);
  cert.entailment = check_entails(d, c, budget);
  std::vector<const Verdict*> all{&cert.cycle.descent, &cert.entailment};
  for (const Verdict& v : cert.cycle.base_cases) all.push_back(&v);
  cert.status = combine(all);
  return cert;
}

}  // namespace csc
