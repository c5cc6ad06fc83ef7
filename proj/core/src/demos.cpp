#include <json.hpp>

#include "cscycle/cycles.hpp"
#include "cscycle/demos.hpp"
#include "cscycle/json_io.hpp"
#include "cscycle/theories.hpp"

namespace csc {

using nlohmann::json;

namespace {

struct ManifestEntry {
  const char* name;
  const char* title;
  const char* expected;
};

// Expected statuses for the default budgets; the suite fails loudly on any
// mismatch.
const ManifestEntry kManifest[] = {
    {"example1", "the even/odd clause set is a cycle and refutes itself", "verified"},
    {"cor3", "the guarded-predicate clause set has non-standard evidence against cycle refutation",
     "refuted"},
    {"cor6", "the cancellation clause set has chain-structure evidence against cycle refutation",
     "refuted"},
    {"prop6", "the cancellation formula holds on an initial segment of the standard model",
     "holds"},
    {"lemma13", "the two-variable cancellation formula is inductive over the base theory",
     "verified"},
    {"lemma15", "the two-chain structure violates induction for the padding formula", "violated"},
    {"lemma19", "commutativity fails in the two-chain structure", "violated"},
};

int exit_for(const std::string& status) {
  if (status == "verified" || status == "holds") return 0;
  if (status == "refuted" || status == "violated") return 1;
  if (status == "unknown") return 2;
  return 3;
}

DemoResult finish(DemoResult r, std::string status, std::string detail, std::string payload) {
  r.status = std::move(status);
  r.detail = std::move(detail);
  r.exit_code = exit_for(r.status);
  r.matches = r.status == r.expected;
  json j;
  j["demo"] = r.name;
  j["title"] = r.title;
  j["status"] = r.status;
  j["expected"] = r.expected;
  j["matches"] = r.matches;
  j["detail"] = r.detail;
  if (!payload.empty()) j["report"] = json::parse(payload);
  r.json = j.dump();
  return r;
}

DemoResult demo_example1(DemoResult r, const Budget& budget) {
  ClauseSet c = even_odd_cycle();
  RefutationCertificate cert = verify_refutation(c, c, budget);
  std::string status = cert.status == CycleStatus::Yes          ? "verified"
                       : cert.status == CycleStatus::No         ? "refuted"
                                                                : "unknown";
  return finish(std::move(r), status,
                "cycle " + cycle_status_str(cert.cycle.status) + ", self-entailment " +
                    cert.entailment.kind_str(),
                to_json(cert));
}

DemoResult demo_cor3(DemoResult r, const Budget& budget) {
  ClauseSet c = progression_escape_clause_set();
  Verdict v = check_unsat(c, budget);

  // Contrast: without the eta restriction a single induction on P(x) closes
  // the gap.
  Theory p = theory_P();
  Formula px = parse_formula("P(x)", p.language);
  InductivityReport ind = is_inductive(p, px, "x", budget);

  std::string status = v.is_refuted() ? "refuted" : v.is_valid() ? "verified" : "unknown";
  std::string detail = "clause set: " + v.kind_str();
  if (v.is_refuted()) detail += " by " + v.structure;
  detail += "; P(x) inductive: " + std::string(ind.both_valid() ? "yes" : "no");
  return finish(std::move(r), status, detail, to_json(v));
}

DemoResult demo_cor6(DemoResult r, const DemoParams& params, const Budget& budget) {
  ClauseSet c = cancellation_clause_set(params.k, params.n, params.m);
  Verdict v = check_unsat(c, budget);
  CancellationWitnessReport w = cancellation_witness(params.k, params.n, params.m);
  std::string status = v.is_refuted() ? "refuted" : v.is_valid() ? "verified" : "unknown";
  if (v.is_refuted() && !w.ok()) status = "error";
  std::string detail = "clause set: " + v.kind_str();
  if (v.is_refuted())
    detail += " by " + v.structure + "; witness " + w.witness.str() + " with both sides " +
              w.lhs.str();
  return finish(std::move(r), status, detail, to_json(v));
}

DemoResult demo_prop6(DemoResult r, const DemoParams& params) {
  Formula e = cancellation_formula(params.k, params.n, params.m);
  long long failures = 0;
  for (long long x = 0; x <= 50; ++x) {
    Formula instance = e.substitute({{"x", numeral((unsigned)x)}});
    if (!decide_ground(instance)) ++failures;
  }
  std::string status = failures == 0 ? "holds" : "violated";
  return finish(std::move(r), status,
                failures == 0 ? "holds at every point of [0..50]"
                              : std::to_string(failures) + " failures in [0..50]",
                "");
}

DemoResult demo_lemma13(DemoResult r, const Budget& budget) {
  Language la = Language::linear_arithmetic(true);
  Formula phi = parse_formula("x + 0 = y + x -> y = 0", la);
  InductivityReport ind = is_inductive(theory_B(), phi, "x", budget);
  std::string status = ind.both_valid()                                        ? "verified"
                       : ind.base.is_refuted() || ind.step.is_refuted()         ? "refuted"
                                                                                : "unknown";
  return finish(std::move(r), status,
                "base " + ind.base.kind_str() + ", step " + ind.step.kind_str(),
                to_json(ind.step));
}

DemoResult demo_lemma15(DemoResult r, const DemoParams& params, const Bounds& bounds) {
  InductionFailureReport report = induction_failure_witness(params.chains, bounds);
  std::string status = report.axiom_bounded_violated ? "violated" : "unknown";
  return finish(std::move(r), status, report.detail, "");
}

DemoResult demo_lemma19(DemoResult r, const Bounds& bounds) {
  Structure m2(StructureId::m_chain(2));
  Language la = Language::linear_arithmetic(false);
  Formula b2 = parse_formula("x + y = y + x", la).universal_closure();
  BoundedReport report = holds_bounded(m2, clausify(b2), bounds);
  std::string status = report.result == Tri::False  ? "violated"
                       : report.result == Tri::True ? "holds"
                                                     : "unknown";
  return finish(std::move(r), status, report.detail, to_json(report));
}

}  // namespace

std::vector<std::string> demo_names() {
  std::vector<std::string> names;
  for (const ManifestEntry& e : kManifest) names.push_back(e.name);
  return names;
}

std::string demo_expected(const std::string& name) {
  for (const ManifestEntry& e : kManifest)
    if (name == e.name) return e.expected;
  throw std::invalid_argument("unknown demo: " + name);
}

DemoResult run_demo(const std::string& name, const DemoParams& params, const Budget& budget,
                    const Bounds& bounds) {
  DemoResult r;
  r.name = name;
  for (const ManifestEntry& e : kManifest)
    if (name == e.name) {
      r.title = e.title;
      r.expected = e.expected;
    }
  if (r.expected.empty()) throw std::invalid_argument("unknown demo: " + name);

  try {
    if (name == "example1") return demo_example1(std::move(r), budget);
    if (name == "cor3") return demo_cor3(std::move(r), budget);
    if (name == "cor6") return demo_cor6(std::move(r), params, budget);
    if (name == "prop6") return demo_prop6(std::move(r), params);
    if (name == "lemma13") return demo_lemma13(std::move(r), budget);
    if (name == "lemma15") return demo_lemma15(std::move(r), params, bounds);
    if (name == "lemma19") return demo_lemma19(std::move(r), bounds);
  } catch (const std::exception& ex) {
    return finish(std::move(r), "error", ex.what(), "");
  }
  throw std::invalid_argument("unknown demo: " + name);
}

std::string SuiteResult::matrix() const {
  std::string out;
  for (const DemoResult& d : demos) {
    out += d.matches ? "PASS" : "FAIL";
    out += "  " + d.name + ": expected " + d.expected + ", got " + d.status + " -- " + d.title +
           "\n";
  }
  return out;
}

std::string SuiteResult::json() const {
  nlohmann::json j;
  nlohmann::json list = nlohmann::json::array();
  for (const DemoResult& d : demos) list.push_back(nlohmann::json::parse(d.json));
  j["demos"] = list;
  j["all_match"] = all_match;
  j["exit_code"] = exit_code;
  return j.dump();
}

SuiteResult demo_suite(const Budget& budget, const Bounds& bounds) {
  SuiteResult suite;
  suite.all_match = true;
  for (const std::string& name : demo_names()) {
    DemoResult d = run_demo(name, {}, budget, bounds);
    suite.all_match = suite.all_match && d.matches;
    suite.any_unknown = suite.any_unknown || d.status == "unknown";
    suite.demos.push_back(std::move(d));
  }
  suite.exit_code = suite.all_match ? 0 : suite.any_unknown ? 2 : 1;
  return suite;
}

}  // namespace csc
