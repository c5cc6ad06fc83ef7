// Command line front end: parsing, cycle verification, reductions, the
// cycle/formula translations, the normalization pipeline, descent sequences,
// model evaluation and checking, and the bundled demos.
//
// Exit codes: 0 verified/holds, 1 refuted/violated, 2 unknown/undetermined,
// 3 usage or input error.

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "cscycle/cycles.hpp"
#include "cscycle/demos.hpp"
#include "cscycle/descent.hpp"
#include "cscycle/json_io.hpp"
#include "cscycle/normalize.hpp"
#include "cscycle/theories.hpp"

namespace {

using namespace csc;

std::string read_input(const std::string& path, const std::string& inline_text) {
  if (!inline_text.empty()) return inline_text;
  if (path.empty() || path == "-") {
    std::stringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Options {
  Budget budget;
  Bounds bounds;
  bool json = false;
  bool trace = false;
};

void add_common(CLI::App* cmd, Options& opt) {
  cmd->add_option("--budget-inferences", opt.budget.max_inferences, "inference budget");
  cmd->add_option("--depth", opt.budget.max_term_depth, "instantiation depth");
  cmd->add_option("--bound", opt.bounds.value_box, "value box for bounded checks");
  cmd->add_option("--witness-bound", opt.bounds.witness_cap, "existential witness bound");
  cmd->add_option("--time-cap", opt.budget.time_cap_seconds, "time cap in seconds");
  cmd->add_flag("--json", opt.json, "emit JSON reports");
  cmd->add_flag("--trace", opt.trace, "include proof traces / rewrite logs");
}

void sync_bounds(Options& opt) { opt.budget.max_witness_magnitude = opt.bounds.value_box; }

int status_exit(CycleStatus s) {
  switch (s) {
    case CycleStatus::Yes: return 0;
    case CycleStatus::No: return 1;
    case CycleStatus::Undetermined: return 2;
  }
  return 2;
}

int verdict_exit(const Verdict& v) {
  if (v.is_valid()) return 0;
  if (v.is_refuted()) return 1;
  return 2;
}

void print_verdict(const Verdict& v, const Options& opt) {
  if (opt.json) {
    std::cout << to_json(v) << "\n";
    return;
  }
  std::cout << v.kind_str();
  if (v.is_refuted()) {
    std::cout << " (bounded evidence in " << v.structure;
    for (const auto& [name, e] : v.interpretation) std::cout << ", " << name << " -> " << e.str();
    std::cout << ", value box " << v.bound_used << ")";
  }
  if (v.is_unknown()) std::cout << " (" << v.reason << ")";
  std::cout << "\n";
}

void print_cycle_report(const CycleReport& r, const Options& opt) {
  if (opt.json) {
    std::cout << to_json(r) << "\n";
    return;
  }
  std::cout << "descent: " << r.descent.kind_str() << "\n";
  for (std::size_t m = 0; m < r.base_cases.size(); ++m)
    std::cout << "base case " << m << ": " << r.base_cases[m].kind_str() << "\n";
  std::cout << "cycle: " << cycle_status_str(r.status) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"clause set cycle toolkit"};
  app.require_subcommand(1);

  Options opt;
  if (const char* profile = std::getenv("CSCYCLE_BUDGET_PROFILE")) {
    if (std::string(profile) == "tiny") {
      opt.budget = Budget::tiny();
      opt.bounds = {5, 1, 5};
    }
  }

  Language la = Language::linear_arithmetic(true);

  std::string input_path, inline_text;
  auto add_input = [&](CLI::App* cmd) {
    cmd->add_option("input", input_path, "input file ('-' for stdin)");
    cmd->add_option("--text", inline_text, "inline input text");
  };

  // parse
  std::string parse_kind = "formula";
  CLI::App* cmd_parse = app.add_subcommand("parse", "parse and reprint input");
  add_input(cmd_parse);
  cmd_parse->add_option("--kind", parse_kind, "term | literal | clause | clauseset | formula");
  add_common(cmd_parse, opt);

  // is-cycle
  CLI::App* cmd_cycle = app.add_subcommand("is-cycle", "verify the cycle conditions");
  add_input(cmd_cycle);
  add_common(cmd_cycle, opt);

  // is-param-cycle
  unsigned step = 1, internal_offset = 0, external_offset = 0;
  CLI::App* cmd_param = app.add_subcommand("is-param-cycle", "verify a (j,k)-cycle");
  add_input(cmd_param);
  cmd_param->add_option("--step", step, "descent step size j")->required();
  cmd_param->add_option("--offset", internal_offset, "internal offset k");
  add_common(cmd_param, opt);

  // reduce
  std::string cycle_path;
  bool external_mode = false;
  CLI::App* cmd_reduce = app.add_subcommand("reduce", "eliminate step/offset parameters");
  add_input(cmd_reduce);
  cmd_reduce->add_option("--step", step, "descent step size j");
  cmd_reduce->add_option("--offset", internal_offset, "internal offset k");
  cmd_reduce->add_flag("--external", external_mode, "eliminate an external offset instead");
  cmd_reduce->add_option("--external-offset", external_offset, "external offset i");
  cmd_reduce->add_option("--cycle", cycle_path, "plain cycle file for --external");
  add_common(cmd_reduce, opt);

  // refutes
  std::string refuted_path;
  CLI::App* cmd_refutes = app.add_subcommand("refutes", "verify a refutation certificate");
  cmd_refutes->add_option("refuted", refuted_path, "clause set to refute")->required();
  cmd_refutes->add_option("cycle", cycle_path, "candidate cycle clause set")->required();
  add_common(cmd_refutes, opt);

  // to-inductive
  bool check_inductive = false;
  CLI::App* cmd_toind = app.add_subcommand("to-inductive", "inductive formula of a cycle");
  add_input(cmd_toind);
  cmd_toind->add_flag("--check", check_inductive, "verify inductivity over the empty theory");
  add_common(cmd_toind, opt);

  // from-inductive
  CLI::App* cmd_fromind = app.add_subcommand("from-inductive", "cycle of an inductive formula");
  add_input(cmd_fromind);
  add_common(cmd_fromind, opt);

  // normalize
  CLI::App* cmd_norm = app.add_subcommand("normalize", "run the normalization pipeline");
  add_input(cmd_norm);
  add_common(cmd_norm, opt);

  // components
  CLI::App* cmd_comp = app.add_subcommand("components", "decompose into components");
  add_input(cmd_comp);
  add_common(cmd_comp, opt);

  // descent
  std::size_t length = 10;
  CLI::App* cmd_descent = app.add_subcommand("descent", "build a descending solution sequence");
  add_input(cmd_descent);
  cmd_descent->add_option("--length", length, "sequence length");
  add_common(cmd_descent, opt);

  // model-eval
  std::string structure_name = "N", term_text, eta_text;
  std::vector<std::string> assigns;
  CLI::App* cmd_eval = app.add_subcommand("model-eval", "evaluate a term in a structure");
  cmd_eval->add_option("--structure", structure_name, "N | Z | M:i | shoenfield | pstruct");
  cmd_eval->add_option("--term", term_text, "term text")->required();
  cmd_eval->add_option("--assign", assigns, "variable assignment var=value^[type]");
  cmd_eval->add_option("--eta", eta_text, "interpretation of eta, value^[type]");
  add_common(cmd_eval, opt);

  // model-check
  std::string formula_text;
  CLI::App* cmd_check = app.add_subcommand("model-check", "bounded satisfaction check");
  add_input(cmd_check);
  cmd_check->add_option("--structure", structure_name, "N | Z | M:i | shoenfield | pstruct");
  cmd_check->add_option("--formula", formula_text, "check a formula instead of a clause set");
  cmd_check->add_option("--eta", eta_text, "interpretation of eta, value^[type]");
  add_common(cmd_check, opt);

  // demo
  std::string demo_name;
  DemoParams demo_params;
  CLI::App* cmd_demo = app.add_subcommand("demo", "run a named demo or the whole suite");
  cmd_demo->add_option("name", demo_name, "demo name or 'suite'")->required();
  cmd_demo->add_option("--k", demo_params.k, "cancellation parameter k");
  cmd_demo->add_option("--n", demo_params.n, "cancellation parameter n");
  cmd_demo->add_option("--m", demo_params.m, "cancellation parameter m");
  cmd_demo->add_option("--chains", demo_params.chains, "chain count");
  add_common(cmd_demo, opt);

  CLI11_PARSE(app, argc, argv);

  try {
    sync_bounds(opt);

    if (cmd_parse->parsed()) {
      std::string text = read_input(input_path, inline_text);
      if (parse_kind == "term") {
        Term t = parse_term(text, la);
        std::cout << (opt.json ? to_json(t) : t.str()) << "\n";
      } else if (parse_kind == "literal") {
        Literal l = parse_literal(text, la);
        std::cout << (opt.json ? to_json(l) : l.str()) << "\n";
      } else if (parse_kind == "clause") {
        Clause c = parse_clause(text, la);
        std::cout << (opt.json ? to_json(c) : c.str()) << "\n";
      } else if (parse_kind == "clauseset") {
        ClauseSet c = clause_set_from_text(text, la);
        std::cout << (opt.json ? to_json(c) : c.str());
      } else {
        Formula f = parse_formula(text, la);
        std::cout << (opt.json ? to_json(f) : f.str()) << "\n";
      }
      return 0;
    }

    if (cmd_cycle->parsed()) {
      ClauseSet c = clause_set_from_text(read_input(input_path, inline_text), la);
      CycleReport r = verify_cycle(c, opt.budget);
      print_cycle_report(r, opt);
      return status_exit(r.status);
    }

    if (cmd_param->parsed()) {
      ClauseSet c = clause_set_from_text(read_input(input_path, inline_text), la);
      CycleReport r = verify_param_cycle(c, {step, internal_offset, 0}, opt.budget);
      print_cycle_report(r, opt);
      return status_exit(r.status);
    }

    if (cmd_reduce->parsed()) {
      ClauseSet c = clause_set_from_text(read_input(input_path, inline_text), la);
      ClauseSet reduced;
      if (external_mode) {
        if (cycle_path.empty()) throw std::runtime_error("--external requires --cycle");
        ClauseSet cyc = clause_set_from_text(read_input(cycle_path, ""), la);
        reduced = reduce_external_offset(c, cyc, external_offset);
      } else {
        reduced = reduce_param_cycle(c, step, internal_offset);
      }
      std::cout << (opt.json ? to_json(reduced) + "\n" : reduced.str());
      return 0;
    }

    if (cmd_refutes->parsed()) {
      ClauseSet d = clause_set_from_text(read_input(refuted_path, ""), la);
      ClauseSet c = clause_set_from_text(read_input(cycle_path, ""), la);
      RefutationCertificate cert = verify_refutation(d, c, opt.budget);
      if (opt.json) {
        std::cout << to_json(cert) << "\n";
      } else {
        std::cout << "cycle: " << cycle_status_str(cert.cycle.status)
                  << "\nentailment: " << cert.entailment.kind_str()
                  << "\nrefutation: " << cycle_status_str(cert.status) << "\n";
      }
      return status_exit(cert.status);
    }

    if (cmd_toind->parsed()) {
      ClauseSet c = clause_set_from_text(read_input(input_path, inline_text), la);
      Formula f = inductive_formula_of_cycle(c);
      std::cout << (opt.json ? to_json(f) : f.str()) << "\n";
      if (check_inductive) {
        Theory empty;
        empty.name = "empty";
        std::vector<std::string> free = f.free_vars();
        if (!free.empty()) {
          InductivityReport rep = is_inductive(empty, f, free[0], opt.budget);
          std::cout << "base: " << rep.base.kind_str() << "\nstep: " << rep.step.kind_str()
                    << "\n";
          return rep.both_valid() ? 0 : 2;
        }
      }
      return 0;
    }

    if (cmd_fromind->parsed()) {
      Formula f = parse_formula(read_input(input_path, inline_text), la);
      ClauseSet c = cycle_of_inductive_formula(f, opt.budget);
      std::cout << (opt.json ? to_json(c) + "\n" : c.str());
      return 0;
    }

    if (cmd_norm->parsed()) {
      Formula f = parse_formula(read_input(input_path, inline_text), la);
      if (opt.json || opt.trace) {
        std::cout << to_json(shift_and_strip(f)) << "\n";
        return 0;
      }
      Formula un = unnest(f);
      std::cout << "unnested:   " << un.str() << "\n";
      Formula pf = eliminate_p(f);
      std::cout << "p-free:     " << pf.str() << "\n";
      std::vector<Component> comps = to_components(f);
      for (std::size_t i = 0; i < comps.size(); ++i)
        std::cout << "component " << i << ": " << comps[i].str() << "  measure "
                  << measure(comps[i]).str() << "\n";
      ShiftResult r = shift_and_strip(f);
      for (const RewriteLogEntry& e : r.log) {
        std::cout << "rewrite " << e.rule << " [" << e.detail << "] " << e.before.str() << " ->";
        for (const Measure& m : e.after) std::cout << " " << m.str();
        std::cout << "\n";
      }
      for (const GuardedComponent& part : r.parts) {
        std::cout << "part:";
        for (const auto& [v, k] : part.guards) std::cout << " " << v << "=" << k;
        std::cout << " core " << part.core.str() << "\n";
      }
      std::cout << "shift:      " << r.shift << "\nstripped:   " << r.stripped.str() << "\n";
      return 0;
    }

    if (cmd_comp->parsed()) {
      Formula f = parse_formula(read_input(input_path, inline_text), la);
      for (const Component& c : to_components(f)) std::cout << c.str() << "\n";
      return 0;
    }

    if (cmd_descent->parsed()) {
      Formula f = parse_formula(read_input(input_path, inline_text), la);
      DescentResult r = descent_for_formula(f, opt.bounds.value_box, length);
      if (opt.json) {
        std::cout << to_json(r) << "\n";
      } else {
        std::cout << "component " << r.component_index << ": " << r.component.str() << "\n";
        std::cout << "difference:";
        for (long long v : r.sequence.difference) std::cout << " " << v;
        std::cout << "\nthreshold: " << r.sequence.threshold << "\nsequence:";
        for (long long v : r.sequence.head_values) std::cout << " " << v;
        std::cout << "\n";
      }
      return 0;
    }

    if (cmd_eval->parsed()) {
      Structure s(StructureId::parse(structure_name));
      Interpretation consts;
      if (!eta_text.empty()) consts[kEtaName] = parse_element(eta_text);
      std::map<std::string, ModelElement> assignment;
      for (const std::string& a : assigns) {
        std::size_t eq = a.find('=');
        if (eq == std::string::npos) throw std::runtime_error("--assign expects var=value^[type]");
        assignment[a.substr(0, eq)] = parse_element(a.substr(eq + 1));
      }
      Language lang = s.language();
      Term t = parse_term(term_text, lang);
      ModelElement e = eval_term(s, assignment, consts, t);
      std::cout << (opt.json ? to_json(e) : e.str()) << "\n";
      return 0;
    }

    if (cmd_check->parsed()) {
      Structure s(StructureId::parse(structure_name));
      Interpretation consts;
      if (!eta_text.empty()) consts[kEtaName] = parse_element(eta_text);
      Language lang = s.language();
      BoundedReport report;
      if (!formula_text.empty()) {
        report = holds_bounded(s, parse_formula(formula_text, lang), opt.bounds, consts);
      } else {
        ClauseSet c = clause_set_from_text(read_input(input_path, inline_text), lang);
        report = holds_bounded(s, c, opt.bounds, consts);
      }
      std::cout << (opt.json ? to_json(report) : report.detail) << "\n";
      return report.result == Tri::True ? 0 : report.result == Tri::False ? 1 : 2;
    }

    if (cmd_demo->parsed()) {
      if (demo_name == "suite") {
        SuiteResult suite = demo_suite(opt.budget, opt.bounds);
        std::cout << (opt.json ? suite.json() + "\n" : suite.matrix());
        return suite.exit_code;
      }
      DemoResult d = run_demo(demo_name, demo_params, opt.budget, opt.bounds);
      if (opt.json) std::cout << d.json << "\n";
      else std::cout << d.name << ": " << d.status << " (" << d.detail << ")\n";
      return d.exit_code;
    }
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 3;
  }
  return 3;
}
