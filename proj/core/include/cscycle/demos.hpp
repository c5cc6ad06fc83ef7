#pragma once

// Reproducible end-to-end demonstrations, each keyed by a short name with a
// manifest-recorded expected status. The suite runs all of them with the
// given budgets and reports a pass/fail matrix.

#include <map>
#include <string>
#include <vector>

#include "cscycle/entailment.hpp"
#include "cscycle/models.hpp"

namespace csc {

struct DemoResult {
  std::string name;
  std::string title;
  std::string status;    // verified | holds | refuted | violated | unknown | error
  std::string expected;  // manifest entry
  bool matches = false;
  int exit_code = 3;  // 0 verified/holds, 1 refuted/violated, 2 unknown, 3 error
  std::string detail;
  std::string json;  // full structured report
};

struct DemoParams {
  unsigned k = 0, n = 1, m = 2;  // cancellation parameters
  unsigned chains = 1;           // chain count for the induction failure demo
};

std::vector<std::string> demo_names();
std::string demo_expected(const std::string& name);

DemoResult run_demo(const std::string& name, const DemoParams& params, const Budget& budget,
                    const Bounds& bounds);

struct SuiteResult {
  std::vector<DemoResult> demos;
  bool all_match = false;
  bool any_unknown = false;
  int exit_code = 0;
  std::string matrix() const;  // one line per demo
  std::string json() const;
};

SuiteResult demo_suite(const Budget& budget, const Bounds& bounds);

}  // namespace csc
