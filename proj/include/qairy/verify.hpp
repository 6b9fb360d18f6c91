#pragma once

#include <string>
#include <vector>

#include "qairy/weyl.hpp"

namespace qairy {

/// H^i_m (i = 1, 2, 3) of the worked gl_4 example (two 2-cycles, s = 1,
/// Q = (i, -1)), assembled directly from its expanded display with every
/// mode index |p| <= W.
GradedOperator gl4_reference(int i, int m, int W);

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckResult> checks;

  int passed() const;
  int failed() const;
  bool ok() const { return failed() == 0 && !checks.empty(); }
  void add(std::string name, bool pass, std::string detail = {});
};

SuiteReport verify_example_gl4();
SuiteReport verify_leading_oracle();
SuiteReport verify_vieta();
SuiteReport verify_classification_table();
SuiteReport verify_lambda_goodness();
SuiteReport verify_appending();
SuiteReport verify_residuals();
SuiteReport verify_curves();

/// example-gl4, leading-oracle, vieta, classification-table, lambda-good,
/// appending, residuals, curves.
const std::vector<std::string>& suite_names();
/// Throws std::invalid_argument for an unknown name.
SuiteReport run_suite(const std::string& name);

}  // namespace qairy
