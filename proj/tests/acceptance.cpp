#include <chrono>
#include <cstdio>
#include <exception>

#include "qairy/verify.hpp"

using namespace qairy;

int main() {
  struct Criterion {
    int id;
    const char* title;
    const char* suite;
  };
  const Criterion criteria[] = {
      {1, "gl4 example reproduction", "example-gl4"},
      {2, "leading-order oracle", "leading-oracle"},
      {3, "roots-of-unity identities", "vieta"},
      {4, "classification table", "classification-table"},
      {5, "lambda-goodness", "lambda-good"},
      {6, "appending", "appending"},
      {7, "solver soundness", "residuals"},
      {8, "curve dictionary", "curves"},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    SuiteReport rep;
    std::string error;
    try {
      rep = run_suite(c.suite);
    } catch (const std::exception& e) {
      error = e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool ok = error.empty() && rep.ok();
    if (!ok) ++failures;
    std::printf("criterion %d: %s - %s (%d/%zu checks, %.2fs)\n", c.id, ok ? "PASS" : "FAIL", c.title,
                rep.passed(), rep.checks.size(), secs);
    if (!error.empty()) std::printf("    error: %s\n", error.c_str());
    for (const auto& ch : rep.checks)
      if (!ch.pass) std::printf("    failed %s: %s\n", ch.name.c_str(), ch.detail.c_str());
  }
  return failures == 0 ? 0 : 1;
}
