#pragma once

#include <string>
#include <vector>

#include "fockcalc/run_config.hpp"

namespace fockcalc {

struct SuiteCheck {
  std::string name;
  double value = 0.0;
  double tol = 0.0;
  bool pass = false;
  /// true when the check is an upper bound |value| <= tol, false for
  /// qualitative checks whose value is informational.
  bool bounded = true;
};

struct SuiteResult {
  std::string suite;
  std::vector<SuiteCheck> checks;

  bool pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
  void bound(const std::string& name, double value, double tol) {
    checks.push_back({name, value, tol, value <= tol, true});
  }
  void flag(const std::string& name, bool ok, double value = 0.0) {
    checks.push_back({name, value, 0.0, ok, false});
  }
};

/// Verification suites. Sizes and tolerances default to the pinned
/// settings used by the acceptance run; the named tolerances can be
/// overridden through cfg.tolerances for exploratory runs.
SuiteResult suite_isometry(const RunConfig& cfg);
SuiteResult suite_basis_mapping(const RunConfig& cfg);
SuiteResult suite_reproducing(const RunConfig& cfg);
SuiteResult suite_bargstft1(const RunConfig& cfg);
SuiteResult suite_t0t(const RunConfig& cfg);
SuiteResult suite_creation_annihilation(const RunConfig& cfg);
SuiteResult suite_kernel_quadrature(const RunConfig& cfg);
SuiteResult suite_transfer_lemma(const RunConfig& cfg);
SuiteResult suite_diagram(const RunConfig& cfg);
SuiteResult suite_continuity(const RunConfig& cfg);
SuiteResult suite_covariance(const RunConfig& cfg);
SuiteResult suite_classify(const RunConfig& cfg);

std::vector<std::string> verify_suite_names();
SuiteResult run_verify_suite(const std::string& name, const RunConfig& cfg);

std::string suite_result_json(const SuiteResult& r, const RunConfig& cfg);

}  // namespace fockcalc
