#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bmoment/models.hpp"

namespace bmoment {

/// One verification check tied to the statement it verifies.
struct CheckResult {
  std::string name;
  std::string statement;
  bool pass = false;
  double measured = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

struct VerificationReport {
  std::string suite;
  std::vector<CheckResult> checks;

  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return !checks.empty();
  }
};

struct SuiteOptions {
  std::size_t samples = 0;  // 0: per-check defaults
  std::uint64_t seed = 2027;
  std::string graph_json;  // optional extra graph to classify (dichotomy suite)
  Tolerances tol{};
};

/// dichotomy | local_model | zero_weight | morse_bott | vertices |
/// csymplectic | cut
std::vector<std::string> suite_names();
VerificationReport run_suite(const std::string& suite, const SuiteOptions& opt = {});

// Individual criteria, shared between the CLI suites and the acceptance runner.
std::vector<CheckResult> check_dichotomy(const SuiteOptions& opt);
std::vector<CheckResult> check_weight_recovery(const SuiteOptions& opt);
std::vector<CheckResult> check_local_model_image(const SuiteOptions& opt);
std::vector<CheckResult> check_convexity(const SuiteOptions& opt);
std::vector<CheckResult> check_vertices_fixed_points(const SuiteOptions& opt);
std::vector<CheckResult> check_recession_cones(const SuiteOptions& opt);
std::vector<CheckResult> check_leaf_image(const SuiteOptions& opt);
std::vector<CheckResult> check_morse_bott(const SuiteOptions& opt);
std::vector<CheckResult> check_level_connectedness(const SuiteOptions& opt);
std::vector<CheckResult> check_counterexample(const SuiteOptions& opt);
std::vector<CheckResult> check_symplectic_cut(const SuiteOptions& opt);
std::vector<CheckResult> check_stratified_weights(const SuiteOptions& opt);
std::vector<CheckResult> check_enumeration_oracle(const SuiteOptions& opt);

}  // namespace bmoment
