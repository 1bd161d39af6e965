#pragma once

// Acceptance suite: nine property and closed-form criteria, each reduced
// to a single pass/fail with the worst observed discrepancy.

#include <functional>
#include <string>
#include <vector>

#include "json.hpp"

namespace mpps {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;  // worst discrepancy or first failing check
  double seconds = 0.0;
};

struct AcceptanceReport {
  std::vector<CriterionResult> criteria;

  bool all_pass() const;
  nlohmann::ordered_json to_json() const;
};

struct AcceptanceOptions {
  // Mutation sentinel: every library call under test sees beta scaled by
  // 1.1 while the oracles keep the true value.
  bool inject_fault = false;
  // Restricts the run to these criterion ids; empty runs all nine.
  std::vector<int> only;
  // Called after each criterion finishes.
  std::function<void(const CriterionResult&)> on_result;
};

AcceptanceReport run_acceptance(const AcceptanceOptions& options = {});

// "PASS [3] c=1 reductions: ..." style line.
std::string format_result_line(const CriterionResult& r);

}  // namespace mpps
