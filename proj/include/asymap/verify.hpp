#pragma once

#include <string>
#include <vector>

namespace asymap::verify {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

// The ten acceptance criteria, in order.
std::vector<CheckResult> acceptance_criteria();

// Named suite: series | riemann | residue | pairing | all.
std::vector<CheckResult> run_suite(const std::string& suite);

bool all_pass(const std::vector<CheckResult>& results);

}  // namespace asymap::verify
