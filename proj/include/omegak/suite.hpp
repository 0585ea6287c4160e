#pragma once
// The property battery behind `omegak suite` and the acceptance binary.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace omk {

struct SuiteOptions {
  std::uint64_t seed = 0;
  std::vector<int> only;  // criterion ids; empty runs all
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0;
  double limit = 0;  // wall-clock limit in seconds, 0 for none
};

constexpr int kCriteria = 9;

CriterionResult run_criterion(int id, const SuiteOptions& opt);
std::vector<CriterionResult> run_suite(const SuiteOptions& opt,
                                       const std::function<void(const CriterionResult&)>& on_result = {});
// Wall-clock times are left out unless `timing`, keeping reports reproducible.
std::string format_result(const CriterionResult& r, bool timing = true);

}  // namespace omk
