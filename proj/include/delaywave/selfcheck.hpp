#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace delaywave {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;    ///< deterministic: no timings
  double seconds = 0.0;  ///< wall time, including shared work first needed here
};

/// The acceptance criteria on the fixed families A (0, 1.2, 3) and
/// C (0, 1.05, 2.2). Sweeps and other shared work are computed on first use
/// and reused by later criteria. An exception inside a criterion is reported
/// as a failure carrying the error text.
class AcceptanceSuite {
 public:
  static constexpr int count = 11;

  AcceptanceSuite();
  ~AcceptanceSuite();
  AcceptanceSuite(const AcceptanceSuite&) = delete;
  AcceptanceSuite& operator=(const AcceptanceSuite&) = delete;

  /// id in 1..count.
  CriterionResult run(int id);

 private:
  struct Cache;
  std::unique_ptr<Cache> cache_;
};

/// Runs every criterion in order, calling `on_result` after each.
std::vector<CriterionResult> run_acceptance(
    const std::function<void(const CriterionResult&)>& on_result = {});

}  // namespace delaywave
