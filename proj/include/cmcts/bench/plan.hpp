#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "cmcts/strategies.hpp"

namespace cmcts::bench {

// Invalid plans (bad schema, unknown preset, impossible combination) map to
// CLI exit code 1.
struct PlanError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

inline constexpr std::uint64_t kDefaultBudgetSweep[] = {100,  200,  400,
                                                        1000, 2000, 4000};

// Full experiment sweep: every scenario x strategy x budget x worker
// combination, `repetitions` episodes each.
struct ExperimentPlan {
  std::vector<std::string> scenarios;
  std::vector<StrategyKind> strategies;
  std::vector<std::uint64_t> iteration_budgets;
  std::vector<int> worker_counts;
  int repetitions = 50;
  std::uint64_t base_seed = 0;
  std::string output_path;
  bool divided_budget = false;
  int jobs = 1;  // concurrent episodes

  // Throws PlanError. Note the single strategy only pairs with a worker
  // count of 1; sweep it in its own plan.
  void validate() const;

  std::size_t combination_count() const;
  std::size_t record_count() const;
};

ExperimentPlan plan_from_json(const std::string& text);
ExperimentPlan load_plan(const std::filesystem::path& path);

}  // namespace cmcts::bench
