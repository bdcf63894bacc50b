#pragma once

#include <cstdint>
#include <vector>

#include "cmcts/bench/plan.hpp"
#include "cmcts/bench/records.hpp"
#include "cmcts/environment.hpp"
#include "cmcts/search_config.hpp"
#include "cmcts/strategies.hpp"

namespace cmcts::bench {

struct EpisodeResult {
  bool success = false;
  int steps = 0;
  std::vector<double> action_trace;  // flattened chosen joint actions
};

// One closed-loop episode: plan, execute the first joint action, replan,
// until the scenario horizon or a terminal state. Each planning step derives
// its own seed from (episode_seed, step).
EpisodeResult run_episode(const Environment& env, const SearchConfig& config,
                          const StrategyConfig& strategy,
                          std::uint64_t episode_seed);

// Executes every combination of the plan, repetitions included. Records are
// ordered by combination index, then repetition, regardless of how many
// episodes run concurrently. Episode seeds derive from
// (base_seed, combination index, repetition).
std::vector<RunRecord> run_plan(const ExperimentPlan& plan);

}  // namespace cmcts::bench
