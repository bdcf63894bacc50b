#pragma once

#include <cstdint>

namespace cmcts {

// All tunable search constants. Ranges are enforced by validate(); invalid
// configurations are rejected at construction sites (throws
// std::invalid_argument).
struct SearchConfig {
  // Exploration constant of the UCT rule.
  double uct_exploration_c = 1.0;

  // Progressive widening: a node may hold at most
  // max(initial_action_count, floor(pw_coefficient * N(s)^pw_exponent))
  // actions per agent.
  double pw_coefficient = 1.0;
  double pw_exponent = 0.5;  // in [0, 1]

  // Radial-basis bandwidth for the action-similarity kernel.
  double kernel_bandwidth = 10.0;

  double discount_factor = 1.0;  // in (0, 1]

  // Absolute depth cap for selection and simulation, in steps from the start
  // of the episode.
  int planning_horizon = 10;

  std::uint64_t iteration_budget = 1000;

  // Number of actions sampled per agent when a node is first expanded.
  int initial_action_count = 1;

  // Similarity weights below this are ignored. 1.0 disables similarity
  // updates entirely (only exact duplicates would qualify, and those are
  // skipped outright in that mode).
  double similarity_floor = 1e-4;

  std::uint64_t rng_seed = 0;

  void validate() const;

  SearchConfig validated() const {
    validate();
    return *this;
  }
};

}  // namespace cmcts
