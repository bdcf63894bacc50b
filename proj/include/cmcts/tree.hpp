#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <vector>

#include "cmcts/action.hpp"
#include "cmcts/environment.hpp"

namespace cmcts {

// Per-action statistics at one node for one agent. visit_count carries
// fractional similarity weight on top of the direct updates counted by
// raw_visit_count, so visit_count >= raw_visit_count always.
struct ActionStat {
  ContinuousAction action;
  double visit_count = 0.0;
  double value_estimate = 0.0;
  std::uint64_t raw_visit_count = 0;
};

// Search-tree node. Children are keyed by the per-agent indices of the
// chosen action stats (the joint-action identifier). Not safe for concurrent
// mutation; each tree is owned by exactly one execution context.
struct TreeNode {
  State state;
  std::vector<std::vector<ActionStat>> per_agent_stats;  // [agent][action]
  std::map<std::vector<std::size_t>, std::unique_ptr<TreeNode>> children;
  std::uint64_t node_visit_count = 0;

  explicit TreeNode(State s, int agent_count)
      : state(std::move(s)), per_agent_stats(agent_count) {}
};

struct TrajectoryStep {
  State state;  // state the action was taken from
  JointAction action;
  std::vector<double> rewards;  // one per agent
};

// The (state, joint action, reward) record of one search iteration, tree
// steps first, then any simulated steps.
struct Trajectory {
  std::vector<TrajectoryStep> steps;
  std::vector<double> return_value;  // per agent, as backpropagated to the root

  // Discounted sum of the recorded step rewards, per agent.
  std::vector<double> recompute_return(double discount_factor) const;
};

}  // namespace cmcts
