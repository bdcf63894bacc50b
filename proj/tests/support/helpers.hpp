#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "cmcts/environment.hpp"
#include "cmcts/search.hpp"
#include "cmcts/tree.hpp"

namespace cmcts::testing {

// Constant per-step reward for every agent until the horizon. Deterministic;
// state is a bare step counter.
class ConstantRewardWorld : public Environment {
 public:
  ConstantRewardWorld(int agents, int horizon, double reward = 1.0)
      : reward_(reward) {
    spec_.name = "constant";
    spec_.agent_count = agents;
    spec_.action_dimension = 1;
    spec_.action_bounds = {{0.0, 1.0}};
    spec_.horizon = horizon;
  }

  const EnvironmentSpec& spec() const override { return spec_; }

  State initial_state() const override {
    State s;
    s.values = {0.0};
    return s;
  }

  StepResult step(const State& state, const JointAction&,
                  RandomStream&) const override {
    StepResult r;
    r.next_state = state;
    r.next_state.depth = state.depth + 1;
    r.next_state.terminal = r.next_state.depth >= spec_.horizon;
    r.rewards.assign(spec_.agent_count, reward_);
    r.terminal = r.next_state.terminal;
    return r;
  }

 private:
  EnvironmentSpec spec_;
  double reward_;
};

// One-step bandit with reward equal to the scalar action on [0, 1]; the
// optimum is a = 1.
class LinearRewardWorld : public Environment {
 public:
  LinearRewardWorld() {
    spec_.name = "linear";
    spec_.agent_count = 1;
    spec_.action_dimension = 1;
    spec_.action_bounds = {{0.0, 1.0}};
    spec_.horizon = 1;
  }

  const EnvironmentSpec& spec() const override { return spec_; }

  State initial_state() const override {
    State s;
    s.values = {0.0};
    return s;
  }

  StepResult step(const State& state, const JointAction& action,
                  RandomStream&) const override {
    StepResult r;
    r.next_state.values = {action.at(0).values.at(0)};
    r.next_state.depth = state.depth + 1;
    r.next_state.terminal = true;
    r.rewards = {action.at(0).values.at(0)};
    r.terminal = true;
    return r;
  }

 private:
  EnvironmentSpec spec_;
};

inline bool stats_equal(const ActionStat& a, const ActionStat& b) {
  return a.action.values == b.action.values && a.visit_count == b.visit_count &&
         a.value_estimate == b.value_estimate &&
         a.raw_visit_count == b.raw_visit_count;
}

// Bit-exact structural equality of two trees.
inline bool trees_equal(const TreeNode& a, const TreeNode& b) {
  if (a.node_visit_count != b.node_visit_count) return false;
  if (a.state.values != b.state.values || a.state.depth != b.state.depth ||
      a.state.terminal != b.state.terminal) {
    return false;
  }
  if (a.per_agent_stats.size() != b.per_agent_stats.size()) return false;
  for (std::size_t agent = 0; agent < a.per_agent_stats.size(); ++agent) {
    const auto& sa = a.per_agent_stats[agent];
    const auto& sb = b.per_agent_stats[agent];
    if (sa.size() != sb.size()) return false;
    for (std::size_t i = 0; i < sa.size(); ++i) {
      if (!stats_equal(sa[i], sb[i])) return false;
    }
  }
  if (a.children.size() != b.children.size()) return false;
  auto ita = a.children.begin();
  auto itb = b.children.begin();
  for (; ita != a.children.end(); ++ita, ++itb) {
    if (ita->first != itb->first) return false;
    if (!trees_equal(*ita->second, *itb->second)) return false;
  }
  return true;
}

// Progressive-widening bound check over a whole tree.
inline bool pw_bound_holds(const TreeNode& node, const SearchConfig& config) {
  const double grown =
      std::floor(config.pw_coefficient *
                 std::pow(static_cast<double>(node.node_visit_count),
                          config.pw_exponent));
  const double bound =
      std::max(static_cast<double>(config.initial_action_count), grown);
  for (const auto& stats : node.per_agent_stats) {
    if (static_cast<double>(stats.size()) > bound) return false;
    if (node.node_visit_count >= 1 && !stats.empty() && stats.size() < 1) {
      return false;
    }
  }
  for (const auto& [key, child] : node.children) {
    if (!pw_bound_holds(*child, config)) return false;
  }
  return true;
}

}  // namespace cmcts::testing
