#include "cmcts/environments/toy_world.hpp"

#include <cmath>
#include <stdexcept>

namespace cmcts::envs {

ToyParabolaWorld::ToyParabolaWorld() {
  spec_.name = "toy-parabola";
  spec_.agent_count = 1;
  spec_.action_dimension = 1;
  spec_.action_bounds = {{0.0, 1.0}};
  spec_.horizon = 1;
}

State ToyParabolaWorld::initial_state() const {
  State s;
  s.values = {0.0};
  return s;
}

StepResult ToyParabolaWorld::step(const State& state, const JointAction& action,
                                  RandomStream&) const {
  if (state.terminal) throw std::logic_error("step on terminal state");
  const double a = action.at(0).values.at(0);
  if (a < 0.0 || a > 1.0) throw std::domain_error("action out of bounds");
  StepResult result;
  result.next_state.values = {a};
  result.next_state.depth = state.depth + 1;
  result.next_state.terminal = true;
  result.rewards = {reward(a)};
  result.terminal = true;
  return result;
}

bool ToyParabolaWorld::episode_success(const State& final_state) const {
  return final_state.depth >= 1 &&
         std::abs(final_state.values.at(0) - 0.7) <= 0.05;
}

ToyOptimum toy_world_optimal() { return ToyOptimum{0.7, 1.0}; }

}  // namespace cmcts::envs
