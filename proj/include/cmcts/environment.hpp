#pragma once

#include <string>
#include <vector>

#include "cmcts/action.hpp"
#include "cmcts/rng.hpp"

namespace cmcts {

// Environment-defined real vector plus bookkeeping. `depth` counts steps
// from the start of the episode; it never exceeds the episode horizon.
struct State {
  std::vector<double> values;
  bool terminal = false;
  int depth = 0;

  friend bool operator==(const State&, const State&) = default;
};

struct EnvironmentSpec {
  std::string name;
  int agent_count = 1;
  int action_dimension = 1;
  std::vector<ActionBounds> action_bounds;  // one entry per dimension
  int horizon = 1;
};

struct StepResult {
  State next_state;
  std::vector<double> rewards;  // one per agent
  bool terminal = false;
};

// Immutable specification plus a pure step function; safe for concurrent use
// by any number of workers. The rng argument is unused by deterministic
// environments.
class Environment {
 public:
  virtual ~Environment() = default;

  virtual const EnvironmentSpec& spec() const = 0;
  virtual State initial_state() const = 0;

  // Pre: action within bounds, state not terminal. Out-of-bounds actions are
  // an error here; callers clamp at sampling time, not in step.
  virtual StepResult step(const State& state, const JointAction& action,
                          RandomStream& rng) const = 0;

  // Episode-level success predicate for the benchmark harness. Default:
  // the episode reached the horizon (no early failure termination).
  virtual bool episode_success(const State& final_state) const {
    return final_state.depth >= spec().horizon;
  }
};

}  // namespace cmcts
