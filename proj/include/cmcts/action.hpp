#pragma once

#include <vector>

namespace cmcts {

// Closed interval for one action dimension.
struct ActionBounds {
  double lo = 0.0;
  double hi = 0.0;
};

// Fixed-dimension real vector; the atom of the continuous action space.
// Length equals the environment's action dimension, every component inside
// the environment's per-dimension bounds.
struct ContinuousAction {
  std::vector<double> values;

  friend bool operator==(const ContinuousAction&,
                         const ContinuousAction&) = default;
};

// One action per agent, agent index order.
using JointAction = std::vector<ContinuousAction>;

}  // namespace cmcts
