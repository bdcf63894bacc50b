#include "cmcts/tree.hpp"

namespace cmcts {

std::vector<double> Trajectory::recompute_return(double discount_factor) const {
  if (steps.empty()) return return_value.empty() ? std::vector<double>{} :
                            std::vector<double>(return_value.size(), 0.0);
  std::vector<double> total(steps.front().rewards.size(), 0.0);
  double gamma_t = 1.0;
  for (const TrajectoryStep& step : steps) {
    for (std::size_t agent = 0; agent < total.size(); ++agent) {
      total[agent] += gamma_t * step.rewards[agent];
    }
    gamma_t *= discount_factor;
  }
  return total;
}

}  // namespace cmcts
