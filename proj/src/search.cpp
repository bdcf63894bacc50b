#include "cmcts/search.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace cmcts {

double uct_value(const ActionStat& stat, double node_visit_count,
                 double exploration_c) {
  if (!(stat.visit_count > 0.0)) {
    throw std::domain_error("unvisited action has infinite priority");
  }
  return stat.value_estimate +
         exploration_c *
             std::sqrt(2.0 * std::log(node_visit_count) / stat.visit_count);
}

std::size_t select_child_index(const TreeNode& node, int agent,
                               const SearchConfig& config) {
  const auto& stats = node.per_agent_stats.at(agent);
  if (stats.empty()) throw std::logic_error("node not expanded");
  const double n = static_cast<double>(node.node_visit_count);
  std::size_t best = 0;
  double best_value = uct_value(stats[0], n, config.uct_exploration_c);
  for (std::size_t i = 1; i < stats.size(); ++i) {
    const double v = uct_value(stats[i], n, config.uct_exploration_c);
    if (v > best_value) {
      best = i;
      best_value = v;
    }
  }
  return best;
}

const ActionStat& select_child(const TreeNode& node, int agent,
                               const SearchConfig& config) {
  return node.per_agent_stats.at(agent)[select_child_index(node, agent, config)];
}

bool should_widen(const TreeNode& node, int agent, const SearchConfig& config) {
  const auto& stats = node.per_agent_stats.at(agent);
  const double grown = std::floor(
      config.pw_coefficient *
      std::pow(static_cast<double>(node.node_visit_count), config.pw_exponent));
  const double bound =
      std::max(static_cast<double>(config.initial_action_count), grown);
  return static_cast<double>(stats.size()) < bound;
}

ContinuousAction sample_action(std::span<const ActionBounds> bounds,
                               RandomStream& rng) {
  ContinuousAction action;
  action.values.reserve(bounds.size());
  for (const ActionBounds& b : bounds) {
    if (b.lo > b.hi) throw std::invalid_argument("inverted bounds");
    action.values.push_back(rng.uniform(b.lo, b.hi));
  }
  return action;
}

std::vector<double> simulate(const Environment& env, const State& state,
                             const SearchConfig& config, RandomStream& rng,
                             Trajectory* trace) {
  const EnvironmentSpec& spec = env.spec();
  std::vector<double> total(spec.agent_count, 0.0);
  State current = state;
  double gamma_t = 1.0;
  while (!current.terminal && current.depth < config.planning_horizon) {
    JointAction action(spec.agent_count);
    for (ContinuousAction& a : action) {
      a = sample_action(spec.action_bounds, rng);
    }
    StepResult step = env.step(current, action, rng);
    for (int agent = 0; agent < spec.agent_count; ++agent) {
      total[agent] += gamma_t * step.rewards[agent];
    }
    if (trace) {
      trace->steps.push_back({current, std::move(action), step.rewards});
    }
    current = std::move(step.next_state);
    gamma_t *= config.discount_factor;
  }
  return total;
}

double similarity(const ContinuousAction& a, const ContinuousAction& b,
                  double bandwidth, std::span<const ActionBounds> bounds) {
  if (a.values.size() != b.values.size() || a.values.size() != bounds.size()) {
    throw std::invalid_argument("action dimension mismatch");
  }
  double dist_sq = 0.0;
  for (std::size_t d = 0; d < a.values.size(); ++d) {
    const double span = bounds[d].hi - bounds[d].lo;
    if (span <= 0.0) continue;
    const double diff = (a.values[d] - b.values[d]) / span;
    dist_sq += diff * diff;
  }
  return std::exp(-bandwidth * dist_sq);
}

void similarity_update(TreeNode& node, int agent, std::size_t source_index,
                       double return_value, const SearchConfig& config,
                       std::span<const ActionBounds> bounds) {
  if (config.similarity_floor >= 1.0) return;  // disabled
  auto& stats = node.per_agent_stats.at(agent);
  if (source_index >= stats.size()) throw std::logic_error("corrupt path");
  const ContinuousAction source = stats[source_index].action;
  for (std::size_t j = 0; j < stats.size(); ++j) {
    if (j == source_index) continue;
    const double w =
        similarity(source, stats[j].action, config.kernel_bandwidth, bounds);
    if (w < config.similarity_floor) continue;
    ActionStat& stat = stats[j];
    stat.visit_count += w;
    stat.value_estimate +=
        (w / stat.visit_count) * (return_value - stat.value_estimate);
  }
}

void backpropagate(std::span<PathEntry> path,
                   const std::vector<double>& leaf_return,
                   const SearchConfig& config,
                   std::span<const ActionBounds> bounds, double direct_weight) {
  if (path.empty()) throw std::invalid_argument("empty path");
  std::vector<double> to_go = leaf_return;
  for (auto it = path.rbegin(); it != path.rend(); ++it) {
    PathEntry& entry = *it;
    entry.node->node_visit_count += 1;
    for (std::size_t agent = 0; agent < to_go.size(); ++agent) {
      to_go[agent] = entry.step_rewards[agent] +
                     config.discount_factor * to_go[agent];
      auto& stats = entry.node->per_agent_stats[agent];
      if (entry.chosen[agent] >= stats.size()) {
        throw std::logic_error("corrupt path");
      }
      ActionStat& stat = stats[entry.chosen[agent]];
      stat.visit_count += direct_weight;
      stat.value_estimate += (direct_weight / stat.visit_count) *
                             (to_go[agent] - stat.value_estimate);
      stat.raw_visit_count += 1;
      similarity_update(*entry.node, static_cast<int>(agent),
                        entry.chosen[agent], to_go[agent], config, bounds);
    }
  }
}

MctsSearch::MctsSearch(const Environment& env, State root_state,
                       SearchConfig config, int tree_index,
                       SimulationFn simulation)
    : env_(env),
      config_(config.validated()),
      tree_index_(tree_index),
      expand_stream_(derive_stream(
          config.rng_seed,
          {{"tree", static_cast<std::uint64_t>(tree_index)}, {"expand", 0}})),
      simulation_(std::move(simulation)) {
  if (root_state.terminal || root_state.depth >= config_.planning_horizon) {
    throw std::invalid_argument("nothing to plan");
  }
  root_ = std::make_unique<TreeNode>(std::move(root_state),
                                     env_.spec().agent_count);
}

std::size_t MctsSearch::choose_action_index(
    TreeNode& node, int agent, std::vector<WidenRecord>& widened) {
  auto& stats = node.per_agent_stats[agent];
  if (should_widen(node, agent, config_)) {
    const std::size_t first_new = stats.size();
    // A node's first expansion seeds the initial action set; afterwards
    // widening admits one action at a time.
    const int count = stats.empty() ? config_.initial_action_count : 1;
    for (int i = 0; i < count; ++i) {
      stats.push_back(
          ActionStat{sample_action(env_.spec().action_bounds, expand_stream_)});
    }
    widened.push_back({&node, agent, static_cast<std::size_t>(count)});
    return first_new;
  }
  for (std::size_t i = 0; i < stats.size(); ++i) {
    if (stats[i].raw_visit_count == 0) return i;  // untried actions first
  }
  return select_child_index(node, agent, config_);
}

Trajectory MctsSearch::step_iteration() {
  const EnvironmentSpec& spec = env_.spec();
  const int agents = spec.agent_count;
  const std::uint64_t iteration_id = iteration_++;

  Trajectory trajectory;
  std::vector<PathEntry> path;
  std::vector<WidenRecord> widened;
  TreeNode* created_parent = nullptr;
  std::vector<std::size_t> created_key;
  TreeNode* leaf = nullptr;

  TreeNode* node = root_.get();
  while (true) {
    PathEntry entry;
    entry.node = node;
    entry.chosen.resize(agents);
    for (int agent = 0; agent < agents; ++agent) {
      entry.chosen[agent] = choose_action_index(*node, agent, widened);
    }
    JointAction action(agents);
    for (int agent = 0; agent < agents; ++agent) {
      action[agent] = node->per_agent_stats[agent][entry.chosen[agent]].action;
    }
    StepResult step = env_.step(node->state, action, expand_stream_);
    entry.step_rewards = step.rewards;
    trajectory.steps.push_back({node->state, std::move(action), step.rewards});

    const auto child_it = node->children.find(entry.chosen);
    const bool expanding = child_it == node->children.end();
    path.push_back(std::move(entry));
    if (expanding) {
      auto child =
          std::make_unique<TreeNode>(std::move(step.next_state), agents);
      leaf = child.get();
      created_parent = node;
      created_key = path.back().chosen;
      node->children.emplace(created_key, std::move(child));
      break;
    }
    node = child_it->second.get();
    if (node->state.terminal || node->state.depth >= config_.planning_horizon) {
      leaf = node;
      break;
    }
  }

  std::vector<double> leaf_return(agents, 0.0);
  bool aborted = false;
  if (!leaf->state.terminal && leaf->state.depth < config_.planning_horizon) {
    try {
      if (simulation_) {
        const SimulationContext context{config_.rng_seed, tree_index_,
                                        iteration_id};
        leaf_return = simulation_(env_, leaf->state, config_, context);
      } else {
        RandomStream rollout = derive_stream(
            config_.rng_seed,
            {{"tree", static_cast<std::uint64_t>(tree_index_)},
             {"iter", iteration_id},
             {"rollout", 0}});
        leaf_return =
            simulate(env_, leaf->state, config_, rollout, &trajectory);
      }
    } catch (const IterationAborted&) {
      aborted = true;
    }
  }

  if (aborted) {
    // The iteration leaves no trace: drop the created child and any actions
    // admitted this pass.
    if (created_parent != nullptr) created_parent->children.erase(created_key);
    for (auto it = widened.rbegin(); it != widened.rend(); ++it) {
      auto& stats = it->node->per_agent_stats[it->agent];
      stats.erase(stats.end() - static_cast<std::ptrdiff_t>(it->added),
                  stats.end());
    }
    ++aborted_;
    return Trajectory{};
  }

  leaf->node_visit_count += 1;
  backpropagate(path, leaf_return, config_, spec.action_bounds,
                direct_weight_);
  ++completed_;

  trajectory.return_value = leaf_return;
  for (auto it = path.rbegin(); it != path.rend(); ++it) {
    for (int agent = 0; agent < agents; ++agent) {
      trajectory.return_value[agent] =
          it->step_rewards[agent] +
          config_.discount_factor * trajectory.return_value[agent];
    }
  }
  return trajectory;
}

SearchResult MctsSearch::run() {
  for (std::uint64_t i = 0; i < config_.iteration_budget; ++i) {
    step_iteration();
  }
  SearchResult result;
  result.best_indices = best_root_indices();
  result.best_action = best_joint_action();
  result.completed_iterations = completed_;
  result.aborted_iterations = aborted_;
  return result;
}

std::vector<std::size_t> MctsSearch::best_root_indices() const {
  const int agents = env_.spec().agent_count;
  std::vector<std::size_t> best(agents);
  for (int agent = 0; agent < agents; ++agent) {
    const auto& stats = root_->per_agent_stats[agent];
    bool found = false;
    double best_value = 0.0;
    for (std::size_t i = 0; i < stats.size(); ++i) {
      if (stats[i].raw_visit_count == 0) continue;
      if (!found || stats[i].value_estimate > best_value) {
        best[agent] = i;
        best_value = stats[i].value_estimate;
        found = true;
      }
    }
    if (!found) throw std::runtime_error("no explored root action");
  }
  return best;
}

JointAction MctsSearch::best_joint_action() const {
  const std::vector<std::size_t> indices = best_root_indices();
  JointAction action(indices.size());
  for (std::size_t agent = 0; agent < indices.size(); ++agent) {
    action[agent] = root_->per_agent_stats[agent][indices[agent]].action;
  }
  return action;
}

SearchOutcome run_search(const Environment& env, const State& root_state,
                         const SearchConfig& config, int tree_index,
                         SimulationFn simulation) {
  MctsSearch search(env, root_state, config, tree_index,
                    std::move(simulation));
  SearchOutcome outcome;
  outcome.result = search.run();
  outcome.best_action = outcome.result.best_action;
  outcome.root = search.release_root();
  return outcome;
}

}  // namespace cmcts
