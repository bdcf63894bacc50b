#include "cmcts/strategies.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <future>
#include <stdexcept>
#include <utility>

namespace cmcts {

std::string to_string(StrategyKind kind) {
  switch (kind) {
    case StrategyKind::kSingle: return "single";
    case StrategyKind::kLeafMean: return "leaf_mean";
    case StrategyKind::kLeafMax: return "leaf_max";
    case StrategyKind::kRootMerge: return "root_merge";
    case StrategyKind::kRootVote: return "root_vote";
  }
  throw std::logic_error("bad StrategyKind");
}

StrategyKind strategy_from_string(const std::string& name) {
  if (name == "single") return StrategyKind::kSingle;
  if (name == "leaf_mean") return StrategyKind::kLeafMean;
  if (name == "leaf_max") return StrategyKind::kLeafMax;
  if (name == "root_merge") return StrategyKind::kRootMerge;
  if (name == "root_vote") return StrategyKind::kRootVote;
  throw std::invalid_argument("unknown strategy: " + name);
}

void StrategyConfig::validate() const {
  if (worker_count < 1) {
    throw std::invalid_argument("worker_count must be >= 1");
  }
  if (kind == StrategyKind::kSingle && worker_count != 1) {
    throw std::invalid_argument("single strategy requires worker_count = 1");
  }
}

WorkerPool::WorkerPool(int thread_count) {
  if (thread_count < 1) throw std::invalid_argument("thread_count must be >= 1");
  threads_.reserve(thread_count);
  for (int i = 0; i < thread_count; ++i) {
    threads_.emplace_back([this] { worker_loop(); });
  }
}

WorkerPool::~WorkerPool() {
  {
    std::lock_guard<std::mutex> lock(mutex_);
    stop_ = true;
  }
  work_cv_.notify_all();
  for (std::thread& t : threads_) t.join();
}

void WorkerPool::run_indexed(int count, const std::function<void(int)>& fn) {
  if (count <= 0) return;
  std::unique_lock<std::mutex> lock(mutex_);
  job_ = &fn;
  job_count_ = count;
  next_index_ = 0;
  completed_ = 0;
  first_error_ = nullptr;
  work_cv_.notify_all();
  done_cv_.wait(lock, [this] { return completed_ == job_count_; });
  job_ = nullptr;
  if (first_error_) std::rethrow_exception(first_error_);
}

void WorkerPool::worker_loop() {
  std::unique_lock<std::mutex> lock(mutex_);
  while (true) {
    work_cv_.wait(lock, [this] {
      return stop_ || (job_ != nullptr && next_index_ < job_count_);
    });
    if (stop_) return;
    while (job_ != nullptr && next_index_ < job_count_) {
      const int index = next_index_++;
      const std::function<void(int)>* job = job_;
      lock.unlock();
      std::exception_ptr error;
      try {
        (*job)(index);
      } catch (...) {
        error = std::current_exception();
      }
      lock.lock();
      if (error && !first_error_) first_error_ = error;
      ++completed_;
      if (completed_ == job_count_) done_cv_.notify_all();
    }
  }
}

std::vector<double> aggregate_leaf_rewards(
    const std::vector<std::vector<double>>& per_worker, LeafAggregation agg) {
  if (per_worker.empty()) throw std::invalid_argument("no worker rewards");
  const std::size_t agents = per_worker.front().size();
  for (const auto& r : per_worker) {
    if (r.size() != agents) {
      throw std::invalid_argument("worker reward size mismatch");
    }
  }
  std::vector<double> out(agents, 0.0);
  if (agg == LeafAggregation::kMean) {
    for (const auto& r : per_worker) {
      for (std::size_t a = 0; a < agents; ++a) out[a] += r[a];
    }
    for (double& v : out) v /= static_cast<double>(per_worker.size());
  } else {
    out = per_worker.front();
    for (std::size_t w = 1; w < per_worker.size(); ++w) {
      for (std::size_t a = 0; a < agents; ++a) {
        out[a] = std::max(out[a], per_worker[w][a]);
      }
    }
  }
  return out;
}

std::vector<double> leaf_parallel_simulate(const Environment& env,
                                           const State& state,
                                           const SearchConfig& config,
                                           const SimulationContext& context,
                                           int worker_count,
                                           LeafAggregation aggregation,
                                           WorkerPool* pool) {
  if (worker_count < 1) throw std::invalid_argument("worker_count must be >= 1");
  std::vector<std::vector<double>> results(worker_count);
  const auto run_one = [&](int w) {
    RandomStream rollout = derive_stream(
        context.root_seed,
        {{"tree", static_cast<std::uint64_t>(context.tree_index)},
         {"iter", context.iteration},
         {"rollout", static_cast<std::uint64_t>(w)}});
    results[w] = simulate(env, state, config, rollout);
  };
  try {
    if (worker_count == 1) {
      run_one(0);
    } else if (pool != nullptr) {
      pool->run_indexed(worker_count, run_one);
    } else {
      std::vector<std::future<void>> futures;
      futures.reserve(worker_count);
      for (int w = 0; w < worker_count; ++w) {
        futures.push_back(std::async(std::launch::async, run_one, w));
      }
      for (auto& f : futures) f.get();
    }
  } catch (const std::exception& e) {
    throw IterationAborted(std::string("leaf worker failed: ") + e.what());
  }
  return aggregate_leaf_rewards(results, aggregation);
}

SimulationFn make_leaf_parallel_simulation(LeafAggregation aggregation,
                                           int worker_count,
                                           std::shared_ptr<WorkerPool> pool) {
  return [aggregation, worker_count, pool = std::move(pool)](
             const Environment& env, const State& state,
             const SearchConfig& config, const SimulationContext& context) {
    return leaf_parallel_simulate(env, state, config, context, worker_count,
                                  aggregation, pool.get());
  };
}

RootSummary summarize_root(const TreeNode& root, int tree_id) {
  RootSummary summary;
  summary.tree_id = tree_id;
  summary.per_agent.resize(root.per_agent_stats.size());
  for (std::size_t agent = 0; agent < root.per_agent_stats.size(); ++agent) {
    for (const ActionStat& stat : root.per_agent_stats[agent]) {
      if (stat.raw_visit_count >= 1) summary.per_agent[agent].push_back(stat);
    }
  }
  return summary;
}

void SimilarityMatrix::validate() const {
  assert(values.size() == size * size);
  for (std::size_t i = 0; i < size; ++i) {
    assert(std::abs(at(i, i) - 1.0) == 0.0);
    for (std::size_t j = 0; j < size; ++j) {
      assert(at(i, j) > 0.0 && at(i, j) <= 1.0);
      assert(at(i, j) == at(j, i));
    }
  }
}

SimilarityMatrix build_similarity_matrix(
    const std::vector<ContinuousAction>& actions, double bandwidth,
    std::span<const ActionBounds> bounds) {
  SimilarityMatrix matrix;
  matrix.size = actions.size();
  matrix.values.assign(matrix.size * matrix.size, 1.0);
  for (std::size_t i = 0; i < matrix.size; ++i) {
    for (std::size_t j = i + 1; j < matrix.size; ++j) {
      const double s = similarity(actions[i], actions[j], bandwidth, bounds);
      matrix.values[i * matrix.size + j] = s;
      matrix.values[j * matrix.size + i] = s;
    }
  }
  matrix.validate();
  return matrix;
}

namespace {

struct PooledStat {
  ContinuousAction action;
  double visits = 0.0;
  double value = 0.0;
};

}  // namespace

ContinuousAction similarity_merge(const std::vector<RootSummary>& summaries,
                                  int agent, const SearchConfig& config,
                                  std::span<const ActionBounds> bounds) {
  std::vector<PooledStat> pool;
  for (const RootSummary& summary : summaries) {
    for (const ActionStat& stat : summary.per_agent.at(agent)) {
      pool.push_back({stat.action, stat.visit_count, stat.value_estimate});
    }
  }
  if (pool.empty()) throw std::runtime_error("no explored root action");

  std::vector<ContinuousAction> actions;
  actions.reserve(pool.size());
  for (const PooledStat& p : pool) actions.push_back(p.action);
  const SimilarityMatrix matrix =
      build_similarity_matrix(actions, config.kernel_bandwidth, bounds);

  std::size_t best = 0;
  double best_value = 0.0;
  for (std::size_t i = 0; i < pool.size(); ++i) {
    double visits_sim = pool[i].visits;
    double weighted_value = pool[i].visits * pool[i].value;
    for (std::size_t j = 0; j < pool.size(); ++j) {
      if (j == i) continue;
      const double s = matrix.at(i, j);
      if (s < config.similarity_floor) continue;
      visits_sim += s * pool[j].visits;
      weighted_value += s * pool[j].visits * pool[j].value;
    }
    const double value_sim = weighted_value / visits_sim;
    if (i == 0 || value_sim > best_value) {
      best = i;
      best_value = value_sim;
    }
  }
  return pool[best].action;
}

ContinuousAction similarity_vote(const std::vector<RootSummary>& summaries,
                                 int agent, const SearchConfig& config,
                                 std::span<const ActionBounds> bounds) {
  // Submissions are kept as a multiset: coincident best actions from
  // different trees each cast their own vote.
  std::vector<ContinuousAction> submitted;
  std::vector<double> votes;
  for (const RootSummary& summary : summaries) {
    const auto& stats = summary.per_agent.at(agent);
    if (stats.empty()) continue;  // tree explored nothing for this agent
    std::size_t best = 0;
    for (std::size_t i = 1; i < stats.size(); ++i) {
      if (stats[i].value_estimate > stats[best].value_estimate) best = i;
    }
    submitted.push_back(stats[best].action);
    votes.push_back(stats[best].value_estimate);
  }
  if (submitted.empty()) throw std::runtime_error("no explored root action");

  SimilarityMatrix matrix =
      build_similarity_matrix(submitted, config.kernel_bandwidth, bounds);
  matrix.votes = votes;

  std::size_t best = 0;
  double best_score = 0.0;
  for (std::size_t i = 0; i < submitted.size(); ++i) {
    double score = votes[i];  // unit diagonal
    for (std::size_t j = 0; j < submitted.size(); ++j) {
      if (j == i) continue;
      const double s = matrix.at(i, j);
      if (s < config.similarity_floor) continue;
      score += s * votes[j];
    }
    if (i == 0 || score > best_score) {
      best = i;
      best_score = score;
    }
  }
  return submitted[best];
}

RootParallelResult root_parallel_search(const Environment& env,
                                        const State& root_state,
                                        const SearchConfig& config,
                                        int worker_count, RootMergeKind merge,
                                        bool divided_budget) {
  if (worker_count < 1) throw std::invalid_argument("worker_count must be >= 1");
  SearchConfig tree_config = config;
  if (divided_budget) {
    tree_config.iteration_budget = std::max<std::uint64_t>(
        1, config.iteration_budget / static_cast<std::uint64_t>(worker_count));
  }

  const auto grow_tree = [&](int tree_index) {
    MctsSearch search(env, root_state, tree_config, tree_index);
    search.run();
    return summarize_root(search.root(), tree_index);
  };

  RootParallelResult result;
  if (worker_count == 1) {
    result.summaries.push_back(grow_tree(0));
  } else {
    std::vector<std::future<RootSummary>> futures;
    futures.reserve(worker_count);
    for (int k = 0; k < worker_count; ++k) {
      futures.push_back(std::async(std::launch::async, grow_tree, k));
    }
    for (int k = 0; k < worker_count; ++k) {
      try {
        result.summaries.push_back(futures[k].get());
      } catch (const std::exception& e) {
        ++result.failed_trees;
        result.warnings.push_back("tree " + std::to_string(k) +
                                  " dropped: " + e.what());
      }
    }
  }
  if (result.summaries.empty()) {
    throw std::runtime_error("all root-parallel trees failed");
  }

  const auto& bounds = env.spec().action_bounds;
  const int agents = env.spec().agent_count;
  result.action.resize(agents);
  for (int agent = 0; agent < agents; ++agent) {
    result.action[agent] =
        merge == RootMergeKind::kSimilarityMerge
            ? similarity_merge(result.summaries, agent, config, bounds)
            : similarity_vote(result.summaries, agent, config, bounds);
  }
  return result;
}

JointAction plan_joint_action(const Environment& env, const State& state,
                              const SearchConfig& config,
                              const StrategyConfig& strategy) {
  strategy.validate();
  switch (strategy.kind) {
    case StrategyKind::kSingle: {
      MctsSearch search(env, state, config, 0);
      return search.run().best_action;
    }
    case StrategyKind::kLeafMean:
    case StrategyKind::kLeafMax: {
      const LeafAggregation agg = strategy.kind == StrategyKind::kLeafMean
                                      ? LeafAggregation::kMean
                                      : LeafAggregation::kMax;
      std::shared_ptr<WorkerPool> pool;
      if (strategy.worker_count > 1) {
        pool = std::make_shared<WorkerPool>(strategy.worker_count);
      }
      MctsSearch search(
          env, state, config, 0,
          make_leaf_parallel_simulation(agg, strategy.worker_count, pool));
      if (strategy.leaf_visit_mode == LeafVisitMode::kPerWorker) {
        search.set_direct_update_weight(
            static_cast<double>(strategy.worker_count));
      }
      return search.run().best_action;
    }
    case StrategyKind::kRootMerge:
    case StrategyKind::kRootVote: {
      const RootMergeKind merge = strategy.kind == StrategyKind::kRootMerge
                                      ? RootMergeKind::kSimilarityMerge
                                      : RootMergeKind::kSimilarityVote;
      return root_parallel_search(env, state, config, strategy.worker_count,
                                  merge, strategy.divided_budget)
          .action;
    }
  }
  throw std::logic_error("bad StrategyKind");
}

}  // namespace cmcts
