#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cmcts/strategies.hpp"
#include "support/helpers.hpp"

using namespace cmcts;
using cmcts::testing::ConstantRewardWorld;
using cmcts::testing::LinearRewardWorld;
using cmcts::testing::trees_equal;

namespace {

// Throws from every step taken beyond the root's children, which makes all
// rollouts fail while descent and expansion still work.
class FailingRolloutWorld : public ConstantRewardWorld {
 public:
  FailingRolloutWorld() : ConstantRewardWorld(1, 5) {}
  StepResult step(const State& state, const JointAction& action,
                  RandomStream& rng) const override {
    if (state.depth >= 1) throw std::runtime_error("injected failure");
    return ConstantRewardWorld::step(state, action, rng);
  }
};

RootSummary make_summary(int tree_id,
                         std::initializer_list<std::pair<double, double>>
                             action_and_value,
                         double visits = 1.0) {
  RootSummary summary;
  summary.tree_id = tree_id;
  summary.per_agent.resize(1);
  for (const auto& [a, q] : action_and_value) {
    ActionStat stat;
    stat.action.values = {a};
    stat.value_estimate = q;
    stat.visit_count = visits;
    stat.raw_visit_count = 1;
    summary.per_agent[0].push_back(stat);
  }
  return summary;
}

SearchConfig quiet_config() {
  SearchConfig c;
  c.similarity_floor = 1e-4;
  c.kernel_bandwidth = 10.0;
  return c;
}

const std::vector<ActionBounds> kUnitBounds{{0.0, 1.0}};

}  // namespace

TEST_CASE("strategy names round-trip") {
  for (StrategyKind kind :
       {StrategyKind::kSingle, StrategyKind::kLeafMean, StrategyKind::kLeafMax,
        StrategyKind::kRootMerge, StrategyKind::kRootVote}) {
    CHECK(strategy_from_string(to_string(kind)) == kind);
  }
  CHECK_THROWS_AS(strategy_from_string("bogus"), std::invalid_argument);
}

TEST_CASE("strategy config validation") {
  StrategyConfig c;
  CHECK_NOTHROW(c.validate());
  c.kind = StrategyKind::kSingle;
  c.worker_count = 2;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c.kind = StrategyKind::kRootVote;
  CHECK_NOTHROW(c.validate());
  c.worker_count = 0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
}

TEST_CASE("leaf aggregation arithmetic") {
  SUBCASE("worker rewards {1, 3}: mean 2, max 3") {
    const std::vector<std::vector<double>> rewards{{1.0}, {3.0}};
    CHECK(aggregate_leaf_rewards(rewards, LeafAggregation::kMean) ==
          std::vector<double>{2.0});
    CHECK(aggregate_leaf_rewards(rewards, LeafAggregation::kMax) ==
          std::vector<double>{3.0});
  }

  SUBCASE("max is taken per agent across workers") {
    const std::vector<std::vector<double>> rewards{{1.0, 5.0}, {3.0, 2.0}};
    CHECK(aggregate_leaf_rewards(rewards, LeafAggregation::kMax) ==
          std::vector<double>{3.0, 5.0});
    CHECK(aggregate_leaf_rewards(rewards, LeafAggregation::kMean) ==
          std::vector<double>{2.0, 3.5});
  }

  SUBCASE("mean never exceeds max") {
    RandomStream rng(31);
    for (int trial = 0; trial < 500; ++trial) {
      const int workers = 1 + static_cast<int>(rng.next_double() * 8);
      const int agents = 1 + static_cast<int>(rng.next_double() * 3);
      std::vector<std::vector<double>> rewards(workers,
                                               std::vector<double>(agents));
      for (auto& row : rewards) {
        for (double& v : row) v = rng.uniform(-20.0, 20.0);
      }
      const auto mean_agg =
          aggregate_leaf_rewards(rewards, LeafAggregation::kMean);
      const auto max_agg =
          aggregate_leaf_rewards(rewards, LeafAggregation::kMax);
      for (int a = 0; a < agents; ++a) {
        CHECK(mean_agg[a] <= max_agg[a] + 1e-12);
      }
    }
  }

  SUBCASE("no workers is an error") {
    CHECK_THROWS_AS(aggregate_leaf_rewards({}, LeafAggregation::kMean),
                    std::invalid_argument);
  }
}

TEST_CASE("leaf parallelization with one worker matches the single search") {
  ConstantRewardWorld world(2, 4);
  SearchConfig config = quiet_config();
  config.planning_horizon = 4;
  config.iteration_budget = 150;
  config.rng_seed = 5;

  MctsSearch plain(world, world.initial_state(), config);
  plain.run();

  for (LeafAggregation agg : {LeafAggregation::kMean, LeafAggregation::kMax}) {
    MctsSearch leaf(world, world.initial_state(), config, 0,
                    make_leaf_parallel_simulation(agg, 1, nullptr));
    leaf.run();
    CHECK(trees_equal(plain.root(), leaf.root()));
    CHECK(plain.best_joint_action() == leaf.best_joint_action());
  }
}

TEST_CASE("deterministic rollouts make mean, max and single coincide") {
  // Constant rewards: every worker's rollout sums to the same value.
  ConstantRewardWorld world(1, 4);
  SearchConfig config = quiet_config();
  config.planning_horizon = 4;
  config.iteration_budget = 120;
  config.rng_seed = 21;

  MctsSearch plain(world, world.initial_state(), config);
  plain.run();
  auto pool = std::make_shared<WorkerPool>(4);
  for (LeafAggregation agg : {LeafAggregation::kMean, LeafAggregation::kMax}) {
    MctsSearch leaf(world, world.initial_state(), config, 0,
                    make_leaf_parallel_simulation(agg, 4, pool));
    leaf.run();
    CHECK(trees_equal(plain.root(), leaf.root()));
  }
}

TEST_CASE("worker failure aborts iterations and leaves no tree residue") {
  FailingRolloutWorld world;
  SearchConfig config = quiet_config();
  config.planning_horizon = 5;
  config.iteration_budget = 20;
  config.rng_seed = 3;

  auto pool = std::make_shared<WorkerPool>(2);
  MctsSearch search(
      world, world.initial_state(), config, 0,
      make_leaf_parallel_simulation(LeafAggregation::kMean, 2, pool));
  for (int i = 0; i < 20; ++i) search.step_iteration();
  CHECK(search.aborted_iterations() == 20);
  CHECK(search.completed_iterations() == 0);
  CHECK(search.root().node_visit_count == 0);
  CHECK(search.root().per_agent_stats[0].empty());
  CHECK(search.root().children.empty());
  CHECK_THROWS_AS(search.best_root_indices(), std::runtime_error);
}

TEST_CASE("per-worker visit accounting multiplies the direct weight") {
  ConstantRewardWorld world(1, 3);
  SearchConfig config = quiet_config();
  config.similarity_floor = 1.0;
  config.planning_horizon = 3;
  config.iteration_budget = 30;
  config.rng_seed = 13;

  StrategyConfig strategy;
  strategy.kind = StrategyKind::kLeafMean;
  strategy.worker_count = 2;
  strategy.leaf_visit_mode = LeafVisitMode::kPerWorker;

  auto pool = std::make_shared<WorkerPool>(2);
  MctsSearch search(
      world, world.initial_state(), config, 0,
      make_leaf_parallel_simulation(LeafAggregation::kMean, 2, pool));
  search.set_direct_update_weight(2.0);
  search.run();

  double visit_sum = 0.0;
  std::uint64_t raw_sum = 0;
  for (const ActionStat& stat : search.root().per_agent_stats[0]) {
    visit_sum += stat.visit_count;
    raw_sum += stat.raw_visit_count;
  }
  CHECK(visit_sum == 60.0);  // 30 backpropagations, weight 2
  CHECK(raw_sum == 30);      // raw counts the update events
}

TEST_CASE("similarity matrix structure") {
  std::vector<ContinuousAction> actions;
  RandomStream rng(8);
  for (int i = 0; i < 12; ++i) {
    actions.push_back(ContinuousAction{{rng.next_double()}});
  }
  const SimilarityMatrix m = build_similarity_matrix(actions, 5.0, kUnitBounds);
  REQUIRE(m.size == actions.size());
  for (std::size_t i = 0; i < m.size; ++i) {
    CHECK(m.at(i, i) == 1.0);
    for (std::size_t j = 0; j < m.size; ++j) {
      CHECK(m.at(i, j) == m.at(j, i));
      CHECK(m.at(i, j) > 0.0);
      CHECK(m.at(i, j) <= 1.0);
    }
  }
}

TEST_CASE("similarity merge") {
  SearchConfig config = quiet_config();

  SUBCASE("a single pooled action is returned unchanged") {
    const std::vector<RootSummary> summaries{make_summary(0, {{0.4, 0.9}})};
    CHECK(similarity_merge(summaries, 0, config, kUnitBounds).values ==
          std::vector<double>{0.4});
  }

  SUBCASE("coincident actions blend to the batch mean, first wins the tie") {
    // (1*0 + 1*2) / 2 = 1 on both entries.
    const std::vector<RootSummary> summaries{make_summary(0, {{0.5, 0.0}}),
                                             make_summary(1, {{0.5, 2.0}})};
    const ContinuousAction merged =
        similarity_merge(summaries, 0, config, kUnitBounds);
    CHECK(merged.values == std::vector<double>{0.5});
  }

  SUBCASE("far-apart pool reduces to argmax Q") {
    config.kernel_bandwidth = 1e9;  // cross-similarities below the floor
    const std::vector<RootSummary> summaries{make_summary(0, {{0.1, 0.3}}),
                                             make_summary(1, {{0.9, 0.7}})};
    CHECK(similarity_merge(summaries, 0, config, kUnitBounds).values ==
          std::vector<double>{0.9});
  }

  SUBCASE("an empty pool is an error") {
    std::vector<RootSummary> summaries{make_summary(0, {})};
    CHECK_THROWS_AS(similarity_merge(summaries, 0, config, kUnitBounds),
                    std::runtime_error);
  }

  SUBCASE("near neighbours outvote a lone higher value") {
    // Two trees agree on ~0.3 with Q = 1.0; one tree found 0.9 with Q = 1.1.
    // The merged value around 0.3 stays ~1.0 while 0.9 keeps 1.1, so merge
    // still picks the loner; this documents merge vs vote behaviour.
    const std::vector<RootSummary> summaries{make_summary(0, {{0.3, 1.0}}),
                                             make_summary(1, {{0.3, 1.0}}),
                                             make_summary(2, {{0.9, 1.1}})};
    config.kernel_bandwidth = 1e6;
    CHECK(similarity_merge(summaries, 0, config, kUnitBounds).values ==
          std::vector<double>{0.9});
  }
}

TEST_CASE("similarity vote") {
  SearchConfig config = quiet_config();

  SUBCASE("one tree votes for its own best action") {
    const std::vector<RootSummary> summaries{
        make_summary(0, {{0.2, 0.5}, {0.8, 0.9}})};
    CHECK(similarity_vote(summaries, 0, config, kUnitBounds).values ==
          std::vector<double>{0.8});
  }

  SUBCASE("two coincident votes beat one distant higher value") {
    config.kernel_bandwidth = 1e6;
    const std::vector<RootSummary> summaries{make_summary(0, {{0.2, 1.0}}),
                                             make_summary(1, {{0.2, 1.0}}),
                                             make_summary(2, {{0.9, 1.5}})};
    // Independent 3x3 oracle: scores = S * V.
    const std::vector<ContinuousAction> submitted{
        {{0.2}}, {{0.2}}, {{0.9}}};
    const SimilarityMatrix s =
        build_similarity_matrix(submitted, config.kernel_bandwidth, kUnitBounds);
    const std::vector<double> votes{1.0, 1.0, 1.5};
    std::vector<double> scores(3, 0.0);
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        const double w = s.at(i, j);
        if (i == j || w >= config.similarity_floor) scores[i] += w * votes[j];
      }
    }
    REQUIRE(scores[0] == doctest::Approx(2.0));
    REQUIRE(scores[2] == doctest::Approx(1.5));
    CHECK(similarity_vote(summaries, 0, config, kUnitBounds).values ==
          std::vector<double>{0.2});
  }

  SUBCASE("unanimous submissions win regardless of bandwidth") {
    for (double bandwidth : {0.1, 10.0, 1e8}) {
      config.kernel_bandwidth = bandwidth;
      const std::vector<RootSummary> summaries{make_summary(0, {{0.6, 0.2}}),
                                               make_summary(1, {{0.6, 0.4}}),
                                               make_summary(2, {{0.6, 0.1}})};
      CHECK(similarity_vote(summaries, 0, config, kUnitBounds).values ==
            std::vector<double>{0.6});
    }
  }

  SUBCASE("trees without explored actions are skipped; all skipped errors") {
    std::vector<RootSummary> summaries{make_summary(0, {}),
                                       make_summary(1, {{0.3, 0.5}})};
    CHECK(similarity_vote(summaries, 0, config, kUnitBounds).values ==
          std::vector<double>{0.3});
    summaries.pop_back();
    CHECK_THROWS_AS(similarity_vote(summaries, 0, config, kUnitBounds),
                    std::runtime_error);
  }
}

TEST_CASE("merge and vote are order independent") {
  SearchConfig config = quiet_config();
  std::vector<RootSummary> summaries{make_summary(0, {{0.15, 0.8}}),
                                     make_summary(1, {{0.40, 1.2}}),
                                     make_summary(2, {{0.75, 0.3}}),
                                     make_summary(3, {{0.42, 1.1}})};
  const auto merge_base = similarity_merge(summaries, 0, config, kUnitBounds);
  const auto vote_base = similarity_vote(summaries, 0, config, kUnitBounds);

  std::vector<std::size_t> perm{0, 1, 2, 3};
  std::sort(perm.begin(), perm.end());
  do {
    std::vector<RootSummary> shuffled;
    for (const std::size_t i : perm) shuffled.push_back(summaries[i]);
    CHECK(similarity_merge(shuffled, 0, config, kUnitBounds).values ==
          merge_base.values);
    CHECK(similarity_vote(shuffled, 0, config, kUnitBounds).values ==
          vote_base.values);
  } while (std::next_permutation(perm.begin(), perm.end()));
}

TEST_CASE("root parallel search with one worker reproduces the single tree") {
  LinearRewardWorld world;
  SearchConfig config = quiet_config();
  config.planning_horizon = 1;
  config.iteration_budget = 300;
  config.rng_seed = 17;

  MctsSearch single(world, world.initial_state(), config);
  const JointAction single_best = single.run().best_action;

  const RootParallelResult vote = root_parallel_search(
      world, world.initial_state(), config, 1, RootMergeKind::kSimilarityVote);
  CHECK(vote.action == single_best);

  SearchConfig merge_config = config;
  merge_config.kernel_bandwidth = 1e12;  // cross-similarities below the floor
  MctsSearch single_for_merge(world, world.initial_state(), merge_config);
  const JointAction merge_best = single_for_merge.run().best_action;
  const RootParallelResult merge =
      root_parallel_search(world, world.initial_state(), merge_config, 1,
                           RootMergeKind::kSimilarityMerge);
  CHECK(merge.action == merge_best);
}

TEST_CASE("root parallel search is deterministic and collects all trees") {
  LinearRewardWorld world;
  SearchConfig config = quiet_config();
  config.planning_horizon = 1;
  config.iteration_budget = 100;
  config.rng_seed = 23;

  const RootParallelResult a = root_parallel_search(
      world, world.initial_state(), config, 3, RootMergeKind::kSimilarityVote);
  const RootParallelResult b = root_parallel_search(
      world, world.initial_state(), config, 3, RootMergeKind::kSimilarityVote);
  CHECK(a.summaries.size() == 3);
  CHECK(a.failed_trees == 0);
  CHECK(a.action == b.action);
  for (std::size_t k = 0; k < 3; ++k) {
    CHECK(a.summaries[k].tree_id == b.summaries[k].tree_id);
  }
}

TEST_CASE("divided budget splits iterations across trees") {
  LinearRewardWorld world;
  SearchConfig config = quiet_config();
  config.planning_horizon = 1;
  config.iteration_budget = 90;
  config.rng_seed = 29;

  const RootParallelResult result =
      root_parallel_search(world, world.initial_state(), config, 3,
                           RootMergeKind::kSimilarityVote, true);
  // Each tree ran 30 iterations; its root holds at most floor(sqrt(30)) + 1
  // actions, far fewer than a 90-iteration tree would.
  for (const RootSummary& summary : result.summaries) {
    CHECK(summary.per_agent[0].size() <= 6);
  }
}

TEST_CASE("every strategy at worker count one matches single") {
  LinearRewardWorld world;
  SearchConfig config = quiet_config();
  config.planning_horizon = 1;
  config.iteration_budget = 200;
  config.rng_seed = 31;

  StrategyConfig single;
  const JointAction expected =
      plan_joint_action(world, world.initial_state(), config, single);

  for (StrategyKind kind : {StrategyKind::kLeafMean, StrategyKind::kLeafMax,
                            StrategyKind::kRootVote}) {
    StrategyConfig strategy;
    strategy.kind = kind;
    strategy.worker_count = 1;
    CHECK(plan_joint_action(world, world.initial_state(), config, strategy) ==
          expected);
  }

  SearchConfig merge_config = config;
  merge_config.kernel_bandwidth = 1e12;
  const JointAction merge_expected =
      plan_joint_action(world, world.initial_state(), merge_config, single);
  StrategyConfig merge;
  merge.kind = StrategyKind::kRootMerge;
  CHECK(plan_joint_action(world, world.initial_state(), merge_config, merge) ==
        merge_expected);
}
