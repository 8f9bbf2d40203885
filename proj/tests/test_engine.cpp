#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>

#include "dnl/engine.hpp"
#include "dnl/problems.hpp"
#include "support/synthetic.hpp"

using namespace dnl;

namespace {

RunConfig tiny_synthetic_config(int iterations, std::uint64_t seed) {
  RunConfig cfg;
  cfg.algo = Algo::dnl;
  cfg.seed = seed;
  cfg.iterations = iterations;
  cfg.patience = 0;  // disabled
  cfg.rounds = 1;    // slow refinement so the learning curve is visible
  cfg.decomposition.window = 3;
  cfg.decomposition.overlap0 = 1;
  cfg.expert.gamma = 1.0 / std::sqrt(5.0);
  return cfg;
}

}  // namespace

TEST_CASE("regret_trace arithmetic") {
  const RegretTrace t = regret_trace({1.0, 3.0, 2.0});
  REQUIRE(t.cumulative == std::vector<double>{2.0, 2.0, 3.0});

  const RegretTrace flat = regret_trace({4.0, 4.0, 4.0});
  REQUIRE(flat.cumulative == std::vector<double>{0.0, 0.0, 0.0});

  REQUIRE_THROWS_AS(regret_trace({}), std::invalid_argument);
}

TEST_CASE("regret_trace cumulative is non-decreasing") {
  Rng rng(3);
  std::vector<double> rewards;
  for (int i = 0; i < 100; ++i) rewards.push_back(rng.uniform(-5.0, 5.0));
  const RegretTrace t = regret_trace(rewards);
  for (std::size_t i = 1; i < t.cumulative.size(); ++i)
    REQUIRE(t.cumulative[i] >= t.cumulative[i - 1]);
}

TEST_CASE("default_config follows the scale table") {
  const TspProblem tsp20(gen_tsp(20, 2, 0));
  RunConfig small = default_config(tsp20, Algo::dnl);
  REQUIRE(small.decomposition.window == 15);
  REQUIRE(small.decomposition.overlap0 == 6);
  REQUIRE(small.iterations == 100);
  REQUIRE(small.rounds == 5);
  REQUIRE(small.patience == 10);
  REQUIRE(small.weight_count == 20);
  REQUIRE(small.expert.temp_decay == 0.98);

  const TspProblem tsp50(gen_tsp(50, 2, 0));
  REQUIRE(default_config(tsp50, Algo::dnl).iterations == 150);
  REQUIRE(default_config(tsp50, Algo::dnl).decomposition.window == 25);

  const TspProblem tsp100(gen_tsp(100, 3, 0));
  RunConfig large = default_config(tsp100, Algo::dnl);
  REQUIRE(large.iterations == 200);
  REQUIRE(large.decomposition.window == 35);
  REQUIRE(large.decomposition.overlap0 == 18);
  REQUIRE(large.patience == 50);
  REQUIRE(large.weight_count == 35);

  const KpProblem kp50(gen_kp(50, 2, 0));
  REQUIRE(default_config(kp50, Algo::dnl).iterations == 100);
  const KpProblem kp200(gen_kp(200, 2, 0));
  REQUIRE(default_config(kp200, Algo::dnl).iterations == 200);

  RunConfig ts = default_config(tsp20, Algo::dnl_ts);
  REQUIRE(ts.expert.variant == ExpertVariant::ts_exp3);
  REQUIRE(ts.expert.temp_decay == 0.995);
}

TEST_CASE("config validation names the offending field") {
  const TspProblem tsp(gen_tsp(20, 2, 0));
  RunConfig cfg = default_config(tsp, Algo::dnl);
  cfg.iterations = 0;
  try {
    run(tsp, cfg);
    FAIL("expected validation error");
  } catch (const std::invalid_argument &e) {
    REQUIRE(std::string(e.what()).find("iters") != std::string::npos);
  }
}

TEST_CASE("run_dnl finds the enumerated optimum of the separable synthetic") {
  const synthetic::SeparableProblem problem(5, 3, 77);
  const double optimum = problem.enumerate_optimum();
  int hits = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const RunResult result = run_dnl(problem, tiny_synthetic_config(500, seed));
    REQUIRE(result.per_weight.size() == 1);
    if (std::abs(result.per_weight[0].best_reward - optimum) < 1e-9) ++hits;
  }
  REQUIRE(hits >= 9);
}

TEST_CASE("run_dnl is deterministic for a fixed seed") {
  const TspProblem problem(gen_tsp(12, 2, 5));
  RunConfig cfg = default_config(problem, Algo::dnl);
  cfg.seed = 9;
  cfg.weight_count = 4;
  cfg.iterations = 15;
  cfg.collect_traces = true;
  const RunResult a = run_dnl(problem, cfg);
  const RunResult b = run_dnl(problem, cfg);
  REQUIRE(a.evals == b.evals);
  REQUIRE(a.archive.front() == b.archive.front());
  for (std::size_t j = 0; j < a.per_weight.size(); ++j) {
    REQUIRE(a.per_weight[j].best.values == b.per_weight[j].best.values);
    REQUIRE(a.per_weight[j].best_reward == b.per_weight[j].best_reward);
    REQUIRE(a.per_weight[j].regret.rewards == b.per_weight[j].regret.rewards);
  }
}

TEST_CASE("parallel execution reproduces the serial result") {
  const TspProblem problem(gen_tsp(12, 2, 6));
  RunConfig cfg = default_config(problem, Algo::dnl);
  cfg.seed = 3;
  cfg.weight_count = 6;
  cfg.iterations = 10;
  const RunResult serial = run_dnl(problem, cfg);
  cfg.jobs = 4;
  const RunResult parallel = run_dnl(problem, cfg);
  REQUIRE(serial.archive.front() == parallel.archive.front());
  REQUIRE(serial.evals == parallel.evals);
}

TEST_CASE("evaluation accounting matches the nominal budget without early stop") {
  const TspProblem problem(gen_tsp(14, 2, 8));
  RunConfig cfg = default_config(problem, Algo::dnl);
  cfg.seed = 1;
  cfg.weight_count = 3;
  cfg.iterations = 12;
  cfg.patience = 0;
  const RunResult result = run_dnl(problem, cfg);
  REQUIRE(result.evals == nominal_budget(problem, cfg));
}

TEST_CASE("early stopping cuts the budget short") {
  const synthetic::SeparableProblem problem(5, 3, 10);
  RunConfig cfg = tiny_synthetic_config(300, 4);
  cfg.patience = 8;
  const RunResult result = run_dnl(problem, cfg);
  REQUIRE(result.per_weight[0].iterations_run < 300);
  REQUIRE(result.evals < nominal_budget(problem, cfg));
}

TEST_CASE("per-weight archives merged preserve the Pareto invariant") {
  const TspProblem problem(gen_tsp(12, 2, 11));
  RunConfig cfg = default_config(problem, Algo::dnl);
  cfg.seed = 2;
  cfg.weight_count = 8;
  cfg.iterations = 20;
  const RunResult result = run_dnl(problem, cfg);
  const auto &entries = result.archive.entries();
  REQUIRE(!entries.empty());
  for (std::size_t i = 0; i < entries.size(); ++i)
    for (std::size_t j = 0; j < entries.size(); ++j) {
      if (i == j) continue;
      REQUIRE(!dominates(entries[i].objectives, entries[j].objectives, Sense::minimize));
    }
}

TEST_CASE("regret becomes sublinear on the separable synthetic") {
  const synthetic::SeparableProblem problem(5, 3, 42);
  RunConfig cfg = tiny_synthetic_config(2000, 1);
  cfg.collect_traces = true;
  const RunResult result = run_dnl(problem, cfg);
  const auto &rewards = result.per_weight[0].regret.rewards;
  REQUIRE(rewards.size() == 2000);
  const double best = *std::max_element(rewards.begin(), rewards.end());
  auto mean_regret = [&](std::size_t lo, std::size_t hi) {
    double total = 0.0;
    for (std::size_t t = lo; t < hi; ++t) total += best - rewards[t];
    return total / static_cast<double>(hi - lo);
  };
  REQUIRE(mean_regret(1500, 2000) <= 0.5 * mean_regret(0, 500));
}

TEST_CASE("run_random respects the budget and archives only feasible solutions") {
  const KpProblem problem(gen_kp(50, 2, 33));
  RunConfig cfg = default_config(problem, Algo::random_search);
  cfg.algo = Algo::random_search;
  cfg.seed = 5;
  cfg.budget_override = 500;
  const RunResult result = run_random(problem, cfg);
  REQUIRE(result.evals == 500);
  for (const auto &entry : result.archive.entries())
    REQUIRE(eval_kp(problem.instance(), entry.solution).second);

  cfg.budget_override = 0;
  REQUIRE(run_random(problem, cfg).archive.empty());
}

TEST_CASE("dnl beats random search on Bi-TSP at matched budget") {
  const TspProblem problem(gen_tsp(20, 2, 100));
  RunConfig cfg = default_config(problem, Algo::dnl);
  cfg.seed = 7;
  cfg.weight_count = 6;
  cfg.iterations = 60;
  const RunResult dnl_result = run_dnl(problem, cfg);

  RunConfig rnd = cfg;
  rnd.algo = Algo::random_search;
  rnd.budget_override = dnl_result.evals;
  const RunResult random_result = run_random(problem, rnd);

  const HvFrame frame = paper_frame("bitsp20");
  REQUIRE(hv_ratio(dnl_result.archive.front(), frame) >
          hv_ratio(random_result.archive.front(), frame));
}

TEST_CASE("ws-2opt reaches the optimal four-city tour for every weight") {
  TspInstance inst;
  inst.n = 4;
  inst.m = 2;
  inst.seed = 0;
  inst.coords = {{{0, 0}, {1, 0}, {1, 1}, {0, 1}}, {{0, 0}, {1, 0}, {1, 1}, {0, 1}}};
  const TspProblem problem(inst);
  RunConfig cfg = default_config(problem, Algo::ws_local);
  cfg.algo = Algo::ws_local;
  cfg.seed = 13;
  cfg.weight_count = 5;
  cfg.budget_override = 500;
  const RunResult result = run_ws_local(problem, cfg);
  for (const auto &pw : result.per_weight)
    REQUIRE_THAT(-pw.best_reward, Catch::Matchers::WithinAbs(4.0, 1e-12));
}

TEST_CASE("ws-2opt matches exhaustive scalarized optima on a tiny knapsack") {
  const KpInstance inst = gen_kp(5, 2, 21, 1.2);
  const KpProblem problem(inst);
  RunConfig cfg = default_config(problem, Algo::ws_local);
  cfg.algo = Algo::ws_local;
  cfg.seed = 2;
  cfg.weight_count = 5;
  cfg.budget_override = 3000;
  const RunResult result = run_ws_local(problem, cfg);

  const auto weights = gen_weights(2, 5);
  REQUIRE(result.per_weight.size() == weights.size());
  for (std::size_t j = 0; j < weights.size(); ++j) {
    double best = -1e18;
    for (int mask = 0; mask < 32; ++mask) {
      Solution x{Domain::binary, std::vector<int>(5, 0)};
      for (int b = 0; b < 5; ++b) x.values[static_cast<std::size_t>(b)] = mask >> b & 1;
      auto [f, feasible] = eval_kp(inst, x);
      if (!feasible) continue;
      best = std::max(best, weighted_sum(f, weights[j]));
    }
    REQUIRE_THAT(result.per_weight[j].best_reward, Catch::Matchers::WithinAbs(best, 1e-12));
  }
}

TEST_CASE("ws-2opt outputs are 2-opt local optimal when budget allows") {
  const TspInstance inst = gen_tsp(10, 2, 31);
  const TspProblem problem(inst);
  RunConfig cfg = default_config(problem, Algo::ws_local);
  cfg.algo = Algo::ws_local;
  cfg.seed = 3;
  cfg.weight_count = 3;
  cfg.budget_override = 3 * 2000;
  const RunResult result = run_ws_local(problem, cfg);

  const auto weights = gen_weights(2, 3);
  for (std::size_t j = 0; j < result.per_weight.size(); ++j) {
    const auto &pw = result.per_weight[j];
    const double base = pw.best_reward;
    for (int lo = 0; lo < 9; ++lo)
      for (int hi = lo + 1; hi < 10; ++hi) {
        if (lo == 0 && hi == 9) continue;
        Solution cand = pw.best;
        std::reverse(cand.values.begin() + lo, cand.values.begin() + hi + 1);
        const double reward =
            to_reward(eval_tsp(inst, cand), weights[j], Scheme::weighted_sum, Sense::minimize);
        REQUIRE(reward <= base + 1e-12);
      }
  }
}

TEST_CASE("coordination trace stays within the dual bounds over a real run") {
  const TspProblem problem(gen_tsp(20, 2, 55));
  RunConfig cfg = default_config(problem, Algo::dnl);
  cfg.seed = 4;
  cfg.weight_count = 2;
  cfg.iterations = 40;
  cfg.patience = 0;
  cfg.collect_traces = true;
  const RunResult result = run_dnl(problem, cfg);
  for (const auto &pw : result.per_weight) {
    REQUIRE(!pw.coordination.empty());
    for (const auto &point : pw.coordination) {
      REQUIRE(point.min_lambda >= cfg.dual.eps);
      REQUIRE(point.max_lambda <= cfg.dual.lambda_max);
      REQUIRE(point.sum_xi >= 0.0);
    }
  }
}

TEST_CASE("tri-objective runs produce a three-dimensional front") {
  const TspProblem problem(gen_tsp(12, 3, 21));
  RunConfig cfg = default_config(problem, Algo::dnl_ts);
  cfg.seed = 1;
  cfg.weight_count = 6;
  cfg.iterations = 15;
  const RunResult result = run_dnl(problem, cfg);
  REQUIRE(result.per_weight.size() >= 6);  // simplex lattice of at least the requested size
  REQUIRE(!result.archive.empty());
  for (const auto &entry : result.archive.entries()) REQUIRE(entry.objectives.size() == 3);
  REQUIRE(hv_ratio(result.archive.front(), paper_frame("tritsp20")) > 0.0);
}

TEST_CASE("dnl-ts differs from dnl only in expert set and temperature decay") {
  const TspProblem problem(gen_tsp(20, 2, 60));
  const RunConfig ucb_cfg = default_config(problem, Algo::dnl);
  const RunConfig ts_cfg = default_config(problem, Algo::dnl_ts);
  REQUIRE(ucb_cfg.iterations == ts_cfg.iterations);
  REQUIRE(ucb_cfg.rounds == ts_cfg.rounds);
  REQUIRE(ucb_cfg.decomposition.window == ts_cfg.decomposition.window);
  REQUIRE(ucb_cfg.expert.eta == ts_cfg.expert.eta);
  REQUIRE(ucb_cfg.expert.temp_decay == 0.98);
  REQUIRE(ts_cfg.expert.temp_decay == 0.995);
  REQUIRE(ts_cfg.expert.variant == ExpertVariant::ts_exp3);
}
