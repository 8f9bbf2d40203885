// Library usage walkthrough: generate a bi-objective TSP instance, run the
// optimizer and both baselines at a matched budget, and report hypervolume
// ratios against the standardized Bi-TSP-20 frame.

#include <cstdio>

#include "dnl/engine.hpp"
#include "dnl/pareto.hpp"
#include "dnl/problems.hpp"

int main() {
  const dnl::TspProblem problem(dnl::gen_tsp(20, 2, 42));
  const dnl::HvFrame frame = dnl::paper_frame("bitsp20");

  dnl::RunConfig cfg = dnl::default_config(problem, dnl::Algo::dnl);
  cfg.seed = 1;
  const dnl::RunResult tuned = dnl::run_dnl(problem, cfg);

  dnl::RunConfig baseline = cfg;
  baseline.algo = dnl::Algo::random_search;
  baseline.budget_override = tuned.evals;
  const dnl::RunResult random = dnl::run_random(problem, baseline);

  dnl::RunConfig ws = cfg;
  ws.algo = dnl::Algo::ws_local;
  ws.budget_override = tuned.evals;
  const dnl::RunResult climber = dnl::run_ws_local(problem, ws);

  std::printf("%-10s %10s %6s %10s\n", "algo", "hv_ratio", "nds", "evals");
  std::printf("%-10s %10.4f %6d %10ld\n", "dnl", dnl::hv_ratio(tuned.archive.front(), frame),
              dnl::nds_count(tuned.archive), tuned.evals);
  std::printf("%-10s %10.4f %6d %10ld\n", "random", dnl::hv_ratio(random.archive.front(), frame),
              dnl::nds_count(random.archive), random.evals);
  std::printf("%-10s %10.4f %6d %10ld\n", "ws-2opt", dnl::hv_ratio(climber.archive.front(), frame),
              dnl::nds_count(climber.archive), climber.evals);
  return 0;
}
