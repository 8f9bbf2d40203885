/**
 * @file engine.hpp
 * @brief Orchestration of the position-wise bandit optimizer across weight
 *        vectors, regret and budget tracking, and the random-search and
 *        weighted-sum hill-climbing baselines.
 *
 * Per-weight runs are independent: each derives its own generator stream
 * (substream seed = seed XOR weight index), owns its expert and dual state,
 * and only meets the others at the final archive merge. Serial and parallel
 * execution therefore produce identical results.
 */

#ifndef DNL_ENGINE_HPP
#define DNL_ENGINE_HPP

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "dnl/coordination.hpp"
#include "dnl/decomposition.hpp"
#include "dnl/experts.hpp"
#include "dnl/localsearch.hpp"
#include "dnl/pareto.hpp"
#include "dnl/prng.hpp"
#include "dnl/problem.hpp"
#include "dnl/scalarization.hpp"

namespace dnl {

enum class Algo { dnl, dnl_ts, random_search, ws_local };

inline std::string algo_name(Algo a) {
  switch (a) {
    case Algo::dnl: return "dnl";
    case Algo::dnl_ts: return "dnl-ts";
    case Algo::random_search: return "random";
    case Algo::ws_local: return "ws-2opt";
  }
  return "?";
}

inline Algo algo_from_name(const std::string &name) {
  if (name == "dnl") return Algo::dnl;
  if (name == "dnl-ts") return Algo::dnl_ts;
  if (name == "random") return Algo::random_search;
  if (name == "ws-2opt") return Algo::ws_local;
  throw std::invalid_argument("unknown algorithm '" + name + "'");
}

/// Identity of the instance a run was executed on; carried through run
/// files so comparisons can reject mismatched inputs.
struct InstanceInfo {
  std::string problem;  // "tsp" | "kp" | "cvrp" | "synthetic"
  int n = 0;
  int m = 0;
  std::uint64_t seed = 0;
  double capacity = 0.0;  // 0 when not applicable

  bool operator==(const InstanceInfo &) const = default;
};

struct DualConfig {
  double alpha0 = 1.0;
  double lambda_max = 10.0;
  double eps = 1e-6;
};

struct DecompositionConfig {
  int window = 15;            // s
  int overlap0 = 6;           // o_0
  double alpha = 0.5;         // power schedule exponent
  double beta = 0.1;          // exponential schedule rate
  OverlapSchedule schedule = OverlapSchedule::power;
  double hybrid_ratio = 0.5;  // k-NN subproblems per sliding window
};

struct RunConfig {
  InstanceInfo instance;
  Algo algo = Algo::dnl;
  std::uint64_t seed = 0;
  int weight_count = 20;
  int iterations = 100;  // T
  int rounds = 5;        // refinement rounds per subproblem; 0 = |S|
  int patience = 10;     // <= 0 disables early stopping
  Scheme scheme = Scheme::weighted_sum;
  std::vector<double> tch_ideal;  // Tchebycheff ideal; empty = origin (minimize only)
  DecompositionConfig decomposition;
  ExpertConfig expert;
  DualConfig dual;
  long budget_override = -1;  // baseline budget; < 0 derives the nominal one
  int jobs = 1;
  bool collect_traces = false;
  bool collect_stats = false;  // keep a per-weight expert-table snapshot

  void validate() const {
    if (iterations < 1) throw std::invalid_argument("config field 'iters' must be >= 1");
    if (weight_count < 2) throw std::invalid_argument("config field 'weights' must be >= 2");
    if (rounds < 0) throw std::invalid_argument("config field 'rounds' must be >= 0");
    if (decomposition.window < 1)
      throw std::invalid_argument("config field 'decomposition.s' must be >= 1");
    if (decomposition.overlap0 < 0)
      throw std::invalid_argument("config field 'decomposition.o0' must be >= 0");
    if (decomposition.alpha < 0.0)
      throw std::invalid_argument("config field 'decomposition.alpha' must be >= 0");
    if (decomposition.beta < 0.0 || decomposition.beta > 1.0)
      throw std::invalid_argument("config field 'decomposition.beta' must lie in [0, 1]");
    if (decomposition.hybrid_ratio < 0.0)
      throw std::invalid_argument("config field 'decomposition.hybrid_ratio' must be >= 0");
    if (jobs < 1) throw std::invalid_argument("config field 'jobs' must be >= 1");
    if (dual.eps <= 0.0 || dual.lambda_max <= dual.eps)
      throw std::invalid_argument("config field 'dual' requires 0 < eps < lambda_max");
    expert.validate();
  }
};

/// Table-backed defaults per problem scale. Small covers 20 cities (TSP,
/// CVRP) or 50 items (KP); medium 50/100; large 100/200.
inline RunConfig default_config(const Problem &problem, Algo algo) {
  RunConfig cfg;
  cfg.algo = algo;
  const int n = problem.size();
  const bool items = problem.domain() == Domain::binary;
  const int scale = n <= (items ? 50 : 20) ? 0 : n <= (items ? 100 : 50) ? 1 : 2;

  constexpr int window[3] = {15, 25, 35};
  constexpr int overlap0[3] = {6, 11, 18};
  constexpr int iterations[3] = {100, 150, 200};
  constexpr int rounds[3] = {5, 10, 20};
  constexpr int patience[3] = {10, 20, 50};
  constexpr int weights3[3] = {20, 25, 35};

  cfg.decomposition.window = window[scale];
  cfg.decomposition.overlap0 = overlap0[scale];
  cfg.iterations = iterations[scale];
  cfg.rounds = rounds[scale];
  cfg.patience = patience[scale];
  cfg.weight_count = problem.num_objectives() == 3 ? weights3[scale] : 20;

  cfg.expert.gamma = 1.0 / std::sqrt(static_cast<double>(n));
  if (algo == Algo::dnl_ts) {
    cfg.expert.variant = ExpertVariant::ts_exp3;
    cfg.expert.temp_decay = 0.995;
    cfg.expert.rho0 = 0.0;
  }
  return cfg;
}

struct RegretTrace {
  std::vector<double> rewards;
  std::vector<double> cumulative;  // running sum of (r* - r_t), r* = max reward
};

/// Cumulative regret against the best reward observed over the sequence.
inline RegretTrace regret_trace(const std::vector<double> &rewards) {
  if (rewards.empty()) throw std::invalid_argument("regret_trace: empty reward sequence");
  RegretTrace trace;
  trace.rewards = rewards;
  const double best = *std::max_element(rewards.begin(), rewards.end());
  double cum = 0.0;
  trace.cumulative.reserve(rewards.size());
  for (double r : rewards) {
    cum += best - r;
    trace.cumulative.push_back(cum);
  }
  return trace;
}

struct CoordinationPoint {
  long t = 0;
  double mean_lambda = 0.0;  // over the overlap set (0 when it is empty)
  double min_lambda = 0.0;   // over all positions
  double max_lambda = 0.0;
  double sum_xi = 0.0;
};

struct PerWeightResult {
  WeightVector w;
  Solution best;
  ObjVec best_f;
  double best_reward = 0.0;
  long evals = 0;
  long iterations_run = 0;
  /// Non-dominated set of every solution evaluated during this weight's
  /// run; merged into the global archive afterwards.
  ParetoArchive discoveries;
  RegretTrace regret;                         // collected when traces are on
  std::vector<CoordinationPoint> coordination;  // likewise
  StatsSnapshot stats;                          // collected when stats are on
};

struct RunResult {
  RunConfig config;
  ParetoArchive archive;
  std::vector<PerWeightResult> per_weight;
  long evals = 0;
  double wall_ms = 0.0;
};

namespace detail {

inline int clamped_window(const RunConfig &cfg, int n) {
  return std::min(cfg.decomposition.window, n);
}

inline int clamped_overlap(const RunConfig &cfg, int s_eff) {
  return std::min(cfg.decomposition.overlap0, s_eff - 1);
}

inline int overlap_at(const RunConfig &cfg, int o0, long t) {
  return cfg.decomposition.schedule == OverlapSchedule::power
             ? overlap_schedule(o0, cfg.decomposition.alpha, t)
             : overlap_schedule_exp(o0, cfg.decomposition.beta, t);
}

inline int knn_extras(const RunConfig &cfg, int window_count) {
  return static_cast<int>(std::lround(cfg.decomposition.hybrid_ratio * window_count));
}

inline std::vector<WeightVector> resolve_weights(const Problem &problem, const RunConfig &cfg) {
  if (problem.num_objectives() == 1) return {WeightVector{{1.0}}};
  return gen_weights(problem.num_objectives(), cfg.weight_count);
}

inline const ObjVec *resolve_ideal(const Problem &problem, const RunConfig &cfg,
                                   ObjVec &storage) {
  if (cfg.scheme != Scheme::tchebycheff) return nullptr;
  if (!cfg.tch_ideal.empty()) {
    storage = cfg.tch_ideal;
  } else {
    if (problem.sense() == Sense::maximize)
      throw std::invalid_argument(
          "config field 'tch_ideal' is required for Tchebycheff on maximization problems");
    storage.assign(static_cast<std::size_t>(problem.num_objectives()), 0.0);
  }
  return &storage;
}

/// Expert-driven action selection over a set of positions, keeping the rest
/// of the solution fixed. Permutations redistribute the cities currently
/// occupying those positions (masking keeps the result a bijection); other
/// domains admit every action. `lambda_of(i)` and `k_of(i)` feed the FTRL
/// coordination penalty.
template <typename LambdaOf, typename KOf>
Solution select_positions(const Problem &problem, const ExpertStats &stats,
                          const ExpertConfig &cfg, Solution x, const std::vector<int> &positions,
                          LambdaOf lambda_of, KOf k_of, Rng &rng) {
  const int actions = problem.num_actions();
  if (problem.domain() == Domain::permutation) {
    std::vector<int> pool;
    pool.reserve(positions.size());
    for (int i : positions) pool.push_back(x.values[static_cast<std::size_t>(i)]);
    std::sort(pool.begin(), pool.end());
    for (int i : positions) {
      const int a = select_action(i, stats, cfg, pool, lambda_of(i), k_of(i), rng);
      x.values[static_cast<std::size_t>(i)] = a;
      pool.erase(std::find(pool.begin(), pool.end(), a));
    }
  } else {
    std::vector<int> mask(static_cast<std::size_t>(actions));
    for (int a = 0; a < actions; ++a) mask[static_cast<std::size_t>(a)] = a;
    for (int i : positions)
      x.values[static_cast<std::size_t>(i)] = select_action(i, stats, cfg, mask, lambda_of(i),
                                                            k_of(i), rng);
  }
  return x;
}

/// Position-wise construction of a full solution from the expert tables.
inline Solution construct_greedy(const Problem &problem, const ExpertStats &stats,
                                 const ExpertConfig &cfg, Rng &rng) {
  Solution x;
  x.domain = problem.domain();
  x.values.resize(static_cast<std::size_t>(problem.size()));
  if (problem.domain() == Domain::permutation) {
    for (int i = 0; i < problem.size(); ++i) x.values[static_cast<std::size_t>(i)] = i;
  }
  std::vector<int> all(static_cast<std::size_t>(problem.size()));
  for (int i = 0; i < problem.size(); ++i) all[static_cast<std::size_t>(i)] = i;
  return select_positions(
      problem, stats, cfg, std::move(x), all, [](int) { return 0.0; }, [](int) { return 1; },
      rng);
}

inline PerWeightResult run_single_weight(const Problem &problem, const RunConfig &cfg,
                                         const WeightVector &w, int weight_index,
                                         const ObjVec *ideal,
                                         const std::vector<std::vector<double>> &index_dist) {
  const int n = problem.size();
  const int actions = problem.num_actions();
  const int s_eff = clamped_window(cfg, n);
  const int o0 = clamped_overlap(cfg, s_eff);

  Rng rng(cfg.seed ^ static_cast<std::uint64_t>(weight_index));
  ExpertStats stats(n, actions, cfg.expert.temp0);
  DualState dual(n, cfg.dual.alpha0, cfg.dual.lambda_max, cfg.dual.eps);

  PerWeightResult result;
  result.w = w;
  result.discoveries = ParetoArchive(problem.sense());

  const EvalFn evaluate = [&](Solution candidate) -> Evaluated {
    candidate = problem.repair(std::move(candidate));
    ObjVec f = problem.evaluate(candidate);
    ++result.evals;
    const double reward = to_reward(f, w, cfg.scheme, problem.sense(), ideal);
    update_experts(stats, candidate, reward, cfg.expert);
    result.discoveries.insert(candidate, f);
    return {std::move(candidate), std::move(f), reward};
  };

  Evaluated current = evaluate(construct_greedy(problem, stats, cfg.expert, rng));
  Evaluated best = current;

  std::vector<double> rewards;
  int since_improvement = 0;
  int knn_center = 0;
  int o_prev = -1;
  Decomposition decomposition;

  for (long t = 1; t <= cfg.iterations; ++t) {
    const int o_t = std::min(overlap_at(cfg, o0, t), s_eff - 1);
    if (o_t != o_prev) {
      decomposition = sliding_window(n, s_eff, o_t);
      o_prev = o_t;
    }

    // Per subproblem: the experts re-select the subproblem's positions and
    // the proposal is played (evaluated, updating every expert table); the
    // incumbent switches to it only on improvement. Zeroth-order refinement
    // then polishes whichever solution survived.
    auto optimize_subproblem = [&](const Subproblem &sub) {
      if (sub.size() < 2) return;
      Solution proposal = select_positions(
          problem, stats, cfg.expert, current.x, sub.indices,
          [&](int i) { return dual.lambda_at(i); },
          [&](int i) { return decomposition.k_of(i); }, rng);
      Evaluated played = evaluate(std::move(proposal));
      if (played.reward > current.reward) current = std::move(played);
      const int rounds = cfg.rounds > 0 ? cfg.rounds : sub.size();
      current = local_refine(std::move(current), sub, actions, rounds, evaluate, rng);
    };
    for (const auto &sub : decomposition.subproblems) optimize_subproblem(sub);
    const int extras = knn_extras(cfg, static_cast<int>(decomposition.subproblems.size()));
    for (int e = 0; e < extras; ++e) {
      optimize_subproblem(knn_subproblem(index_dist, knn_center, s_eff));
      knn_center = (knn_center + 1) % n;
    }

    // Engine-level expert update on the iteration's solution (its objective
    // vector is already cached, so this consumes no budget).
    update_experts(stats, current.x, current.reward, cfg.expert);
    stats.decay_temperature(cfg.expert.temp_decay);

    std::vector<double> xi(static_cast<std::size_t>(n), 0.0);
    double xi_sum = 0.0;
    for (int i : decomposition.overlap_set) {
      xi[static_cast<std::size_t>(i)] = soft_violation(
          i, stats, decomposition.k_of(i), current.x.values[static_cast<std::size_t>(i)]);
      xi_sum += xi[static_cast<std::size_t>(i)];
    }
    dual.update(xi, decomposition.multiplicity, t);

    if (cfg.collect_traces) {
      CoordinationPoint point;
      point.t = t;
      point.sum_xi = xi_sum;
      double lo = dual.lambda().front(), hi = dual.lambda().front(), mean = 0.0;
      for (double l : dual.lambda()) {
        lo = std::min(lo, l);
        hi = std::max(hi, l);
      }
      if (!decomposition.overlap_set.empty()) {
        for (int i : decomposition.overlap_set) mean += dual.lambda_at(i);
        mean /= static_cast<double>(decomposition.overlap_set.size());
      }
      point.mean_lambda = mean;
      point.min_lambda = lo;
      point.max_lambda = hi;
      result.coordination.push_back(point);
    }

    rewards.push_back(current.reward);
    result.iterations_run = t;
    if (current.reward > best.reward) {
      best = current;
      since_improvement = 0;
    } else {
      ++since_improvement;
    }
    if (cfg.patience > 0 && since_improvement >= cfg.patience) break;
  }

  result.best = std::move(best.x);
  result.best_f = std::move(best.f);
  result.best_reward = best.reward;
  if (cfg.collect_traces && !rewards.empty()) result.regret = regret_trace(rewards);
  if (cfg.collect_stats) result.stats = snapshot_top_actions(stats);
  return result;
}

}  // namespace detail

/// Objective evaluations a full optimizer run will spend, derived from the
/// schedule without touching the problem's objectives. Baselines run against
/// this number when no explicit budget is given.
inline long nominal_budget(const Problem &problem, const RunConfig &cfg) {
  const int n = problem.size();
  const int s_eff = detail::clamped_window(cfg, n);
  const int o0 = detail::clamped_overlap(cfg, s_eff);
  const auto weights = detail::resolve_weights(problem, cfg);

  long per_weight = 1;  // initial construction
  for (long t = 1; t <= cfg.iterations; ++t) {
    const int o_t = std::min(detail::overlap_at(cfg, o0, t), s_eff - 1);
    const Decomposition d = sliding_window(n, s_eff, o_t);
    long iter_evals = 0;
    // Each subproblem pass spends one selection-phase evaluation plus its
    // refinement rounds.
    for (const auto &sub : d.subproblems) {
      if (sub.size() < 2) continue;
      iter_evals += 1 + (cfg.rounds > 0 ? cfg.rounds : sub.size());
    }
    const int extras = detail::knn_extras(cfg, static_cast<int>(d.subproblems.size()));
    if (s_eff >= 2)
      iter_evals += static_cast<long>(extras) * (1 + (cfg.rounds > 0 ? cfg.rounds : s_eff));
    per_weight += iter_evals;
  }
  return per_weight * static_cast<long>(weights.size());
}

/// Position-wise bandit optimizer over all weight vectors.
inline RunResult run_dnl(const Problem &problem, RunConfig cfg) {
  cfg.validate();
  const auto start = std::chrono::steady_clock::now();

  ObjVec ideal_storage;
  const ObjVec *ideal = detail::resolve_ideal(problem, cfg, ideal_storage);
  const auto weights = detail::resolve_weights(problem, cfg);
  const auto index_dist = problem.index_distance();

  std::vector<PerWeightResult> per_weight(weights.size());
  const int jobs = std::min<int>(cfg.jobs, static_cast<int>(weights.size()));
  if (jobs <= 1) {
    for (std::size_t j = 0; j < weights.size(); ++j)
      per_weight[j] = detail::run_single_weight(problem, cfg, weights[j], static_cast<int>(j),
                                                ideal, index_dist);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(jobs));
    for (int worker = 0; worker < jobs; ++worker) {
      pool.emplace_back([&]() {
        for (std::size_t j = next.fetch_add(1); j < weights.size(); j = next.fetch_add(1))
          per_weight[j] = detail::run_single_weight(problem, cfg, weights[j],
                                                    static_cast<int>(j), ideal, index_dist);
      });
    }
    for (auto &thread : pool) thread.join();
  }

  RunResult result;
  result.config = cfg;
  result.archive = ParetoArchive(problem.sense());
  for (auto &pw : per_weight) {
    result.archive.merge(pw.discoveries);
    result.evals += pw.evals;
  }
  result.per_weight = std::move(per_weight);
  result.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return result;
}

/// Uniformly random feasible solutions under the matched evaluation budget.
inline RunResult run_random(const Problem &problem, RunConfig cfg) {
  cfg.validate();
  const auto start = std::chrono::steady_clock::now();
  const long budget = cfg.budget_override >= 0 ? cfg.budget_override : nominal_budget(problem, cfg);

  Rng rng(cfg.seed);
  RunResult result;
  result.config = cfg;
  result.archive = ParetoArchive(problem.sense());
  for (long e = 0; e < budget; ++e) {
    Solution x = problem.repair(problem.random_solution(rng));
    ObjVec f = problem.evaluate(x);
    ++result.evals;
    result.archive.insert(std::move(x), std::move(f));
  }
  result.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return result;
}

namespace detail {

/// All full-solution moves for steepest-descent hill climbing.
inline std::vector<Move> full_neighborhood(const Solution &x, int num_actions) {
  std::vector<Move> moves;
  const int n = x.size();
  switch (x.domain) {
    case Domain::permutation:
      for (int i = 0; i < n - 1; ++i)
        for (int j = i + 1; j < n; ++j) {
          if (i == 0 && j == n - 1) continue;  // full reversal = same cyclic tour
          moves.push_back({Move::Kind::two_opt, i, j});
        }
      break;
    case Domain::binary:
      for (int i = 0; i < n; ++i) moves.push_back({Move::Kind::bit_flip, i, 0});
      break;
    case Domain::categorical:
      for (int i = 0; i < n; ++i) {
        const int cur = x.values[static_cast<std::size_t>(i)];
        if (cur > 0) moves.push_back({Move::Kind::category_step, i, cur - 1});
        if (cur + 1 < num_actions) moves.push_back({Move::Kind::category_step, i, cur + 1});
      }
      break;
  }
  return moves;
}

}  // namespace detail

/**
 * @brief Weighted-sum baseline: per weight, random restarts refined by
 *        steepest-descent 2-opt (permutations) or bit flips (binary) until
 *        local optimality, within the shared evaluation budget.
 */
inline RunResult run_ws_local(const Problem &problem, RunConfig cfg) {
  cfg.validate();
  const auto start = std::chrono::steady_clock::now();

  ObjVec ideal_storage;
  const ObjVec *ideal = detail::resolve_ideal(problem, cfg, ideal_storage);
  const auto weights = detail::resolve_weights(problem, cfg);
  const long total_budget =
      cfg.budget_override >= 0 ? cfg.budget_override : nominal_budget(problem, cfg);
  const long budget_per_weight = total_budget / static_cast<long>(weights.size());

  RunResult result;
  result.config = cfg;
  result.archive = ParetoArchive(problem.sense());

  for (std::size_t j = 0; j < weights.size(); ++j) {
    const WeightVector &w = weights[j];
    Rng rng(cfg.seed ^ static_cast<std::uint64_t>(j));
    long used = 0;

    PerWeightResult pw;
    pw.w = w;
    bool have_best = false;

    const auto evaluate = [&](Solution candidate) -> Evaluated {
      candidate = problem.repair(std::move(candidate));
      ObjVec f = problem.evaluate(candidate);
      ++used;
      const double reward = to_reward(f, w, cfg.scheme, problem.sense(), ideal);
      return {std::move(candidate), std::move(f), reward};
    };

    while (used < budget_per_weight) {
      Evaluated current = evaluate(problem.random_solution(rng));
      bool improved = true;
      while (improved && used < budget_per_weight) {
        improved = false;
        Evaluated best_neighbor;
        bool have_neighbor = false;
        for (const Move &move : detail::full_neighborhood(current.x, problem.num_actions())) {
          if (used >= budget_per_weight) break;
          Solution candidate = current.x;
          apply_move(candidate, move);
          Evaluated result_cand = evaluate(std::move(candidate));
          if (!have_neighbor || result_cand.reward > best_neighbor.reward) {
            best_neighbor = std::move(result_cand);
            have_neighbor = true;
          }
        }
        if (have_neighbor && best_neighbor.reward > current.reward) {
          current = std::move(best_neighbor);
          improved = true;
        }
      }
      if (!have_best || current.reward > pw.best_reward) {
        pw.best = current.x;
        pw.best_f = current.f;
        pw.best_reward = current.reward;
        have_best = true;
      }
    }

    pw.evals = used;
    result.evals += used;
    if (have_best) result.archive.insert(pw.best, pw.best_f);
    if (have_best) result.per_weight.push_back(std::move(pw));
  }

  result.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return result;
}

inline RunResult run(const Problem &problem, const RunConfig &cfg) {
  switch (cfg.algo) {
    case Algo::dnl:
    case Algo::dnl_ts: return run_dnl(problem, cfg);
    case Algo::random_search: return run_random(problem, cfg);
    case Algo::ws_local: return run_ws_local(problem, cfg);
  }
  throw std::logic_error("run: unknown algorithm");
}

}  // namespace dnl

#endif  // DNL_ENGINE_HPP
