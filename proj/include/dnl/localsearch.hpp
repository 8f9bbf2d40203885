/**
 * @file localsearch.hpp
 * @brief Gradient-free refinement of a solution restricted to one
 *        subproblem via unit perturbations.
 */

#ifndef DNL_LOCALSEARCH_HPP
#define DNL_LOCALSEARCH_HPP

#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "dnl/decomposition.hpp"
#include "dnl/prng.hpp"
#include "dnl/problem.hpp"

namespace dnl {

/// A local move whose touched indices all lie inside the target subproblem.
struct Move {
  enum class Kind { adjacent_swap, two_opt, bit_flip, category_step };
  Kind kind = Kind::bit_flip;
  int a = 0;  // position; two_opt segment start
  int b = 0;  // two_opt segment end; swap partner; category_step new value
};

inline void apply_move(Solution &x, const Move &move) {
  switch (move.kind) {
    case Move::Kind::adjacent_swap:
      std::swap(x.values[static_cast<std::size_t>(move.a)],
                x.values[static_cast<std::size_t>(move.b)]);
      break;
    case Move::Kind::two_opt: {
      int lo = move.a, hi = move.b;
      while (lo < hi)
        std::swap(x.values[static_cast<std::size_t>(lo++)],
                  x.values[static_cast<std::size_t>(hi--)]);
      break;
    }
    case Move::Kind::bit_flip:
      x.values[static_cast<std::size_t>(move.a)] ^= 1;
      break;
    case Move::Kind::category_step:
      x.values[static_cast<std::size_t>(move.a)] = move.b;
      break;
  }
}

namespace detail {

/// Maximal runs of consecutive indices within a sorted index set.
inline std::vector<std::pair<int, int>> contiguous_runs(const std::vector<int> &indices) {
  std::vector<std::pair<int, int>> runs;
  std::size_t start = 0;
  for (std::size_t k = 1; k <= indices.size(); ++k) {
    if (k == indices.size() || indices[k] != indices[k - 1] + 1) {
      runs.emplace_back(indices[start], indices[k - 1]);
      start = k;
    }
  }
  return runs;
}

}  // namespace detail

/**
 * @brief Draw one unit perturbation restricted to the subproblem S.
 *
 * Permutations: an adjacent swap of two consecutive positions inside S or a
 * 2-opt reversal of a segment fully inside S, chosen with probability 1/2.
 * When S contains no two consecutive positions, falls back to swapping the
 * contents of two neighboring members of S. Binary: a single bit flip at a
 * uniformly random index of S. Categorical: one coordinate stepped to an
 * adjacent category.
 */
inline Move unit_perturbation(const Solution &x, const Subproblem &s, int num_actions, Rng &rng) {
  if (s.size() < 2) throw std::invalid_argument("unit_perturbation: |S| must be >= 2");
  switch (x.domain) {
    case Domain::binary: {
      const int j = s.indices[static_cast<std::size_t>(rng.uniform_int(s.size()))];
      return {Move::Kind::bit_flip, j, 0};
    }
    case Domain::categorical: {
      const int j = s.indices[static_cast<std::size_t>(rng.uniform_int(s.size()))];
      const int cur = x.values[static_cast<std::size_t>(j)];
      int next = rng.uniform() < 0.5 ? cur - 1 : cur + 1;
      if (next < 0) next = cur + 1;
      if (next >= num_actions) next = cur - 1;
      return {Move::Kind::category_step, j, next};
    }
    case Domain::permutation: {
      const auto runs = detail::contiguous_runs(s.indices);
      std::vector<std::pair<int, int>> usable;
      for (const auto &run : runs)
        if (run.second > run.first) usable.push_back(run);
      if (usable.empty()) {
        // Scattered k-NN set: swap contents of two neighboring members of S.
        const int k = rng.uniform_int(s.size() - 1);
        return {Move::Kind::adjacent_swap, s.indices[static_cast<std::size_t>(k)],
                s.indices[static_cast<std::size_t>(k) + 1]};
      }
      const auto &run = usable[static_cast<std::size_t>(rng.uniform_int(static_cast<int>(usable.size())))];
      const int span = run.second - run.first;
      if (rng.uniform() < 0.5) {
        const int j = run.first + rng.uniform_int(span);
        return {Move::Kind::adjacent_swap, j, j + 1};
      }
      int lo = run.first + rng.uniform_int(span + 1);
      int hi = run.first + rng.uniform_int(span + 1);
      while (hi == lo) hi = run.first + rng.uniform_int(span + 1);
      if (lo > hi) std::swap(lo, hi);
      return {Move::Kind::two_opt, lo, hi};
    }
  }
  throw std::logic_error("unit_perturbation: unknown domain");
}

/// Candidate evaluated through the engine: repaired solution, objective
/// vector, scalarized reward. The engine-side evaluator also reports the
/// observation to the expert tables and counts it against the budget.
struct Evaluated {
  Solution x;
  ObjVec f;
  double reward = 0.0;
};

using EvalFn = std::function<Evaluated(Solution)>;

/**
 * @brief Greedy hill climb over unit perturbations inside S.
 *
 * Runs exactly `rounds` propose-evaluate steps, accepting a candidate only
 * on strict reward improvement. Every candidate evaluation goes through
 * `evaluate`, so all of them reach the expert update path whether accepted
 * or not. Returns a solution whose reward is >= the input's.
 */
inline Evaluated local_refine(Evaluated current, const Subproblem &s, int num_actions, int rounds,
                              const EvalFn &evaluate, Rng &rng) {
  for (int round = 0; round < rounds; ++round) {
    Solution candidate = current.x;
    apply_move(candidate, unit_perturbation(current.x, s, num_actions, rng));
    Evaluated result = evaluate(std::move(candidate));
    if (result.reward > current.reward) current = std::move(result);
  }
  return current;
}

}  // namespace dnl

#endif  // DNL_LOCALSEARCH_HPP
