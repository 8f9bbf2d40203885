// Test-only oracles kept independent of the library implementations they
// check: brute-force dominance filtering, grid-cell and Monte-Carlo
// hypervolume, and exhaustive enumeration helpers.

#ifndef DNL_TESTS_ORACLES_HPP
#define DNL_TESTS_ORACLES_HPP

#include <cmath>
#include <cstdint>
#include <vector>

#include "dnl/prng.hpp"
#include "dnl/problem.hpp"

namespace oracles {

/// O(n^2) pairwise dominance filter (minimization), preserving first-seen
/// order and dropping duplicate objective vectors.
inline std::vector<dnl::ObjVec> pareto_filter(const std::vector<dnl::ObjVec> &points) {
  std::vector<dnl::ObjVec> kept;
  for (const auto &candidate : points) {
    bool drop = false;
    for (const auto &other : points) {
      if (&other == &candidate) continue;
      bool weakly_better = true, strictly = false;
      for (std::size_t i = 0; i < candidate.size(); ++i) {
        if (other[i] > candidate[i]) weakly_better = false;
        if (other[i] < candidate[i]) strictly = true;
      }
      if (weakly_better && strictly) {
        drop = true;
        break;
      }
    }
    if (drop) continue;
    bool duplicate = false;
    for (const auto &have : kept)
      if (have == candidate) duplicate = true;
    if (!duplicate) kept.push_back(candidate);
  }
  return kept;
}

/// Exact hypervolume for integer-grid fronts by counting dominated unit
/// cells inside [0, ref)^m (minimization).
inline double grid_hypervolume(const std::vector<std::vector<int>> &points,
                               const std::vector<int> &ref) {
  const std::size_t m = ref.size();
  long count = 0;
  std::vector<int> cell(m, 0);
  const auto dominated = [&]() {
    for (const auto &p : points) {
      bool ok = true;
      for (std::size_t i = 0; i < m; ++i)
        if (p[i] > cell[i]) ok = false;
      if (ok) return true;
    }
    return false;
  };
  // Odometer over all integer cells below the reference point.
  while (true) {
    if (dominated()) ++count;
    std::size_t d = 0;
    while (d < m) {
      if (++cell[d] < ref[d]) break;
      cell[d] = 0;
      ++d;
    }
    if (d == m) break;
  }
  return static_cast<double>(count);
}

struct McEstimate {
  double value = 0.0;
  double sigma = 0.0;
};

/// Monte-Carlo hypervolume over the box [lo, ref] (minimization).
inline McEstimate mc_hypervolume(const std::vector<dnl::ObjVec> &points, const dnl::ObjVec &lo,
                                 const dnl::ObjVec &ref, long samples, std::uint64_t seed) {
  dnl::Rng rng(seed);
  const std::size_t m = ref.size();
  double box = 1.0;
  for (std::size_t i = 0; i < m; ++i) box *= ref[i] - lo[i];
  long hits = 0;
  std::vector<double> u(m, 0.0);
  for (long s = 0; s < samples; ++s) {
    for (std::size_t i = 0; i < m; ++i) u[i] = rng.uniform(lo[i], ref[i]);
    for (const auto &p : points) {
      bool dominated = true;
      for (std::size_t i = 0; i < m; ++i)
        if (p[i] > u[i]) dominated = false;
      if (dominated) {
        ++hits;
        break;
      }
    }
  }
  const double p_hat = static_cast<double>(hits) / static_cast<double>(samples);
  McEstimate estimate;
  estimate.value = p_hat * box;
  estimate.sigma = box * std::sqrt(p_hat * (1.0 - p_hat) / static_cast<double>(samples));
  return estimate;
}

}  // namespace oracles

#endif  // DNL_TESTS_ORACLES_HPP
