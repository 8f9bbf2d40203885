/**
 * @file decomposition.hpp
 * @brief Overlapping subproblem construction over variable indices:
 *        sliding windows with a diminishing overlap schedule, k-NN
 *        subproblems from an index distance, and overlap accounting.
 */

#ifndef DNL_DECOMPOSITION_HPP
#define DNL_DECOMPOSITION_HPP

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace dnl {

/// Ordered index set S_k over the variables [0, n).
struct Subproblem {
  int id = 0;
  std::vector<int> indices;  // strictly increasing

  int size() const { return static_cast<int>(indices.size()); }
  bool contains(int i) const {
    return std::binary_search(indices.begin(), indices.end(), i);
  }
};

enum class OverlapSchedule { power, exponential };

/// Overlap o_t = floor(o0 * t^-alpha). alpha = 0 keeps the overlap constant.
inline int overlap_schedule(int o0, double alpha, long t) {
  if (t < 1) throw std::invalid_argument("overlap_schedule: t must be >= 1");
  if (o0 < 0 || alpha < 0.0)
    throw std::invalid_argument("overlap_schedule: o0 and alpha must be nonnegative");
  return static_cast<int>(std::floor(o0 * std::pow(static_cast<double>(t), -alpha)));
}

/// Alternative exponential decay o_t = floor(o0 * (1 - beta)^t).
inline int overlap_schedule_exp(int o0, double beta, long t) {
  if (t < 1) throw std::invalid_argument("overlap_schedule_exp: t must be >= 1");
  if (o0 < 0 || beta < 0.0 || beta > 1.0)
    throw std::invalid_argument("overlap_schedule_exp: invalid parameters");
  return static_cast<int>(std::floor(o0 * std::pow(1.0 - beta, static_cast<double>(t))));
}

/// Full decomposition snapshot: subproblems, overlap set, and per-index
/// multiplicity k_i (number of subproblems containing index i).
struct Decomposition {
  std::vector<Subproblem> subproblems;
  std::vector<int> multiplicity;  // size n
  std::vector<int> overlap_set;   // indices with multiplicity >= 2, ascending
  int n = 0;
  int window = 0;   // s
  int overlap = 0;  // o_t used for construction

  int k_of(int i) const { return multiplicity[static_cast<std::size_t>(i)]; }

  bool covers_all() const {
    return std::all_of(multiplicity.begin(), multiplicity.end(),
                       [](int k) { return k >= 1; });
  }
};

/**
 * @brief Sliding-window decomposition: windows of size s advancing by
 *        s - o, generated until [0, n) is covered. The final window may be
 *        shorter. Consecutive full windows share exactly o indices.
 */
inline Decomposition sliding_window(int n, int s, int o) {
  if (s < 1 || s > n) throw std::invalid_argument("sliding_window: need 1 <= s <= n");
  if (o < 0 || o >= s) throw std::invalid_argument("sliding_window: need 0 <= o < s");

  Decomposition d;
  d.n = n;
  d.window = s;
  d.overlap = o;
  d.multiplicity.assign(static_cast<std::size_t>(n), 0);

  const int step = s - o;
  int k = 0;
  for (int start = 0;; start += step, ++k) {
    const int end = std::min(n, start + s);
    Subproblem sub;
    sub.id = k;
    for (int i = start; i < end; ++i) {
      sub.indices.push_back(i);
      ++d.multiplicity[static_cast<std::size_t>(i)];
    }
    d.subproblems.push_back(std::move(sub));
    if (end >= n) break;
  }
  for (int i = 0; i < n; ++i)
    if (d.multiplicity[static_cast<std::size_t>(i)] >= 2) d.overlap_set.push_back(i);
  return d;
}

/**
 * @brief k-NN subproblem: the s indices with smallest distance to the
 *        center c (the center itself included via D_{c,c} = 0), ties broken
 *        by lower index.
 */
inline Subproblem knn_subproblem(const std::vector<std::vector<double>> &dist, int c, int s) {
  const int n = static_cast<int>(dist.size());
  if (s > n) throw std::invalid_argument("knn_subproblem: s exceeds index count");
  if (c < 0 || c >= n) throw std::invalid_argument("knn_subproblem: center out of range");
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  const auto &row = dist[static_cast<std::size_t>(c)];
  std::stable_sort(order.begin(), order.end(), [&row](int a, int b) {
    return row[static_cast<std::size_t>(a)] < row[static_cast<std::size_t>(b)];
  });
  Subproblem sub;
  sub.id = c;
  sub.indices.assign(order.begin(), order.begin() + s);
  std::sort(sub.indices.begin(), sub.indices.end());
  return sub;
}

struct MultiplicityReport {
  int rho = 0;           // max multiplicity
  long lhs = 0;          // sum over overlap indices of (k_i - 1)
  long rhs = 0;          // (rho - 1) * n
  bool bound_ok = false;
};

/// Evaluates both sides of the overlap counting inequality
/// sum_{i in O} (k_i - 1) <= (rho - 1) * n. Each overlap index contributes
/// its excess appearances beyond the one subproblem it would occupy in a
/// disjoint decomposition.
inline MultiplicityReport multiplicity_check(const Decomposition &d) {
  MultiplicityReport report;
  for (int k : d.multiplicity) {
    report.rho = std::max(report.rho, k);
    if (k >= 2) report.lhs += k - 1;
  }
  report.rhs = static_cast<long>(report.rho - 1) * d.n;
  report.bound_ok = report.lhs <= report.rhs;
  return report;
}

}  // namespace dnl

#endif  // DNL_DECOMPOSITION_HPP
