/**
 * @file problem.hpp
 * @brief Core solution representation and the abstract problem interface.
 */

#ifndef DNL_PROBLEM_HPP
#define DNL_PROBLEM_HPP

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace dnl {

enum class Domain { permutation, binary, categorical };
enum class Sense { minimize, maximize };

using ObjVec = std::vector<double>;

/// A decision vector: a permutation of [n], a bit vector, or a categorical
/// assignment. Values are small nonnegative integers in every domain.
struct Solution {
  Domain domain = Domain::permutation;
  std::vector<int> values;

  int size() const { return static_cast<int>(values.size()); }

  bool is_permutation() const {
    if (domain != Domain::permutation) return false;
    std::vector<bool> seen(values.size(), false);
    for (int v : values) {
      if (v < 0 || v >= size() || seen[static_cast<std::size_t>(v)]) return false;
      seen[static_cast<std::size_t>(v)] = true;
    }
    return true;
  }
};

/**
 * @brief Abstract optimization problem seen by the search engine.
 *
 * A problem exposes n positions, each taking one of num_actions() values,
 * an m-dimensional objective, and an optional feasibility repair applied to
 * candidate solutions before evaluation.
 */
class Problem {
public:
  virtual ~Problem() = default;

  virtual Domain domain() const = 0;
  virtual Sense sense() const = 0;
  virtual int size() const = 0;
  virtual int num_actions() const = 0;
  virtual int num_objectives() const = 0;

  virtual ObjVec evaluate(const Solution &x) const = 0;

  /// Feasibility projection; identity unless a domain needs repair.
  virtual Solution repair(Solution x) const { return x; }

  /// Pairwise index distance used to build k-NN subproblems.
  /// Default: line metric |i - j|.
  virtual std::vector<std::vector<double>> index_distance() const {
    const int n = size();
    std::vector<std::vector<double>> d(static_cast<std::size_t>(n),
                                       std::vector<double>(static_cast<std::size_t>(n), 0.0));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        d[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = std::abs(i - j);
    return d;
  }

  /// Uniformly random solution in the raw (pre-repair) encoding.
  template <typename RngT>
  Solution random_solution(RngT &rng) const {
    Solution s;
    s.domain = domain();
    const int n = size();
    s.values.resize(static_cast<std::size_t>(n));
    if (domain() == Domain::permutation) {
      for (int i = 0; i < n; ++i) s.values[static_cast<std::size_t>(i)] = i;
      rng.shuffle(s.values);
    } else {
      for (int i = 0; i < n; ++i)
        s.values[static_cast<std::size_t>(i)] = rng.uniform_int(num_actions());
    }
    return s;
  }
};

}  // namespace dnl

#endif  // DNL_PROBLEM_HPP
