/**
 * @file scalarization.hpp
 * @brief Weight-vector generation and objective-to-reward reduction.
 */

#ifndef DNL_SCALARIZATION_HPP
#define DNL_SCALARIZATION_HPP

#include <cmath>
#include <stdexcept>
#include <vector>

#include "dnl/problem.hpp"

namespace dnl {

enum class Scheme { weighted_sum, tchebycheff };

/// Point on the probability simplex: nonnegative components summing to 1.
struct WeightVector {
  std::vector<double> w;

  int dim() const { return static_cast<int>(w.size()); }

  bool on_simplex(double tol = 1e-12) const {
    double sum = 0.0;
    for (double v : w) {
      if (v < 0.0) return false;
      sum += v;
    }
    return std::abs(sum - 1.0) <= tol;
  }
};

/**
 * @brief Deterministic weight grid on the (m-1)-simplex.
 *
 * m = 2: `count` evenly spaced vectors (i/(count-1), 1 - i/(count-1)).
 * m = 3: the full simplex lattice {(i,j,k)/H : i+j+k = H} for the smallest
 *        H whose lattice has at least `count` points; includes the three
 *        vertices and may return more than `count` vectors.
 */
inline std::vector<WeightVector> gen_weights(int m, int count) {
  if (count < 2) throw std::invalid_argument("gen_weights: count must be >= 2");
  std::vector<WeightVector> out;
  if (m == 2) {
    out.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
      const double a = static_cast<double>(i) / (count - 1);
      out.push_back({{a, 1.0 - a}});
    }
  } else if (m == 3) {
    int h = 1;
    while ((h + 1) * (h + 2) / 2 < count) ++h;
    for (int i = h; i >= 0; --i)
      for (int j = h - i; j >= 0; --j) {
        const int k = h - i - j;
        out.push_back({{static_cast<double>(i) / h, static_cast<double>(j) / h,
                        static_cast<double>(k) / h}});
      }
  } else {
    throw std::invalid_argument("gen_weights: only m in {2, 3} is supported");
  }
  return out;
}

inline double weighted_sum(const ObjVec &f, const WeightVector &w) {
  if (static_cast<int>(f.size()) != w.dim())
    throw std::invalid_argument("weighted_sum: dimension mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) s += w.w[i] * f[i];
  return s;
}

/// Weighted infinity-norm distance to the ideal point z.
inline double tchebycheff(const ObjVec &f, const WeightVector &w, const ObjVec &z) {
  if (static_cast<int>(f.size()) != w.dim() || f.size() != z.size())
    throw std::invalid_argument("tchebycheff: dimension mismatch");
  double worst = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i)
    worst = std::max(worst, w.w[i] * std::abs(f[i] - z[i]));
  return worst;
}

/**
 * @brief Collapse an objective vector into a scalar reward where larger is
 *        always better.
 *
 * Weighted sum keeps its sign for maximization and is negated for
 * minimization. The Tchebycheff value is a distance to the ideal point, so
 * it is negated under either sense.
 */
inline double to_reward(const ObjVec &f, const WeightVector &w, Scheme scheme,
                        Sense sense, const ObjVec *z = nullptr) {
  if (scheme == Scheme::weighted_sum) {
    const double s = weighted_sum(f, w);
    return sense == Sense::maximize ? s : -s;
  }
  if (z == nullptr)
    throw std::invalid_argument("to_reward: tchebycheff requires an ideal point");
  return -tchebycheff(f, w, *z);
}

}  // namespace dnl

#endif  // DNL_SCALARIZATION_HPP
