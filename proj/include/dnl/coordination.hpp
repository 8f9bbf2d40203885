/**
 * @file coordination.hpp
 * @brief Lagrangian coordination of overlapping positions: soft-violation
 *        measurement from shared statistics and dual updates via entropic
 *        mirror descent with Nesterov momentum.
 */

#ifndef DNL_COORDINATION_HPP
#define DNL_COORDINATION_HPP

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "dnl/experts.hpp"

namespace dnl {

/**
 * @brief Soft violation xi_i = (k_i - 1) * Var(V_i,.) * (1 - N_i,chosen / sum_a N_i,a).
 *
 * Quantifies coordination risk at a position shared by k_i subproblems:
 * zero when the position is unshared or the value row is constant. With no
 * visits yet the visit-ratio term is taken as 1 (maximal uncertainty).
 */
inline double soft_violation(int i, const ExpertStats &stats, int k_i, int chosen) {
  if (k_i < 1) throw std::invalid_argument("soft_violation: k_i must be >= 1");
  if (k_i == 1) return 0.0;
  const double variance = stats.value_variance(i);
  const long total = stats.total_count(i);
  const double visit_ratio =
      total == 0 ? 0.0 : static_cast<double>(stats.count(i, chosen)) / static_cast<double>(total);
  return (k_i - 1) * variance * (1.0 - visit_ratio);
}

/// Score penalty (k_i - 1) * lambda_i routed into FTRL scores.
inline double score_penalty(double lambda_i, int k_i) {
  if (k_i < 1) throw std::invalid_argument("score_penalty: k_i must be >= 1");
  return (k_i - 1) * lambda_i;
}

/**
 * @brief One accelerated mirror-descent step in log-space.
 *
 * l      = log(lambda) + alpha_t * xi          (entropic mirror step)
 * l~     = l + theta_t * (l - log(lambda_prev)) (Nesterov extrapolation)
 * result = clamp(exp(l~), [eps, lambda_max])
 */
inline double mirror_step(double lambda, double lambda_prev, double alpha_t, double theta_t,
                          double xi, double eps, double lambda_max) {
  const double stepped = std::log(lambda) + alpha_t * xi;
  const double extrapolated = stepped + theta_t * (stepped - std::log(lambda_prev));
  return std::clamp(std::exp(extrapolated), eps, lambda_max);
}

/**
 * @brief Dual multipliers for every position, updated only where k_i >= 2.
 *
 * Multipliers start at eps rather than zero so the multiplicative update
 * exp(log lambda + ...) is well defined; eps keeps the penalty effectively
 * off until violations accumulate.
 */
class DualState {
public:
  DualState() = default;
  DualState(int n, double alpha0, double lambda_max, double eps)
      : alpha0_(alpha0), lambda_max_(lambda_max), eps_(eps) {
    reset(n);
  }

  void reset(int n) {
    lambda_.assign(static_cast<std::size_t>(n), eps_);
    lambda_prev_ = lambda_;
  }

  double alpha0() const { return alpha0_; }
  double lambda_max() const { return lambda_max_; }
  double eps() const { return eps_; }
  const std::vector<double> &lambda() const { return lambda_; }
  double lambda_at(int i) const { return lambda_[static_cast<std::size_t>(i)]; }

  /**
   * @brief Mirror-descent update over the given violations. `xi` carries one
   *        entry per position; entries for unshared positions (k_i = 1) must
   *        be zero and leave their multipliers untouched.
   */
  void update(const std::vector<double> &xi, const std::vector<int> &multiplicity, long t) {
    if (t < 1) throw std::invalid_argument("DualState::update: t must be >= 1");
    if (xi.size() != lambda_.size() || multiplicity.size() != lambda_.size())
      throw std::invalid_argument("DualState::update: size mismatch");
    const double alpha_t = alpha0_ / std::sqrt(static_cast<double>(t));
    const double theta_t = 2.0 / (t + 1.0);
    for (std::size_t i = 0; i < lambda_.size(); ++i) {
      if (multiplicity[i] < 2) continue;
      const double updated =
          mirror_step(lambda_[i], lambda_prev_[i], alpha_t, theta_t, xi[i], eps_, lambda_max_);
      lambda_prev_[i] = lambda_[i];
      lambda_[i] = updated;
    }
  }

private:
  double alpha0_ = 1.0;
  double lambda_max_ = 10.0;
  double eps_ = 1e-6;
  std::vector<double> lambda_;
  std::vector<double> lambda_prev_;
};

}  // namespace dnl

#endif  // DNL_COORDINATION_HPP
