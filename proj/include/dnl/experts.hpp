/**
 * @file experts.hpp
 * @brief Shared position-action statistics and the multi-expert machinery:
 *        UCB, EXP3, FTRL, and Thompson selection rules over one table of
 *        value estimates, visit counts, multiplicative weights, and
 *        cumulative importance-weighted losses, plus the clipped
 *        importance-weighted update that feeds all of them from every
 *        observed reward.
 */

#ifndef DNL_EXPERTS_HPP
#define DNL_EXPERTS_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "dnl/prng.hpp"
#include "dnl/problem.hpp"

namespace dnl {

enum class ExpertVariant { ucb_exp3_ftrl, ts_exp3 };

/// Hyperparameters for selection and updates.
struct ExpertConfig {
  double eta = 0.5;          // EXP3 learning rate
  double ucb_c = 3.0;        // UCB exploration coefficient
  double temp0 = 1.0;        // initial EXP3 softmax temperature
  double temp_decay = 0.98;  // multiplicative temperature decay per iteration
  double rho0 = 0.3;         // FTRL share of the expert mixture
  double gamma = 1.0;        // FTRL visit bonus coefficient
  double p_min = 0.01;       // clipping threshold for importance weights
  double loss_cap = 100.0;   // hard cap on importance-weighted losses
  ExpertVariant variant = ExpertVariant::ucb_exp3_ftrl;

  void validate() const {
    if (eta <= 0.0) throw std::invalid_argument("ExpertConfig: eta must be positive");
    if (p_min <= 0.0 || p_min > 1.0)
      throw std::invalid_argument("ExpertConfig: p_min must lie in (0, 1]");
    if (rho0 < 0.0 || rho0 >= 1.0)
      throw std::invalid_argument("ExpertConfig: rho0 must lie in [0, 1)");
    if (temp0 <= 0.0 || temp_decay <= 0.0 || temp_decay > 1.0)
      throw std::invalid_argument("ExpertConfig: invalid temperature schedule");
  }

  /// The TS variant never dispatches FTRL.
  double effective_rho0() const {
    return variant == ExpertVariant::ts_exp3 ? 0.0 : rho0;
  }
};

/**
 * @brief Position-action statistics shared by all experts.
 *
 * Rows are positions, columns are actions. V holds running means of the
 * normalized reward in [-1, 1]; N visit counts; W the EXP3 weights (each row
 * strictly positive and normalized to sum 1); L cumulative importance-
 * weighted losses. Reward normalization tracks the running raw-reward range
 * of the current run.
 */
class ExpertStats {
public:
  ExpertStats() = default;
  ExpertStats(int positions, int actions, double temp0 = 1.0) { reset(positions, actions, temp0); }

  void reset(int positions, int actions, double temp0 = 1.0) {
    n_ = positions;
    a_ = actions;
    value_.assign(cells(), 0.0);
    count_.assign(cells(), 0);
    weight_.assign(cells(), 1.0 / actions);
    loss_.assign(cells(), 0.0);
    round_ = 0;
    temp_ = temp0;
    has_reward_ = false;
    reward_min_ = 0.0;
    reward_max_ = 0.0;
  }

  int positions() const { return n_; }
  int actions() const { return a_; }
  long round() const { return round_; }
  double temperature() const { return temp_; }
  void decay_temperature(double factor) { temp_ = std::max(temp_ * factor, 1e-12); }

  double value(int i, int a) const { return value_[idx(i, a)]; }
  long count(int i, int a) const { return count_[idx(i, a)]; }
  double weight(int i, int a) const { return weight_[idx(i, a)]; }
  double loss(int i, int a) const { return loss_[idx(i, a)]; }

  double row_weight_sum(int i) const {
    double sum = 0.0;
    for (int a = 0; a < a_; ++a) sum += weight_[idx(i, a)];
    return sum;
  }

  double mean_count(int i) const {
    long sum = 0;
    for (int a = 0; a < a_; ++a) sum += count_[idx(i, a)];
    return static_cast<double>(sum) / a_;
  }

  long total_count(int i) const {
    long sum = 0;
    for (int a = 0; a < a_; ++a) sum += count_[idx(i, a)];
    return sum;
  }

  /// Population variance of the value row.
  double value_variance(int i) const {
    double mean = 0.0;
    for (int a = 0; a < a_; ++a) mean += value_[idx(i, a)];
    mean /= a_;
    double var = 0.0;
    for (int a = 0; a < a_; ++a) {
      const double d = value_[idx(i, a)] - mean;
      var += d * d;
    }
    return var / a_;
  }

  bool has_reward_range() const { return has_reward_; }
  double reward_min() const { return reward_min_; }
  double reward_max() const { return reward_max_; }

  /// Folds r_raw into the running range and returns it mapped to [-1, 1]
  /// (0 while the range is degenerate).
  double normalize_reward(double r_raw) {
    if (!has_reward_) {
      has_reward_ = true;
      reward_min_ = reward_max_ = r_raw;
    } else {
      reward_min_ = std::min(reward_min_, r_raw);
      reward_max_ = std::max(reward_max_, r_raw);
    }
    if (reward_max_ == reward_min_) return 0.0;
    return 2.0 * (r_raw - reward_min_) / (reward_max_ - reward_min_) - 1.0;
  }

  // Direct cell mutation, used by the update routine below.
  void bump_count(int i, int a) { ++count_[idx(i, a)]; }
  void set_value(int i, int a, double v) { value_[idx(i, a)] = v; }
  void scale_weight(int i, int a, double factor) { weight_[idx(i, a)] *= factor; }
  void add_loss(int i, int a, double l) { loss_[idx(i, a)] += l; }
  void bump_round() { ++round_; }

  void normalize_weight_rows() {
    // The floor keeps suppressed weights strictly positive; at 1e-300 it is
    // far below the clipping threshold and never affects sampling.
    for (int i = 0; i < n_; ++i) {
      const double sum = row_weight_sum(i);
      for (int a = 0; a < a_; ++a)
        weight_[idx(i, a)] = std::max(weight_[idx(i, a)] / sum, 1e-300);
    }
  }

private:
  std::size_t cells() const { return static_cast<std::size_t>(n_) * static_cast<std::size_t>(a_); }
  std::size_t idx(int i, int a) const {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(a_) + static_cast<std::size_t>(a);
  }

  int n_ = 0;
  int a_ = 0;
  std::vector<double> value_;
  std::vector<long> count_;
  std::vector<double> weight_;
  std::vector<double> loss_;
  long round_ = 0;
  double temp_ = 1.0;
  bool has_reward_ = false;
  double reward_min_ = 0.0;
  double reward_max_ = 0.0;
};

/// Per-position estimation uncertainty u_i = 1 / (1 + log(1 + mean_a N_ia)),
/// equal to 1 before any visit and decaying slowly with visits.
inline double uncertainty(int i, const ExpertStats &stats) {
  return 1.0 / (1.0 + std::log(1.0 + stats.mean_count(i)));
}

/// Debugging snapshot: per position, the top actions ranked by value
/// estimate (ties by lower action index).
struct StatsSnapshot {
  struct TopAction {
    int action = 0;
    double value = 0.0;
    long visits = 0;
  };
  std::vector<std::vector<TopAction>> top_by_position;
};

inline StatsSnapshot snapshot_top_actions(const ExpertStats &stats, int top_k = 3) {
  StatsSnapshot snapshot;
  snapshot.top_by_position.resize(static_cast<std::size_t>(stats.positions()));
  for (int i = 0; i < stats.positions(); ++i) {
    std::vector<StatsSnapshot::TopAction> row;
    row.reserve(static_cast<std::size_t>(stats.actions()));
    for (int a = 0; a < stats.actions(); ++a)
      row.push_back({a, stats.value(i, a), stats.count(i, a)});
    std::stable_sort(row.begin(), row.end(),
                     [](const auto &x, const auto &y) { return x.value > y.value; });
    row.resize(static_cast<std::size_t>(std::min<int>(top_k, stats.actions())));
    snapshot.top_by_position[static_cast<std::size_t>(i)] = std::move(row);
  }
  return snapshot;
}

struct MixtureProbs {
  double ucb;   // or Thompson, depending on the variant
  double exp3;
  double ftrl;
};

/// Uncertainty-adaptive expert mixture [(1-rho0) u/2, (1-rho0)(1-u/2), rho0].
inline MixtureProbs mixture_probs(double u, double rho0) {
  return {(1.0 - rho0) * u / 2.0, (1.0 - rho0) * (1.0 - u / 2.0), rho0};
}

/**
 * @brief UCB selection: unvisited admissible actions first (lowest index),
 *        otherwise argmax of V + c * sqrt(log t / N); ties favor the lowest
 *        index.
 */
inline int select_ucb(int i, const ExpertStats &stats, const ExpertConfig &cfg,
                      const std::vector<int> &mask) {
  if (mask.empty()) throw std::invalid_argument("select_ucb: empty action mask");
  int unvisited = -1;
  for (int a : mask)
    if (stats.count(i, a) == 0 && (unvisited < 0 || a < unvisited)) unvisited = a;
  if (unvisited >= 0) return unvisited;
  const double log_t = std::log(static_cast<double>(std::max<long>(stats.round(), 1)));
  int best = mask.front();
  double best_score = -std::numeric_limits<double>::infinity();
  for (int a : mask) {
    const double score =
        stats.value(i, a) + cfg.ucb_c * std::sqrt(std::max(log_t, 0.0) / stats.count(i, a));
    if (score > best_score || (score == best_score && a < best)) {
      best_score = score;
      best = a;
    }
  }
  return best;
}

/**
 * @brief EXP3 selection: sample from the temperature-softened row
 *        distribution, P(a) proportional to exp(log p_a / T), restricted to
 *        the mask and renormalized.
 */
inline int select_exp3(int i, const ExpertStats &stats, const ExpertConfig &cfg,
                       const std::vector<int> &mask, Rng &rng) {
  (void)cfg;
  if (mask.empty()) throw std::invalid_argument("select_exp3: empty action mask");
  const double row_sum = stats.row_weight_sum(i);
  const double temp = stats.temperature();
  std::vector<double> score(mask.size());
  double max_score = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < mask.size(); ++k) {
    score[k] = std::log(stats.weight(i, mask[k]) / row_sum) / temp;
    max_score = std::max(max_score, score[k]);
  }
  double total = 0.0;
  for (double &s : score) {
    s = std::exp(s - max_score);
    total += s;
  }
  const double draw = rng.uniform() * total;
  double cumulative = 0.0;
  for (std::size_t k = 0; k < mask.size(); ++k) {
    cumulative += score[k];
    if (draw < cumulative) return mask[k];
  }
  return mask.back();
}

/**
 * @brief FTRL selection: argmax of -L + gamma * sqrt(N + 1) - penalty over
 *        the mask. The penalty is the Lagrangian coordination term; it is
 *        identical across actions of a position, so it shifts scores without
 *        changing the argmax, and is applied for traceability.
 */
inline int select_ftrl(int i, const ExpertStats &stats, const ExpertConfig &cfg,
                       const std::vector<int> &mask, double penalty = 0.0) {
  if (mask.empty()) throw std::invalid_argument("select_ftrl: empty action mask");
  int best = mask.front();
  double best_score = -std::numeric_limits<double>::infinity();
  for (int a : mask) {
    const double score =
        -stats.loss(i, a) + cfg.gamma * std::sqrt(static_cast<double>(stats.count(i, a)) + 1.0) -
        penalty;
    if (score > best_score || (score == best_score && a < best)) {
      best_score = score;
      best = a;
    }
  }
  return best;
}

/// Thompson selection: draw score_a ~ Normal(V_ia, 1/(N_ia + 1)) per
/// admissible action and return the argmax sample.
inline int select_thompson(int i, const ExpertStats &stats, const ExpertConfig &cfg,
                           const std::vector<int> &mask, Rng &rng) {
  (void)cfg;
  if (mask.empty()) throw std::invalid_argument("select_thompson: empty action mask");
  int best = mask.front();
  double best_score = -std::numeric_limits<double>::infinity();
  for (int a : mask) {
    const double sigma = 1.0 / std::sqrt(static_cast<double>(stats.count(i, a)) + 1.0);
    const double score = stats.value(i, a) + sigma * rng.normal();
    if (score > best_score) {
      best_score = score;
      best = a;
    }
  }
  return best;
}

/**
 * @brief Multi-expert action selection: sample an expert from the
 *        uncertainty-adaptive mixture and dispatch to the variant's expert
 *        set. FTRL receives the score penalty (k_i - 1) * lambda_i from
 *        Lagrangian coordination.
 */
inline int select_action(int i, const ExpertStats &stats, const ExpertConfig &cfg,
                         const std::vector<int> &mask, double lambda_i, int k_i, Rng &rng) {
  const double u = uncertainty(i, stats);
  const MixtureProbs probs = mixture_probs(u, cfg.effective_rho0());
  const double draw = rng.uniform();
  if (draw < probs.ucb) {
    return cfg.variant == ExpertVariant::ts_exp3 ? select_thompson(i, stats, cfg, mask, rng)
                                                 : select_ucb(i, stats, cfg, mask);
  }
  if (probs.ftrl <= 0.0 || draw < probs.ucb + probs.exp3)
    return select_exp3(i, stats, cfg, mask, rng);
  return select_ftrl(i, stats, cfg, mask, (k_i - 1) * lambda_i);
}

/**
 * @brief Clipped importance-weighted update applied to every expert table
 *        from one observed solution/reward pair.
 *
 * For each position i with chosen action a = x_i:
 *   N_ia += 1
 *   p~   = max(W_ia / ||W_i||_1, p_min)
 *   r^   = r~ / p~                   (importance-weighted reward)
 *   l^   = min((1 - r~) / p~, cap)   (importance-weighted loss)
 *   V_ia += (r~ - V_ia) / N_ia
 *   W_ia *= exp(eta * r^ / n)
 *   L_ia += l^
 * followed by renormalizing every weight row. The raw reward is first folded
 * into the running range and mapped to r~ in [-1, 1].
 */
inline void update_experts(ExpertStats &stats, const Solution &x, double r_raw,
                           const ExpertConfig &cfg) {
  const int n = stats.positions();
  if (x.size() != n) throw std::invalid_argument("update_experts: solution length mismatch");
  const double r_norm = stats.normalize_reward(r_raw);
  const double loss = 1.0 - r_norm;
  for (int i = 0; i < n; ++i) {
    const int a = x.values[static_cast<std::size_t>(i)];
    stats.bump_count(i, a);
    const double p_clip = std::max(stats.weight(i, a) / stats.row_weight_sum(i), cfg.p_min);
    const double r_hat = r_norm / p_clip;
    const double loss_hat = std::min(loss / p_clip, cfg.loss_cap);
    stats.set_value(i, a, stats.value(i, a) + (r_norm - stats.value(i, a)) / stats.count(i, a));
    stats.scale_weight(i, a, std::exp(cfg.eta * r_hat / n));
    stats.add_loss(i, a, loss_hat);
  }
  stats.normalize_weight_rows();
  stats.bump_round();
}

}  // namespace dnl

#endif  // DNL_EXPERTS_HPP
