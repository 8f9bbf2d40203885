/**
 * @file problems.hpp
 * @brief Benchmark instance generation and objective evaluation for the
 *        multi-objective TSP, knapsack, and capacitated VRP families.
 *
 * Conventions shared by all three generators:
 *   - coordinates are sampled uniformly from the unit square,
 *   - generation is a pure function of (parameters, seed),
 *   - capacities for the canonical benchmark sizes are built in; any
 *     other size requires an explicit capacity.
 */

#ifndef DNL_PROBLEMS_HPP
#define DNL_PROBLEMS_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "dnl/prng.hpp"
#include "dnl/problem.hpp"

namespace dnl {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

inline double euclidean(const Point &a, const Point &b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return std::sqrt(dx * dx + dy * dy);
}

// ---------------------------------------------------------------------------
// Multi-objective TSP
// ---------------------------------------------------------------------------

/// m-objective TSP instance: one coordinate set per objective, each holding
/// n points in [0,1]^2. Objective i is the cyclic tour length under set i.
struct TspInstance {
  int n = 0;
  int m = 0;
  std::uint64_t seed = 0;
  std::vector<std::vector<Point>> coords;  // m sets of n points
};

inline TspInstance gen_tsp(int n, int m, std::uint64_t seed) {
  if (n < 3) throw std::invalid_argument("gen_tsp: n must be >= 3");
  if (m != 2 && m != 3) throw std::invalid_argument("gen_tsp: m must be 2 or 3");
  TspInstance inst;
  inst.n = n;
  inst.m = m;
  inst.seed = seed;
  Rng rng(seed);
  inst.coords.assign(static_cast<std::size_t>(m), {});
  for (auto &set : inst.coords) {
    set.resize(static_cast<std::size_t>(n));
    for (auto &p : set) {
      p.x = rng.uniform();
      p.y = rng.uniform();
    }
  }
  return inst;
}

/// Tour lengths (one per coordinate set) of a cyclic tour.
inline ObjVec eval_tsp(const TspInstance &inst, const Solution &x) {
  if (x.size() != inst.n || !x.is_permutation())
    throw std::invalid_argument("eval_tsp: solution is not a permutation of the cities");
  ObjVec f(static_cast<std::size_t>(inst.m), 0.0);
  for (int i = 0; i < inst.m; ++i) {
    const auto &set = inst.coords[static_cast<std::size_t>(i)];
    double total = 0.0;
    for (int j = 0; j < inst.n; ++j) {
      const int a = x.values[static_cast<std::size_t>(j)];
      const int b = x.values[static_cast<std::size_t>((j + 1) % inst.n)];
      total += euclidean(set[static_cast<std::size_t>(a)], set[static_cast<std::size_t>(b)]);
    }
    f[static_cast<std::size_t>(i)] = total;
  }
  return f;
}

// ---------------------------------------------------------------------------
// Multi-objective knapsack
// ---------------------------------------------------------------------------

/// m-objective knapsack: weights and per-objective values in (0,1),
/// maximize each value total subject to one capacity.
struct KpInstance {
  int n = 0;
  int m = 0;
  std::uint64_t seed = 0;
  double capacity = 0.0;
  std::vector<double> weights;              // n
  std::vector<std::vector<double>> values;  // m x n
};

/// Canonical capacity C in {12.5, 25, 25} for n in {50, 100, 200}.
inline double kp_canonical_capacity(int n) {
  switch (n) {
    case 50: return 12.5;
    case 100: return 25.0;
    case 200: return 25.0;
    default:
      throw std::invalid_argument(
          "gen_kp: no built-in capacity for this n; pass one explicitly");
  }
}

inline KpInstance gen_kp(int n, int m, std::uint64_t seed, double capacity = -1.0) {
  if (n < 1) throw std::invalid_argument("gen_kp: n must be positive");
  if (m != 2 && m != 3) throw std::invalid_argument("gen_kp: m must be 2 or 3");
  KpInstance inst;
  inst.n = n;
  inst.m = m;
  inst.seed = seed;
  inst.capacity = capacity > 0.0 ? capacity : kp_canonical_capacity(n);
  Rng rng(seed);
  inst.weights.resize(static_cast<std::size_t>(n));
  for (auto &w : inst.weights) {
    do {
      w = rng.uniform();
    } while (w <= 0.0);
  }
  inst.values.assign(static_cast<std::size_t>(m), std::vector<double>(static_cast<std::size_t>(n)));
  for (auto &row : inst.values) {
    for (auto &v : row) {
      do {
        v = rng.uniform();
      } while (v <= 0.0);
    }
  }
  return inst;
}

/// Per-objective value totals plus a feasibility flag (never throws on an
/// over-capacity selection; infeasibility is data, not an error).
inline std::pair<ObjVec, bool> eval_kp(const KpInstance &inst, const Solution &x) {
  if (x.size() != inst.n)
    throw std::invalid_argument("eval_kp: solution length mismatch");
  ObjVec f(static_cast<std::size_t>(inst.m), 0.0);
  double load = 0.0;
  for (int j = 0; j < inst.n; ++j) {
    if (x.values[static_cast<std::size_t>(j)] == 0) continue;
    load += inst.weights[static_cast<std::size_t>(j)];
    for (int i = 0; i < inst.m; ++i)
      f[static_cast<std::size_t>(i)] += inst.values[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }
  return {f, load <= inst.capacity};
}

/// Greedy repair: drop selected items by ascending total-value-to-weight
/// ratio until the load fits. Only removals, so the result is a subset of
/// the input selection.
inline Solution repair_kp(const KpInstance &inst, Solution x) {
  if (x.size() != inst.n)
    throw std::invalid_argument("repair_kp: solution length mismatch");
  double load = 0.0;
  for (int j = 0; j < inst.n; ++j)
    if (x.values[static_cast<std::size_t>(j)] != 0) load += inst.weights[static_cast<std::size_t>(j)];
  if (load <= inst.capacity) return x;

  std::vector<int> selected;
  for (int j = 0; j < inst.n; ++j)
    if (x.values[static_cast<std::size_t>(j)] != 0) selected.push_back(j);
  auto ratio = [&inst](int j) {
    double total = 0.0;
    for (int i = 0; i < inst.m; ++i) total += inst.values[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    return total / inst.weights[static_cast<std::size_t>(j)];
  };
  std::sort(selected.begin(), selected.end(), [&](int a, int b) {
    const double ra = ratio(a), rb = ratio(b);
    if (ra != rb) return ra < rb;
    return a < b;
  });
  for (int j : selected) {
    if (load <= inst.capacity) break;
    x.values[static_cast<std::size_t>(j)] = 0;
    load -= inst.weights[static_cast<std::size_t>(j)];
  }
  return x;
}

// ---------------------------------------------------------------------------
// Bi-objective CVRP
// ---------------------------------------------------------------------------

/// Bi-objective CVRP instance. coords[0] is the depot at (0.5, 0.5);
/// coords[1..n] are customers with integer demands in {1..9}.
struct CvrpInstance {
  int n = 0;  // customer count
  std::uint64_t seed = 0;
  int capacity = 0;
  std::vector<Point> coords;  // n + 1, depot first
  std::vector<int> demands;   // n
};

/// Canonical capacity D in {30, 40, 50} for n in {20, 50, 100}.
inline int cvrp_canonical_capacity(int n) {
  switch (n) {
    case 20: return 30;
    case 50: return 40;
    case 100: return 50;
    default:
      throw std::invalid_argument(
          "gen_cvrp: no built-in capacity for this n; pass one explicitly");
  }
}

inline CvrpInstance gen_cvrp(int n, std::uint64_t seed, int capacity = -1) {
  if (n < 1) throw std::invalid_argument("gen_cvrp: n must be positive");
  CvrpInstance inst;
  inst.n = n;
  inst.seed = seed;
  inst.capacity = capacity > 0 ? capacity : cvrp_canonical_capacity(n);
  Rng rng(seed);
  inst.coords.resize(static_cast<std::size_t>(n) + 1);
  inst.coords[0] = {0.5, 0.5};
  for (int j = 1; j <= n; ++j) {
    inst.coords[static_cast<std::size_t>(j)].x = rng.uniform();
    inst.coords[static_cast<std::size_t>(j)].y = rng.uniform();
  }
  inst.demands.resize(static_cast<std::size_t>(n));
  for (auto &d : inst.demands) d = 1 + rng.uniform_int(9);
  for (int d : inst.demands) {
    if (d > inst.capacity)
      throw std::invalid_argument("gen_cvrp: capacity smaller than a single demand");
  }
  return inst;
}

/// Capacity-constrained splitting: scan the permutation left to right and
/// start a new route whenever the next customer would overflow the vehicle.
/// Customers are 0-based (customer c sits at coords[c + 1]).
inline std::vector<std::vector<int>> split_routes(const CvrpInstance &inst, const Solution &perm) {
  if (perm.size() != inst.n || !perm.is_permutation())
    throw std::invalid_argument("split_routes: solution is not a permutation of the customers");
  std::vector<std::vector<int>> routes;
  std::vector<int> current;
  int load = 0;
  for (int slot = 0; slot < inst.n; ++slot) {
    const int customer = perm.values[static_cast<std::size_t>(slot)];
    const int demand = inst.demands[static_cast<std::size_t>(customer)];
    if (!current.empty() && load + demand > inst.capacity) {
      routes.push_back(std::move(current));
      current.clear();
      load = 0;
    }
    current.push_back(customer);
    load += demand;
  }
  if (!current.empty()) routes.push_back(std::move(current));
  return routes;
}

/// (total distance, makespan) over the capacity-split routes; every route
/// includes the depot->first and last->depot legs.
inline ObjVec eval_cvrp(const CvrpInstance &inst, const Solution &perm) {
  const auto routes = split_routes(inst, perm);
  double total = 0.0;
  double longest = 0.0;
  for (const auto &route : routes) {
    double len = 0.0;
    Point prev = inst.coords[0];
    for (int customer : route) {
      const Point &p = inst.coords[static_cast<std::size_t>(customer) + 1];
      len += euclidean(prev, p);
      prev = p;
    }
    len += euclidean(prev, inst.coords[0]);
    total += len;
    longest = std::max(longest, len);
  }
  return {total, longest};
}

// ---------------------------------------------------------------------------
// Index distances for k-NN subproblem construction
// ---------------------------------------------------------------------------

/// TSP: Euclidean distance averaged over the m coordinate sets.
inline std::vector<std::vector<double>> index_distance(const TspInstance &inst) {
  const auto n = static_cast<std::size_t>(inst.n);
  std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double sum = 0.0;
      for (const auto &set : inst.coords) sum += euclidean(set[i], set[j]);
      const double avg = sum / inst.m;
      d[i][j] = avg;
      d[j][i] = avg;
    }
  }
  return d;
}

/// Knapsack: distance between mean value-to-weight ratios.
inline std::vector<std::vector<double>> index_distance(const KpInstance &inst) {
  const auto n = static_cast<std::size_t>(inst.n);
  std::vector<double> ratio(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    double total = 0.0;
    for (const auto &row : inst.values) total += row[j];
    ratio[j] = total / inst.m / inst.weights[j];
  }
  std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) d[i][j] = std::abs(ratio[i] - ratio[j]);
  return d;
}

/// CVRP: Euclidean distance between customers (depot excluded).
inline std::vector<std::vector<double>> index_distance(const CvrpInstance &inst) {
  const auto n = static_cast<std::size_t>(inst.n);
  std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double dist = euclidean(inst.coords[i + 1], inst.coords[j + 1]);
      d[i][j] = dist;
      d[j][i] = dist;
    }
  return d;
}

// ---------------------------------------------------------------------------
// Problem adapters
// ---------------------------------------------------------------------------

class TspProblem final : public Problem {
public:
  explicit TspProblem(TspInstance inst) : inst_(std::move(inst)) {}

  Domain domain() const override { return Domain::permutation; }
  Sense sense() const override { return Sense::minimize; }
  int size() const override { return inst_.n; }
  int num_actions() const override { return inst_.n; }
  int num_objectives() const override { return inst_.m; }
  ObjVec evaluate(const Solution &x) const override { return eval_tsp(inst_, x); }
  std::vector<std::vector<double>> index_distance() const override {
    return dnl::index_distance(inst_);
  }

  const TspInstance &instance() const { return inst_; }

private:
  TspInstance inst_;
};

class KpProblem final : public Problem {
public:
  explicit KpProblem(KpInstance inst) : inst_(std::move(inst)) {}

  Domain domain() const override { return Domain::binary; }
  Sense sense() const override { return Sense::maximize; }
  int size() const override { return inst_.n; }
  int num_actions() const override { return 2; }
  int num_objectives() const override { return inst_.m; }
  ObjVec evaluate(const Solution &x) const override { return eval_kp(inst_, x).first; }
  Solution repair(Solution x) const override { return repair_kp(inst_, std::move(x)); }
  std::vector<std::vector<double>> index_distance() const override {
    return dnl::index_distance(inst_);
  }

  const KpInstance &instance() const { return inst_; }

private:
  KpInstance inst_;
};

class CvrpProblem final : public Problem {
public:
  explicit CvrpProblem(CvrpInstance inst) : inst_(std::move(inst)) {}

  Domain domain() const override { return Domain::permutation; }
  Sense sense() const override { return Sense::minimize; }
  int size() const override { return inst_.n; }
  int num_actions() const override { return inst_.n; }
  int num_objectives() const override { return 2; }
  ObjVec evaluate(const Solution &x) const override { return eval_cvrp(inst_, x); }
  std::vector<std::vector<double>> index_distance() const override {
    return dnl::index_distance(inst_);
  }

  const CvrpInstance &instance() const { return inst_; }

private:
  CvrpInstance inst_;
};

}  // namespace dnl

#endif  // DNL_PROBLEMS_HPP
