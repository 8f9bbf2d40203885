#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <vector>

#include "dnl/decomposition.hpp"
#include "dnl/prng.hpp"

using namespace dnl;

TEST_CASE("overlap_schedule floor arithmetic") {
  REQUIRE(overlap_schedule(6, 0.5, 1) == 6);
  REQUIRE(overlap_schedule(6, 0.5, 4) == 3);
  REQUIRE(overlap_schedule(6, 0.5, 9) == 2);
  REQUIRE(overlap_schedule(6, 0.5, 37) == 0);
  for (long t : {1L, 10L, 1000L}) REQUIRE(overlap_schedule(5, 0.0, t) == 5);
  REQUIRE_THROWS_AS(overlap_schedule(5, 0.5, 0), std::invalid_argument);
}

TEST_CASE("overlap_schedule is non-increasing and vanishes") {
  int prev = overlap_schedule(9, 0.5, 1);
  for (long t = 2; t <= 200; ++t) {
    const int o = overlap_schedule(9, 0.5, t);
    REQUIRE(o <= prev);
    prev = o;
  }
  REQUIRE(overlap_schedule(9, 0.5, 9 * 9 + 1) == 0);
}

TEST_CASE("exponential schedule alternative decays") {
  REQUIRE(overlap_schedule_exp(6, 0.1, 1) == 5);  // floor(6 * 0.9)
  int prev = 6;
  for (long t = 1; t <= 100; ++t) {
    const int o = overlap_schedule_exp(6, 0.1, t);
    REQUIRE(o <= prev);
    prev = o;
  }
  REQUIRE(prev == 0);
}

TEST_CASE("sliding_window n=10 s=4 o=2 gives the four staggered windows") {
  const Decomposition d = sliding_window(10, 4, 2);
  REQUIRE(d.subproblems.size() == 4);
  REQUIRE(d.subproblems[0].indices == std::vector<int>{0, 1, 2, 3});
  REQUIRE(d.subproblems[1].indices == std::vector<int>{2, 3, 4, 5});
  REQUIRE(d.subproblems[2].indices == std::vector<int>{4, 5, 6, 7});
  REQUIRE(d.subproblems[3].indices == std::vector<int>{6, 7, 8, 9});
  REQUIRE(*std::max_element(d.multiplicity.begin(), d.multiplicity.end()) == 2);
  REQUIRE(d.overlap_set == std::vector<int>{2, 3, 4, 5, 6, 7});
}

TEST_CASE("sliding_window monolithic and disjoint cases") {
  const Decomposition mono = sliding_window(10, 10, 0);
  REQUIRE(mono.subproblems.size() == 1);
  REQUIRE(mono.subproblems[0].size() == 10);

  const Decomposition disjoint = sliding_window(10, 4, 0);
  REQUIRE(disjoint.subproblems.size() == 3);
  REQUIRE(disjoint.subproblems[2].indices == std::vector<int>{8, 9});
  REQUIRE(disjoint.overlap_set.empty());

  REQUIRE_THROWS_AS(sliding_window(10, 4, 4), std::invalid_argument);
  REQUIRE_THROWS_AS(sliding_window(10, 11, 0), std::invalid_argument);
}

TEST_CASE("consecutive full windows share exactly o indices") {
  for (int n : {12, 20, 37}) {
    for (int s : {4, 6, 9}) {
      for (int o = 0; o < s; ++o) {
        const Decomposition d = sliding_window(n, s, o);
        REQUIRE(d.covers_all());
        for (std::size_t k = 0; k + 1 < d.subproblems.size(); ++k) {
          const auto &a = d.subproblems[k].indices;
          const auto &b = d.subproblems[k + 1].indices;
          if (static_cast<int>(a.size()) < s || static_cast<int>(b.size()) < s) continue;
          std::vector<int> shared;
          std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                                std::back_inserter(shared));
          REQUIRE(static_cast<int>(shared.size()) == o);
        }
      }
    }
  }
}

TEST_CASE("knn_subproblem on the line metric picks the symmetric neighborhood") {
  const int n = 10;
  std::vector<std::vector<double>> line(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) line[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = std::abs(i - j);
  REQUIRE(knn_subproblem(line, 4, 3).indices == std::vector<int>{3, 4, 5});
  REQUIRE(knn_subproblem(line, 0, 10).size() == 10);
  REQUIRE_THROWS_AS(knn_subproblem(line, 0, 11), std::invalid_argument);
}

TEST_CASE("knn_subproblem matches brute force over subsets containing the center") {
  Rng rng(31);
  const int n = 8, s = 4;
  std::vector<std::vector<double>> dist(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double v = rng.uniform();
      dist[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = v;
      dist[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = v;
    }
  for (int c = 0; c < n; ++c) {
    double best_sum = 1e18;
    std::vector<int> best_set;
    for (int mask = 0; mask < (1 << n); ++mask) {
      if (!(mask >> c & 1) || __builtin_popcount(static_cast<unsigned>(mask)) != s) continue;
      double sum = 0.0;
      std::vector<int> set;
      for (int j = 0; j < n; ++j)
        if (mask >> j & 1) {
          sum += dist[static_cast<std::size_t>(c)][static_cast<std::size_t>(j)];
          set.push_back(j);
        }
      if (sum < best_sum - 1e-15) {
        best_sum = sum;
        best_set = set;
      }
    }
    const Subproblem sub = knn_subproblem(dist, c, s);
    double got_sum = 0.0;
    for (int j : sub.indices) got_sum += dist[static_cast<std::size_t>(c)][static_cast<std::size_t>(j)];
    REQUIRE_THAT(got_sum, Catch::Matchers::WithinAbs(best_sum, 1e-12));
    REQUIRE(sub.contains(c));
  }
}

TEST_CASE("multiplicity_check on the documented cases") {
  const auto disjoint = multiplicity_check(sliding_window(10, 4, 0));
  REQUIRE(disjoint.rho == 1);
  REQUIRE(disjoint.lhs == 0);
  REQUIRE(disjoint.rhs == 0);
  REQUIRE(disjoint.bound_ok);

  const auto staggered = multiplicity_check(sliding_window(10, 4, 2));
  REQUIRE(staggered.rho == 2);
  REQUIRE(staggered.lhs == 6);
  REQUIRE(staggered.rhs == 10);
  REQUIRE(staggered.bound_ok);

  const auto mono = multiplicity_check(sliding_window(10, 10, 0));
  REQUIRE(mono.rho == 1);
  REQUIRE(mono.bound_ok);
}

TEST_CASE("coverage and counting bound hold across a sweep grid") {
  for (int n : {5, 10, 17, 40}) {
    for (int s = 1; s <= n; ++s) {
      for (int o = 0; o < s; ++o) {
        const Decomposition d = sliding_window(n, s, o);
        REQUIRE(d.covers_all());
        REQUIRE(multiplicity_check(d).bound_ok);
      }
    }
  }
}
