#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "evosplit/nsga2.hpp"
#include "evosplit/oracle.hpp"
#include "fixtures.hpp"

using namespace evosplit;
using namespace evosplit::testing;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// O(n^2 * fronts) dominance checker used to validate the fast sort.
std::vector<std::vector<std::size_t>> brute_force_fronts(std::vector<ObjectivePair> points) {
  std::vector<std::size_t> alive(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) alive[i] = i;
  std::vector<std::vector<std::size_t>> fronts;
  while (!alive.empty()) {
    std::vector<std::size_t> front;
    std::vector<std::size_t> rest;
    for (const std::size_t p : alive) {
      bool is_dominated = false;
      for (const std::size_t r : alive) {
        if (r != p && dominates(points[r], points[p])) {
          is_dominated = true;
          break;
        }
      }
      (is_dominated ? rest : front).push_back(p);
    }
    fronts.push_back(std::move(front));
    alive = std::move(rest);
  }
  return fronts;
}

}  // namespace

TEST_CASE("non-dominated sort fixtures") {
  const std::vector<ObjectivePair> points = {{1, 2}, {2, 1}, {2, 2}, {3, 3}};
  const auto fronts = non_dominated_sort(points);
  REQUIRE(fronts.size() == 3);
  CHECK(fronts[0] == std::vector<std::size_t>{0, 1});
  CHECK(fronts[1] == std::vector<std::size_t>{2});
  CHECK(fronts[2] == std::vector<std::size_t>{3});

  const std::vector<ObjectivePair> equal = {{1, 1}, {1, 1}, {1, 1}};
  const auto one = non_dominated_sort(equal);
  REQUIRE(one.size() == 1);
  CHECK(one[0] == std::vector<std::size_t>{0, 1, 2});
}

TEST_CASE("non-dominated sort partitions the index set") {
  Rng rng(404);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + rng.next_below(50);
    std::vector<ObjectivePair> points;
    for (std::size_t i = 0; i < n; ++i) points.push_back({rng.next_double(), rng.next_double()});
    const auto fronts = non_dominated_sort(points);
    std::vector<std::size_t> all;
    for (const auto& front : fronts) all.insert(all.end(), front.begin(), front.end());
    std::sort(all.begin(), all.end());
    std::vector<std::size_t> expect(n);
    for (std::size_t i = 0; i < n; ++i) expect[i] = i;
    CHECK(all == expect);
  }
}

TEST_CASE("non-dominated sort agrees with the brute-force checker") {
  Rng rng(2025);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng.next_below(50);
    std::vector<ObjectivePair> points;
    for (std::size_t i = 0; i < n; ++i) {
      // coarse grid so duplicates and ties happen often
      points.push_back({std::floor(rng.next_double() * 8) / 8.0,
                        std::floor(rng.next_double() * 8) / 8.0});
    }
    CHECK(non_dominated_sort(points) == brute_force_fronts(points));
  }
}

TEST_CASE("crowding distance fixtures") {
  SUBCASE("interior point accumulates both objectives") {
    const std::vector<double> crowd = crowding_distance({{1, 3}, {2, 2}, {3, 1}});
    REQUIRE(crowd.size() == 3);
    CHECK(crowd[0] == kInf);
    CHECK(crowd[1] == doctest::Approx(2.0));
    CHECK(crowd[2] == kInf);
  }
  SUBCASE("two points are both boundary") {
    const std::vector<double> crowd = crowding_distance({{1, 1}, {2, 2}});
    CHECK(crowd == std::vector<double>{kInf, kInf});
  }
  SUBCASE("degenerate ranges contribute zero") {
    const std::vector<double> crowd = crowding_distance({{1, 1}, {1, 1}, {1, 1}});
    REQUIRE(crowd.size() == 3);
    CHECK(crowd[0] == kInf);
    CHECK(crowd[1] == 0.0);
    CHECK(crowd[2] == kInf);
  }
}

TEST_CASE("knee selection") {
  CHECK(select_knee({{3, 4}, {1, 1}, {5, 0}}) == 1);
  CHECK(select_knee({{2, 7}}) == 0);
  // equal distances: lower ld_prime wins
  CHECK(select_knee({{0, 5}, {5, 0}}) == 0);
  CHECK(select_knee({{5, 0}, {0, 5}}) == 1);
  // full tie: first occurrence wins
  CHECK(select_knee({{2, 2}, {2, 2}}) == 0);
  CHECK_THROWS_AS(select_knee({}), std::invalid_argument);
}

TEST_CASE("nsga2 collapses on a uniform dataset") {
  const MultiLabelDataset d = copies_of_single_label(8);
  const FoldSpec spec = FoldSpec::from_targets({4, 4});
  EAParams params;
  params.seed = RngSeed{4};
  const ParetoFront front = nsga2_evolve(d, spec, params, 4);
  REQUIRE(front.size() == 1);
  CHECK(front.objectives[0].ld_prime == doctest::Approx(0.0));
  CHECK(front.objectives[0].lpd == doctest::Approx(0.0));
}

TEST_CASE("nsga2 front on the fixture is sound against the oracle") {
  const MultiLabelDataset d = tiny4();
  const FoldSpec spec = FoldSpec::from_targets({2, 2});
  const OracleResult oracle = exhaustive_optimal(d, spec, Metric::kLdPrime);
  EAParams params;
  params.seed = RngSeed{12};
  const ParetoFront front = nsga2_evolve(d, spec, params, 12);
  REQUIRE(front.size() >= 1);

  const SplitScorer scorer(d, spec);
  for (std::size_t i = 0; i < front.size(); ++i) {
    // stored objectives recompute exactly
    const ObjectivePair again = scorer.objectives(front.assignments[i]);
    CHECK(again == front.objectives[i]);
    // no oracle pair dominates a front member
    for (const ObjectivePair& p : oracle.pareto_pairs) {
      CHECK_FALSE(dominates(p, front.objectives[i]));
    }
    // the front itself is mutually non-dominated
    for (std::size_t j = 0; j < front.size(); ++j) {
      CHECK_FALSE(dominates(front.objectives[j], front.objectives[i]));
    }
  }
}

TEST_CASE("nsga2 knee distance never regresses") {
  const MultiLabelDataset d = imbalanced_dataset(60, 6, 3, 909);
  const FoldSpec spec = FoldSpec::uniform(3, 60);
  EAParams params;
  params.seed = RngSeed{31};
  const ParetoFront front = nsga2_evolve(d, spec, params, 31);
  REQUIRE(front.knee_history.size() >= 2);
  double prev = kInf;
  for (const ObjectivePair& knee : front.knee_history) {
    const double dist = std::hypot(knee.ld_prime, knee.lpd);
    CHECK(dist <= prev + 1e-15);
    prev = dist;
  }
  CHECK(static_cast<std::int64_t>(front.knee_history.size()) == front.generations + 1);
}

TEST_CASE("nsga2 is deterministic") {
  const MultiLabelDataset d = random_dataset(12, 4, 88);
  const FoldSpec spec = FoldSpec::uniform(3, 12);
  EAParams params;
  params.seed = RngSeed{5};
  const ParetoFront a = nsga2_evolve(d, spec, params, 5);
  const ParetoFront b = nsga2_evolve(d, spec, params, 5);
  CHECK(a.objectives == b.objectives);
  CHECK(a.assignments == b.assignments);
}
