#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "evosplit/baselines.hpp"
#include "evosplit/oracle.hpp"
#include "evosplit/reference.hpp"
#include "evosplit/split_metrics.hpp"
#include "fixtures.hpp"

using namespace evosplit;
using namespace evosplit::testing;

namespace {

const FoldSpec kHalf = FoldSpec::from_targets({2, 2});

}  // namespace

TEST_CASE("fold spec rounding") {
  SUBCASE("uniform largest remainder, ties to the lower fold") {
    const FoldSpec spec = FoldSpec::uniform(3, 10);
    CHECK(spec.targets == std::vector<std::int64_t>{4, 3, 3});
    CHECK(spec.total() == 10);
  }
  SUBCASE("explicit proportions") {
    const FoldSpec spec = FoldSpec::from_proportions({0.5, 0.25, 0.25}, 5);
    CHECK(spec.targets == std::vector<std::int64_t>{3, 1, 1});
  }
  SUBCASE("proportions must sum to one") {
    CHECK_THROWS_AS(FoldSpec::from_proportions({0.5, 0.4}, 10), std::invalid_argument);
  }
  SUBCASE("split validation rejects k=1 and empty folds") {
    CHECK_THROWS_AS(FoldSpec::from_targets({4}).validate_for_split(), std::invalid_argument);
    CHECK_THROWS_AS(FoldSpec::from_targets({4, 0}).validate_for_split(), std::invalid_argument);
    CHECK_NOTHROW(kHalf.validate_for_split());
  }
}

TEST_CASE("label distribution fixtures") {
  const MultiLabelDataset d = tiny4();
  CHECK(label_distribution(d, assignment({0, 1, 0, 1}), kHalf) == doctest::Approx(1.0));
  CHECK(label_distribution(d, assignment({0, 0, 1, 1}), kHalf) ==
        doctest::Approx(4.0 / 3.0).epsilon(1e-9));

  const MultiLabelDataset uniform = copies_of_single_label(4);
  CHECK(label_distribution(uniform, assignment({0, 1, 0, 1}), kHalf) == doctest::Approx(0.0));

  CHECK_THROWS_AS(label_distribution(d, assignment({0, 0, 0, 1}), kHalf), std::invalid_argument);
}

TEST_CASE("modified label distribution fixtures") {
  const MultiLabelDataset d = tiny4();
  CHECK(modified_label_distribution(d, assignment({0, 1, 0, 1}), kHalf) ==
        doctest::Approx(7.0 / 72.0).epsilon(1e-9));
  CHECK(std::abs(modified_label_distribution(d, assignment({0, 1, 0, 1}), kHalf) - 0.09722) <
        1e-5);

  const MultiLabelDataset uniform = copies_of_single_label(4);
  CHECK(modified_label_distribution(uniform, assignment({0, 1, 0, 1}), kHalf) ==
        doctest::Approx(0.0));

  // multiplicity-weighted variant: e0 becomes {A:2}
  const MultiLabelDataset weighted =
      from_rows(3, {{{0, 2}}, {{0, 1}, {1, 1}}, {{1, 1}, {2, 1}}, {{0, 1}, {1, 1}, {2, 1}}});
  const Assignment a = assignment({0, 1, 0, 1});
  CHECK(modified_label_distribution(weighted, a, kHalf) ==
        doctest::Approx(reference::modified_label_distribution(weighted, a, kHalf))
            .epsilon(1e-12));
}

TEST_CASE("label pair distribution fixtures") {
  const MultiLabelDataset d = tiny4();
  CHECK(label_pair_distribution(d, assignment({0, 1, 0, 1}), kHalf) == doctest::Approx(0.5));

  const MultiLabelDataset singletons = from_rows(4, {{{0, 1}}, {{1, 1}}, {{2, 1}}, {{0, 1}}});
  CHECK(label_pair_distribution(singletons, assignment({0, 1, 0, 1}), kHalf) ==
        doctest::Approx(0.0));

  // [0,0,1,1] scored by the brute-force sweep: it is not optimal for LPD
  const double value = label_pair_distribution(d, assignment({0, 0, 1, 1}), kHalf);
  CHECK(value == doctest::Approx(reference::label_pair_distribution(d, assignment({0, 0, 1, 1}),
                                                                    kHalf))
                     .epsilon(1e-12));
  const OracleResult oracle = exhaustive_optimal(d, kHalf, Metric::kLpd);
  CHECK(value > oracle.optimum_value);
}

TEST_CASE("examples distribution fixtures") {
  CHECK(examples_distribution(assignment({0, 0, 1, 1}), kHalf) == doctest::Approx(0.0));
  CHECK(examples_distribution(assignment({0, 0, 0, 1}), kHalf) == doctest::Approx(1.0));
  CHECK(examples_distribution(assignment({0, 0, 0, 0}), kHalf) == doctest::Approx(2.0));
}

TEST_CASE("zero count fixtures") {
  const MultiLabelDataset d = tiny4();
  CHECK(zero_counts(d, assignment({0, 1, 0, 1}), kHalf) ==
        std::pair<std::int64_t, std::int64_t>{0, 0});
  CHECK(zero_counts(d, assignment({0, 0, 1, 1}), kHalf) ==
        std::pair<std::int64_t, std::int64_t>{1, 1});

  // single-fold degenerate: the fold is the whole dataset
  const FoldSpec whole = FoldSpec::from_targets({4});
  CHECK(zero_counts(d, assignment({0, 0, 0, 0}), whole) ==
        std::pair<std::int64_t, std::int64_t>{0, 0});
}

TEST_CASE("evaluate_split aggregates everything") {
  const MultiLabelDataset d = tiny4();
  const SplitReport r = evaluate_split(d, assignment({0, 1, 0, 1}), kHalf);
  CHECK(r.ld == doctest::Approx(1.0));
  CHECK(r.ld_prime == doctest::Approx(7.0 / 72.0).epsilon(1e-9));
  CHECK(r.lpd == doctest::Approx(0.5));
  CHECK(r.ed == doctest::Approx(0.0));
  CHECK(r.fz == 0);
  CHECK(r.flz == 0);
  CHECK(r.fold_sizes == std::vector<std::int64_t>{2, 2});
  CHECK(r.constrained_feasible);

  const SplitReport r2 = evaluate_split(d, assignment({0, 0, 1, 1}), kHalf);
  CHECK(r2.ed == doctest::Approx(0.0));
  CHECK(r2.fz == 1);
  CHECK(r2.flz == 1);
  CHECK_FALSE(r2.constrained_feasible);

  // size-infeasible assignments still get a full report
  const SplitReport r3 = evaluate_split(d, assignment({0, 0, 0, 1}), kHalf);
  CHECK(r3.ed == doctest::Approx(1.0));
  CHECK(r3.fold_sizes == std::vector<std::int64_t>{3, 1});
  CHECK(r3.constrained_feasible);  // independent of ed
}

TEST_CASE("perfectly proportional split scores zero") {
  // two copies of the fixture, one copy per fold
  std::vector<std::vector<LabelCount>> rows;
  const MultiLabelDataset base = tiny4();
  for (int copy = 0; copy < 2; ++copy) {
    for (const auto& row : base.entries()) rows.push_back(row);
  }
  const MultiLabelDataset d = from_rows(3, std::move(rows));
  const FoldSpec spec = FoldSpec::from_targets({4, 4});
  const Assignment a = assignment({0, 0, 0, 0, 1, 1, 1, 1});
  CHECK(label_distribution(d, a, spec) == doctest::Approx(0.0));
  CHECK(modified_label_distribution(d, a, spec) == doctest::Approx(0.0));
  CHECK(label_pair_distribution(d, a, spec) == doctest::Approx(0.0));
}

TEST_CASE("measures are non-negative and permutation invariant") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const MultiLabelDataset d = random_dataset(12, 4, seed);
    const FoldSpec spec = FoldSpec::uniform(3, 12);
    const Assignment a = random_split(d, spec, RngSeed{seed * 31});
    const SplitReport r = evaluate_split(d, a, spec);
    CHECK(r.ld >= 0.0);
    CHECK(r.ld_prime >= 0.0);
    CHECK(r.lpd >= 0.0);
    CHECK(r.ed >= 0.0);
    if (r.flz == 0) CHECK(r.fz == 0);

    // fold relabeling: swap folds 0 and 2
    Assignment swapped = a;
    for (std::int32_t& f : swapped.fold_of) f = f == 0 ? 2 : (f == 2 ? 0 : f);
    const FoldSpec swapped_spec =
        FoldSpec::from_targets({spec.targets[2], spec.targets[1], spec.targets[0]});
    const SplitReport rs = evaluate_split(d, swapped, swapped_spec);
    CHECK(rs.ld == doctest::Approx(r.ld).epsilon(1e-12));
    CHECK(rs.ld_prime == doctest::Approx(r.ld_prime).epsilon(1e-12));
    CHECK(rs.lpd == doctest::Approx(r.lpd).epsilon(1e-12));
    CHECK(rs.flz == r.flz);

    // label relabeling: reverse label ids
    std::vector<std::vector<LabelCount>> rows;
    for (const auto& row : d.entries()) {
      std::vector<LabelCount> out;
      for (const LabelCount& lc : row) out.push_back({3 - lc.label, lc.count});
      std::sort(out.begin(), out.end(),
                [](const LabelCount& x, const LabelCount& y) { return x.label < y.label; });
      rows.push_back(std::move(out));
    }
    const MultiLabelDataset relabeled = from_rows(4, std::move(rows));
    const SplitReport rl = evaluate_split(relabeled, a, spec);
    CHECK(rl.ld == doctest::Approx(r.ld).epsilon(1e-12));
    CHECK(rl.ld_prime == doctest::Approx(r.ld_prime).epsilon(1e-12));
    CHECK(rl.lpd == doctest::Approx(r.lpd).epsilon(1e-12));

    // example permutation: reverse rows and the assignment together
    std::vector<std::vector<LabelCount>> reversed_rows(d.entries().rbegin(), d.entries().rend());
    const MultiLabelDataset reversed = from_rows(4, std::move(reversed_rows));
    Assignment ra;
    ra.fold_of.assign(a.fold_of.rbegin(), a.fold_of.rend());
    const SplitReport rr = evaluate_split(reversed, ra, spec);
    CHECK(rr.ld == doctest::Approx(r.ld).epsilon(1e-12));
    CHECK(rr.lpd == doctest::Approx(r.lpd).epsilon(1e-12));
  }
}

TEST_CASE("kernels agree with the straight-line reference") {
  for (std::uint64_t seed = 50; seed < 62; ++seed) {
    const MultiLabelDataset d = random_dataset(15, 5, seed, 0.4);
    const FoldSpec spec = FoldSpec::uniform(3, 15);
    const Assignment a = random_split(d, spec, RngSeed{seed});
    CHECK(label_distribution(d, a, spec) ==
          doctest::Approx(reference::label_distribution(d, a, spec)).epsilon(1e-12));
    CHECK(modified_label_distribution(d, a, spec) ==
          doctest::Approx(reference::modified_label_distribution(d, a, spec)).epsilon(1e-12));
    CHECK(label_pair_distribution(d, a, spec) ==
          doctest::Approx(reference::label_pair_distribution(d, a, spec)).epsilon(1e-12));
  }
}

TEST_CASE("ed is zero exactly for size-feasible assignments") {
  const FoldSpec spec = FoldSpec::uniform(3, 9);
  Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    Assignment a;
    for (int i = 0; i < 9; ++i) {
      a.fold_of.push_back(static_cast<std::int32_t>(rng.next_below(3)));
    }
    const bool feasible = fold_sizes(a, 3) == spec.targets;
    CHECK((examples_distribution(a, spec) == 0.0) == feasible);
  }
}

TEST_CASE("ld and ld_prime rank single-label assignments identically") {
  // every example carries exactly one label; exhaustive m=6 instances
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    Rng rng(seed);
    std::vector<std::vector<LabelCount>> rows;
    for (int i = 0; i < 6; ++i) {
      rows.push_back({{static_cast<std::int32_t>(rng.next_below(3)), 1}});
    }
    const MultiLabelDataset d = from_rows(3, std::move(rows));
    const FoldSpec spec = FoldSpec::from_targets({3, 3});
    const OracleResult via_ld = exhaustive_optimal(d, spec, Metric::kLd);
    const OracleResult via_ld_prime = exhaustive_optimal(d, spec, Metric::kLdPrime);
    CHECK(via_ld.optimizers == via_ld_prime.optimizers);
  }
}
