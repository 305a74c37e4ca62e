#ifndef EVOSPLIT_SRC_VARIATION_HPP
#define EVOSPLIT_SRC_VARIATION_HPP

#include <cstdint>
#include <vector>

#include "evosplit/baselines.hpp"
#include "evosplit/evolution.hpp"
#include "evosplit/rng.hpp"
#include "evosplit/split_metrics.hpp"

// Population setup and offspring generation shared by the single- and
// multi-objective EAs.
namespace evosplit::internal {

inline std::vector<Assignment> make_population(const MultiLabelDataset& d, const FoldSpec& spec,
                                               const EAParams& params, Rng& rng,
                                               bool* budget_flag) {
  std::vector<Assignment> pop;
  pop.reserve(static_cast<std::size_t>(params.pop_size));
  for (std::int32_t i = 0; i < params.pop_size; ++i) {
    Assignment a = random_split(d, spec, RngSeed{rng.fork_seed()});
    if (params.constrained) a = repair_constraint(a, d, spec, rng, budget_flag);
    pop.push_back(std::move(a));
  }
  return pop;
}

// Linear ranking: rank 0 is best, sampled with weight (n - rank).
inline std::size_t ranked_pick(std::size_t n, Rng& rng) {
  const std::uint64_t total = static_cast<std::uint64_t>(n) * (n + 1) / 2;
  std::uint64_t u = rng.next_below(total);
  for (std::size_t rank = 0;; ++rank) {
    const std::uint64_t weight = static_cast<std::uint64_t>(n - rank);
    if (u < weight) return rank;
    u -= weight;
  }
}

// Crossover then mutation children, each size-repaired (and coverage-repaired
// in constrained mode). parent_at(rank) must return the rank-th best parent.
// Consumes all randomness sequentially so callers can evaluate in parallel.
template <typename ParentAt>
std::vector<Assignment> make_offspring(ParentAt&& parent_at, std::size_t n_parents,
                                       const MultiLabelDataset& d, const FoldSpec& spec,
                                       const EAParams& params, Rng& rng, bool* budget_flag) {
  const std::int64_t m = d.num_examples();
  std::vector<Assignment> children;
  children.reserve(
      static_cast<std::size_t>(params.crossover_offspring + params.mutation_offspring));
  for (std::int32_t i = 0; i < params.crossover_offspring; ++i) {
    const Assignment& p1 = parent_at(ranked_pick(n_parents, rng));
    const Assignment& p2 = parent_at(ranked_pick(n_parents, rng));
    const std::int64_t cut =
        1 + static_cast<std::int64_t>(rng.next_below(static_cast<std::uint64_t>(m - 1)));
    Assignment child = repair_sizes(crossover_one_point(p1, p2, cut), spec, rng);
    if (params.constrained) child = repair_constraint(child, d, spec, rng, budget_flag);
    children.push_back(std::move(child));
  }
  for (std::int32_t i = 0; i < params.mutation_offspring; ++i) {
    const Assignment& parent = parent_at(ranked_pick(n_parents, rng));
    Assignment child = repair_sizes(mutate(parent, params.mutation_rate, spec.k, rng), spec, rng);
    if (params.constrained) child = repair_constraint(child, d, spec, rng, budget_flag);
    children.push_back(std::move(child));
  }
  return children;
}

}  // namespace evosplit::internal

#endif
