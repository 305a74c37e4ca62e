#ifndef EVOSPLIT_EVOLUTION_HPP
#define EVOSPLIT_EVOLUTION_HPP

#include <cstdint>
#include <vector>

#include "evosplit/rng.hpp"
#include "evosplit/split_metrics.hpp"

namespace evosplit {

enum class FitnessMetric { kLdPrime, kLpd };

struct EAParams {
  std::int32_t pop_size = 50;
  std::int32_t crossover_offspring = 10;
  std::int32_t mutation_offspring = 10;
  std::int32_t stale_generations_max = 25;
  double mutation_rate = 0.01;
  std::int32_t runs = 5;
  FitnessMetric fitness = FitnessMetric::kLdPrime;
  bool constrained = false;
  RngSeed seed;
  double improvement_epsilon = 1e-12;
};

struct EAResult {
  Assignment best_assignment;
  double best_fitness = 0.0;
  std::int64_t generations = 0;
  std::int32_t run_index = 0;
  std::vector<double> history;  // population best per generation, entry 0 = initial
  bool constraint_repair_incomplete = false;  // a repair ran out of swap budget
};

/// n random size-feasible individuals (constraint-repaired when configured).
std::vector<Assignment> init_population(const MultiLabelDataset& d, const FoldSpec& spec,
                                        const EAParams& params);

/// Child takes parent 1's genes below the cut, parent 2's from it on.
/// Requires equal lengths and 0 < cut < m; the child is generally not
/// size-feasible and must be repaired.
Assignment crossover_one_point(const Assignment& p1, const Assignment& p2, std::int64_t cut);

/// Reassigns exactly max(1, round(rate*m)) distinct genes, each to a
/// uniformly drawn different fold. Requires k >= 2.
Assignment mutate(const Assignment& a, double rate, std::int32_t k, Rng& rng);

/// Moves genes out of over-full folds into seeded-uniformly chosen
/// under-full folds until every fold matches its target; genes in
/// correctly filled folds stay put.
Assignment repair_sizes(const Assignment& a, const FoldSpec& spec, Rng& rng);

/// Best-effort coverage repair: for every label with presence >= k missing
/// from some fold, swaps in a carrier from a fold holding at least two,
/// against an example whose removal breaks no other satisfied label. The
/// input must be size-feasible; swaps preserve sizes. Bounded at 10*q*k
/// attempts; sets *budget_exhausted when it gives up.
Assignment repair_constraint(const Assignment& a, const MultiLabelDataset& d, const FoldSpec& spec,
                             Rng& rng, bool* budget_exhausted = nullptr);

/// One EA run: ranked parent selection, 1-point crossover and gene
/// mutation, size (and optional coverage) repair, elitist survival of the
/// best n; stops once the best fitness stalls for stale_generations_max
/// generations.
EAResult evolve(const MultiLabelDataset& d, const FoldSpec& spec, const EAParams& params,
                std::uint64_t run_seed, std::int32_t run_index = 0);

/// params.runs independent runs seeded master_seed + run_index; returns the
/// best result, ties to the lowest run index.
EAResult run_best_of(const MultiLabelDataset& d, const FoldSpec& spec, const EAParams& params);

}  // namespace evosplit

#endif
