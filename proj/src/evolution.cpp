#include "evosplit/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "evosplit/baselines.hpp"
#include "evosplit/parallel.hpp"
#include "variation.hpp"

namespace evosplit {

namespace {

void validate_params(const EAParams& params) {
  if (params.pop_size < 1) throw std::invalid_argument("pop_size must be >= 1");
  if (params.crossover_offspring < 0 || params.mutation_offspring < 0 ||
      params.crossover_offspring + params.mutation_offspring < 1) {
    throw std::invalid_argument("need at least one offspring per generation");
  }
  if (!(params.mutation_rate > 0.0) || params.mutation_rate > 1.0) {
    throw std::invalid_argument("mutation_rate must be in (0, 1]");
  }
  if (params.runs < 1) throw std::invalid_argument("runs must be >= 1");
  if (params.stale_generations_max < 1) throw std::invalid_argument("gen_max must be >= 1");
}

}  // namespace

std::vector<Assignment> init_population(const MultiLabelDataset& d, const FoldSpec& spec,
                                        const EAParams& params) {
  validate_params(params);
  spec.validate_for_split();
  Rng rng(params.seed.master_seed);
  return internal::make_population(d, spec, params, rng, nullptr);
}

Assignment crossover_one_point(const Assignment& p1, const Assignment& p2, std::int64_t cut) {
  if (p1.size() != p2.size()) throw std::invalid_argument("parents differ in length");
  if (cut <= 0 || cut >= p1.size()) throw std::invalid_argument("cut point out of range");
  Assignment child;
  child.fold_of.reserve(p1.fold_of.size());
  child.fold_of.assign(p1.fold_of.begin(), p1.fold_of.begin() + cut);
  child.fold_of.insert(child.fold_of.end(), p2.fold_of.begin() + cut, p2.fold_of.end());
  return child;
}

Assignment mutate(const Assignment& a, double rate, std::int32_t k, Rng& rng) {
  if (k < 2) throw std::invalid_argument("mutation needs k >= 2");
  if (!(rate > 0.0) || rate > 1.0) throw std::invalid_argument("rate must be in (0, 1]");
  const std::int64_t m = a.size();
  const std::int64_t genes =
      std::min<std::int64_t>(m, std::max<std::int64_t>(1, std::llround(rate * static_cast<double>(m))));

  std::vector<std::int64_t> positions(static_cast<std::size_t>(m));
  std::iota(positions.begin(), positions.end(), std::int64_t{0});
  for (std::int64_t t = 0; t < genes; ++t) {
    const std::int64_t j = t + static_cast<std::int64_t>(
                                   rng.next_below(static_cast<std::uint64_t>(m - t)));
    std::swap(positions[static_cast<std::size_t>(t)], positions[static_cast<std::size_t>(j)]);
  }

  Assignment out = a;
  for (std::int64_t t = 0; t < genes; ++t) {
    const auto pos = static_cast<std::size_t>(positions[static_cast<std::size_t>(t)]);
    const std::int32_t current = out.fold_of[pos];
    auto next = static_cast<std::int32_t>(rng.next_below(static_cast<std::uint64_t>(k - 1)));
    if (next >= current) ++next;
    out.fold_of[pos] = next;
  }
  return out;
}

Assignment repair_sizes(const Assignment& a, const FoldSpec& spec, Rng& rng) {
  const std::int32_t k = spec.k;
  std::vector<std::int64_t> sizes = fold_sizes(a, k);

  Assignment out = a;
  std::vector<std::int64_t> movers;
  for (std::int32_t j = 0; j < k; ++j) {
    const std::int64_t excess = sizes[static_cast<std::size_t>(j)] -
                                spec.targets[static_cast<std::size_t>(j)];
    if (excess <= 0) continue;
    std::vector<std::int64_t> members;
    for (std::int64_t i = 0; i < out.size(); ++i) {
      if (out.fold_of[static_cast<std::size_t>(i)] == j) members.push_back(i);
    }
    // uniform subset of size `excess` via partial shuffle
    for (std::int64_t t = 0; t < excess; ++t) {
      const std::int64_t r = t + static_cast<std::int64_t>(rng.next_below(
                                     static_cast<std::uint64_t>(members.size()) - t));
      std::swap(members[static_cast<std::size_t>(t)], members[static_cast<std::size_t>(r)]);
      movers.push_back(members[static_cast<std::size_t>(t)]);
    }
  }

  std::vector<std::int32_t> under;
  std::vector<std::int64_t> deficit(static_cast<std::size_t>(k), 0);
  for (std::int32_t j = 0; j < k; ++j) {
    deficit[static_cast<std::size_t>(j)] =
        spec.targets[static_cast<std::size_t>(j)] - sizes[static_cast<std::size_t>(j)];
    if (deficit[static_cast<std::size_t>(j)] > 0) under.push_back(j);
  }

  for (const std::int64_t mover : movers) {
    const std::size_t u = static_cast<std::size_t>(rng.next_below(under.size()));
    const std::int32_t target = under[u];
    out.fold_of[static_cast<std::size_t>(mover)] = target;
    if (--deficit[static_cast<std::size_t>(target)] == 0) {
      under.erase(under.begin() + static_cast<std::ptrdiff_t>(u));
    }
  }
  return out;
}

Assignment repair_constraint(const Assignment& a, const MultiLabelDataset& d, const FoldSpec& spec,
                             Rng& rng, bool* budget_exhausted) {
  const std::int64_t m = d.num_examples();
  const std::int32_t q = d.num_labels();
  const std::int32_t k = spec.k;

  std::vector<std::int64_t> presence(static_cast<std::size_t>(q), 0);
  for (std::int64_t i = 0; i < m; ++i) {
    for (const LabelCount& lc : d.entry(i)) presence[static_cast<std::size_t>(lc.label)] += 1;
  }

  Assignment out = a;
  std::vector<std::int64_t> cov(static_cast<std::size_t>(k) * static_cast<std::size_t>(q), 0);
  for (std::int64_t i = 0; i < m; ++i) {
    const auto f = static_cast<std::size_t>(out.fold_of[static_cast<std::size_t>(i)]);
    for (const LabelCount& lc : d.entry(i)) {
      cov[f * static_cast<std::size_t>(q) + static_cast<std::size_t>(lc.label)] += 1;
    }
  }
  const auto coverage = [&](std::int32_t fold, std::int32_t label) -> std::int64_t& {
    return cov[static_cast<std::size_t>(fold) * static_cast<std::size_t>(q) +
               static_cast<std::size_t>(label)];
  };

  const std::int64_t budget = 10 * static_cast<std::int64_t>(q) * static_cast<std::int64_t>(k);
  std::int64_t attempts = 0;

  for (;;) {
    bool any_deficiency = false;
    bool fixed_something = false;

    for (std::int32_t l = 0; l < q; ++l) {
      if (presence[static_cast<std::size_t>(l)] < k) continue;
      for (std::int32_t j = 0; j < k; ++j) {
        if (coverage(j, l) != 0) continue;
        any_deficiency = true;
        if (attempts >= budget) {
          if (budget_exhausted != nullptr) *budget_exhausted = true;
          return out;
        }
        ++attempts;

        // donor: carries l and leaves a fold that keeps at least one copy
        std::vector<std::int64_t> donors;
        for (std::int64_t i = 0; i < m; ++i) {
          const std::int32_t f = out.fold_of[static_cast<std::size_t>(i)];
          if (f == j) continue;
          if (coverage(f, l) < 2) continue;
          for (const LabelCount& lc : d.entry(i)) {
            if (lc.label == l) {
              donors.push_back(i);
              break;
            }
          }
        }
        // receiver: in fold j, removal must not uncover another satisfied label
        std::vector<std::int64_t> receivers;
        for (std::int64_t i = 0; i < m; ++i) {
          if (out.fold_of[static_cast<std::size_t>(i)] != j) continue;
          bool safe = true;
          for (const LabelCount& lc : d.entry(i)) {
            if (presence[static_cast<std::size_t>(lc.label)] >= k && coverage(j, lc.label) < 2) {
              safe = false;
              break;
            }
          }
          if (safe) receivers.push_back(i);
        }
        if (donors.empty() || receivers.empty()) continue;

        const std::int64_t x = donors[static_cast<std::size_t>(rng.next_below(donors.size()))];
        const std::int64_t y =
            receivers[static_cast<std::size_t>(rng.next_below(receivers.size()))];
        const std::int32_t from = out.fold_of[static_cast<std::size_t>(x)];
        out.fold_of[static_cast<std::size_t>(x)] = j;
        out.fold_of[static_cast<std::size_t>(y)] = from;
        for (const LabelCount& lc : d.entry(x)) {
          coverage(from, lc.label) -= 1;
          coverage(j, lc.label) += 1;
        }
        for (const LabelCount& lc : d.entry(y)) {
          coverage(j, lc.label) -= 1;
          coverage(from, lc.label) += 1;
        }
        fixed_something = true;
      }
    }

    if (!any_deficiency) break;
    if (!fixed_something) {
      if (budget_exhausted != nullptr) *budget_exhausted = true;
      break;
    }
  }
  return out;
}

namespace {

struct Individual {
  Assignment genes;
  double fitness = 0.0;
};

double fitness_of(const SplitScorer& scorer, const Assignment& a, FitnessMetric metric) {
  return metric == FitnessMetric::kLdPrime ? scorer.ld_prime(a) : scorer.lpd(a);
}

void evaluate_all(const SplitScorer& scorer, FitnessMetric metric,
                  std::vector<Individual>& batch) {
  const auto n = static_cast<std::int64_t>(batch.size());
#pragma omp parallel for schedule(static) num_threads(effective_threads())
  for (std::int64_t i = 0; i < n; ++i) {
    batch[static_cast<std::size_t>(i)].fitness =
        fitness_of(scorer, batch[static_cast<std::size_t>(i)].genes, metric);
  }
}

}  // namespace

EAResult evolve(const MultiLabelDataset& d, const FoldSpec& spec, const EAParams& params,
                std::uint64_t run_seed, std::int32_t run_index) {
  validate_params(params);
  spec.validate_for_split();
  const std::int64_t m = d.num_examples();
  if (m < 2) throw std::invalid_argument("need at least two examples");

  Rng rng(run_seed);
  const SplitScorer scorer(d, spec);
  bool budget_flag = false;

  std::vector<Individual> pop;
  pop.reserve(static_cast<std::size_t>(params.pop_size));
  for (Assignment& a : internal::make_population(d, spec, params, rng, &budget_flag)) {
    pop.push_back({std::move(a), 0.0});
  }
  evaluate_all(scorer, params.fitness, pop);
  std::stable_sort(pop.begin(), pop.end(),
                   [](const Individual& a, const Individual& b) { return a.fitness < b.fitness; });

  EAResult result;
  result.run_index = run_index;
  result.best_assignment = pop.front().genes;
  result.best_fitness = pop.front().fitness;
  result.history.push_back(pop.front().fitness);

  std::int32_t stale = 0;
  while (stale < params.stale_generations_max) {
    // All randomness is consumed by make_offspring, before the parallel
    // evaluation, so the result is independent of the thread count.
    std::vector<Individual> children;
    for (Assignment& a : internal::make_offspring(
             [&](std::size_t rank) -> const Assignment& { return pop[rank].genes; }, pop.size(),
             d, spec, params, rng, &budget_flag)) {
      children.push_back({std::move(a), 0.0});
    }
    evaluate_all(scorer, params.fitness, children);

    for (Individual& child : children) pop.push_back(std::move(child));
    std::stable_sort(pop.begin(), pop.end(),
                     [](const Individual& a, const Individual& b) { return a.fitness < b.fitness; });
    pop.resize(static_cast<std::size_t>(params.pop_size));

    ++result.generations;
    result.history.push_back(pop.front().fitness);
    const bool improved = result.best_fitness - pop.front().fitness > params.improvement_epsilon;
    if (pop.front().fitness < result.best_fitness) {
      result.best_assignment = pop.front().genes;
      result.best_fitness = pop.front().fitness;
    }
    stale = improved ? 0 : stale + 1;
  }

  result.constraint_repair_incomplete = budget_flag;
  return result;
}

EAResult run_best_of(const MultiLabelDataset& d, const FoldSpec& spec, const EAParams& params) {
  validate_params(params);
  EAResult best;
  for (std::int32_t r = 0; r < params.runs; ++r) {
    EAResult candidate = evolve(d, spec, params, params.seed.master_seed + static_cast<std::uint64_t>(r), r);
    if (r == 0 || candidate.best_fitness < best.best_fitness) best = std::move(candidate);
  }
  return best;
}

}  // namespace evosplit
