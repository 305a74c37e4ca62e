#include "evosplit/oracle.hpp"

#include <algorithm>

#include "evosplit/parallel.hpp"

namespace evosplit {

namespace {

constexpr std::int64_t kMaxEnumerated = 1'000'000;

// Lexicographic enumeration over fold_of vectors with exact capacities.
void enumerate(std::vector<std::int32_t>& genes, std::size_t pos,
               std::vector<std::int64_t>& capacity, std::vector<std::int8_t>& flat) {
  if (pos == genes.size()) {
    flat.insert(flat.end(), genes.begin(), genes.end());
    return;
  }
  for (std::int32_t j = 0; j < static_cast<std::int32_t>(capacity.size()); ++j) {
    if (capacity[static_cast<std::size_t>(j)] == 0) continue;
    capacity[static_cast<std::size_t>(j)] -= 1;
    genes[pos] = j;
    enumerate(genes, pos + 1, capacity, flat);
    capacity[static_cast<std::size_t>(j)] += 1;
  }
}

}  // namespace

std::int64_t count_feasible_assignments(std::int64_t m, const std::vector<std::int64_t>& targets,
                                        std::int64_t limit) {
  // multinomial(m; c) as a product of binomials, bailing out early.
  std::int64_t total = 1;
  std::int64_t remaining = m;
  for (const std::int64_t c : targets) {
    for (std::int64_t i = 1; i <= c; ++i) {
      // total *= (remaining - c + i) / i, kept exact by multiplying first
      const __int128 next = static_cast<__int128>(total) * (remaining - c + i);
      total = static_cast<std::int64_t>(next / i);
      if (total > limit) return -1;
    }
    remaining -= c;
  }
  return total;
}

OracleResult exhaustive_optimal(const MultiLabelDataset& d, const FoldSpec& spec, Metric metric) {
  const std::int64_t m = d.num_examples();
  if (spec.total() != m) throw std::invalid_argument("fold targets do not sum to m");

  const std::int64_t n = count_feasible_assignments(m, spec.targets, kMaxEnumerated);
  if (n < 0 || spec.k > 127) {
    throw OracleTooLarge("instance too large for exhaustive enumeration (> 10^6 assignments)");
  }

  std::vector<std::int8_t> flat;
  flat.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(m));
  {
    std::vector<std::int32_t> genes(static_cast<std::size_t>(m), 0);
    std::vector<std::int64_t> capacity = spec.targets;
    enumerate(genes, 0, capacity, flat);
  }

  const SplitScorer scorer(d, spec);
  std::vector<double> values(static_cast<std::size_t>(n));
  std::vector<ObjectivePair> all_pairs(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(static) num_threads(effective_threads())
  for (std::int64_t i = 0; i < n; ++i) {
    Assignment a;
    a.fold_of.assign(flat.begin() + i * m, flat.begin() + (i + 1) * m);
    const ObjectivePair obj = scorer.objectives(a);
    all_pairs[static_cast<std::size_t>(i)] = obj;
    switch (metric) {
      case Metric::kLd:
        values[static_cast<std::size_t>(i)] = scorer.ld(a);
        break;
      case Metric::kLdPrime:
        values[static_cast<std::size_t>(i)] = obj.ld_prime;
        break;
      case Metric::kLpd:
        values[static_cast<std::size_t>(i)] = obj.lpd;
        break;
    }
  }

  OracleResult result;
  result.enumerated = n;
  result.optimum_value = values.empty() ? 0.0 : values[0];
  for (std::int64_t i = 1; i < n; ++i) {
    result.optimum_value = std::min(result.optimum_value, values[static_cast<std::size_t>(i)]);
  }
  for (std::int64_t i = 0; i < n; ++i) {
    if (values[static_cast<std::size_t>(i)] == result.optimum_value) {
      Assignment a;
      a.fold_of.assign(flat.begin() + i * m, flat.begin() + (i + 1) * m);
      result.optimizers.push_back(std::move(a));
    }
  }

  std::sort(all_pairs.begin(), all_pairs.end(), [](const ObjectivePair& x, const ObjectivePair& y) {
    return x.ld_prime != y.ld_prime ? x.ld_prime < y.ld_prime : x.lpd < y.lpd;
  });
  all_pairs.erase(std::unique(all_pairs.begin(), all_pairs.end()), all_pairs.end());
  result.pareto_pairs = std::move(all_pairs);
  return result;
}

}  // namespace evosplit
