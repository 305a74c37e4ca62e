#include "evosplit/nsga2.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "evosplit/parallel.hpp"
#include "variation.hpp"

namespace evosplit {

bool dominates(const ObjectivePair& a, const ObjectivePair& b) {
  return a.ld_prime <= b.ld_prime && a.lpd <= b.lpd &&
         (a.ld_prime < b.ld_prime || a.lpd < b.lpd);
}

std::vector<std::vector<std::size_t>> non_dominated_sort(const std::vector<ObjectivePair>& points) {
  const std::size_t n = points.size();
  std::vector<std::vector<std::size_t>> dominated(n);
  std::vector<std::size_t> domination_count(n, 0);
  std::vector<std::vector<std::size_t>> fronts;

  std::vector<std::size_t> current;
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t r = 0; r < n; ++r) {
      if (p == r) continue;
      if (dominates(points[p], points[r])) {
        dominated[p].push_back(r);
      } else if (dominates(points[r], points[p])) {
        ++domination_count[p];
      }
    }
    if (domination_count[p] == 0) current.push_back(p);
  }

  while (!current.empty()) {
    std::sort(current.begin(), current.end());
    std::vector<std::size_t> next;
    for (const std::size_t p : current) {
      for (const std::size_t r : dominated[p]) {
        if (--domination_count[r] == 0) next.push_back(r);
      }
    }
    fronts.push_back(std::move(current));
    current = std::move(next);
  }
  return fronts;
}

std::vector<double> crowding_distance(const std::vector<ObjectivePair>& front) {
  const std::size_t n = front.size();
  const double inf = std::numeric_limits<double>::infinity();
  if (n == 0) return {};
  if (n <= 2) return std::vector<double>(n, inf);

  std::vector<double> dist(n, 0.0);
  const auto component = [&](std::size_t i, int dim) {
    return dim == 0 ? front[i].ld_prime : front[i].lpd;
  };
  for (int dim = 0; dim < 2; ++dim) {
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return component(a, dim) < component(b, dim);
    });
    dist[order.front()] = inf;
    dist[order.back()] = inf;
    const double range = component(order.back(), dim) - component(order.front(), dim);
    if (range == 0.0) continue;
    for (std::size_t i = 1; i + 1 < n; ++i) {
      if (dist[order[i]] == inf) continue;
      dist[order[i]] += (component(order[i + 1], dim) - component(order[i - 1], dim)) / range;
    }
  }
  return dist;
}

std::size_t select_knee(const std::vector<ObjectivePair>& front) {
  if (front.empty()) throw std::invalid_argument("select_knee: empty front");
  std::size_t best = 0;
  double best_dist = front[0].ld_prime * front[0].ld_prime + front[0].lpd * front[0].lpd;
  for (std::size_t i = 1; i < front.size(); ++i) {
    const double dist = front[i].ld_prime * front[i].ld_prime + front[i].lpd * front[i].lpd;
    if (dist < best_dist || (dist == best_dist && front[i].ld_prime < front[best].ld_prime)) {
      best = i;
      best_dist = dist;
    }
  }
  return best;
}

namespace {

struct MoIndividual {
  Assignment genes;
  ObjectivePair objectives;
};

void evaluate_all(const SplitScorer& scorer, std::vector<MoIndividual>& batch) {
  const auto n = static_cast<std::int64_t>(batch.size());
#pragma omp parallel for schedule(static) num_threads(effective_threads())
  for (std::int64_t i = 0; i < n; ++i) {
    batch[static_cast<std::size_t>(i)].objectives =
        scorer.objectives(batch[static_cast<std::size_t>(i)].genes);
  }
}

std::vector<ObjectivePair> objectives_of(const std::vector<MoIndividual>& pop) {
  std::vector<ObjectivePair> objs;
  objs.reserve(pop.size());
  for (const MoIndividual& ind : pop) objs.push_back(ind.objectives);
  return objs;
}

// Population indices ordered by (front, crowding desc, insertion order);
// the selection rank for the next offspring batch.
std::vector<std::size_t> rank_order(const std::vector<MoIndividual>& pop) {
  const std::vector<ObjectivePair> objs = objectives_of(pop);
  const auto fronts = non_dominated_sort(objs);
  std::vector<std::size_t> order;
  order.reserve(pop.size());
  for (const auto& front : fronts) {
    std::vector<ObjectivePair> front_objs;
    front_objs.reserve(front.size());
    for (const std::size_t i : front) front_objs.push_back(objs[i]);
    const std::vector<double> crowd = crowding_distance(front_objs);
    std::vector<std::size_t> local(front.size());
    std::iota(local.begin(), local.end(), std::size_t{0});
    std::stable_sort(local.begin(), local.end(),
                     [&](std::size_t a, std::size_t b) { return crowd[a] > crowd[b]; });
    for (const std::size_t i : local) order.push_back(front[i]);
  }
  return order;
}

ObjectivePair knee_of_front0(const std::vector<MoIndividual>& pop) {
  const auto fronts = non_dominated_sort(objectives_of(pop));
  std::vector<ObjectivePair> front0;
  front0.reserve(fronts[0].size());
  for (const std::size_t i : fronts[0]) front0.push_back(pop[i].objectives);
  return front0[select_knee(front0)];
}

}  // namespace

ParetoFront nsga2_evolve(const MultiLabelDataset& d, const FoldSpec& spec, const EAParams& params,
                         std::uint64_t run_seed) {
  spec.validate_for_split();
  if (d.num_examples() < 2) throw std::invalid_argument("need at least two examples");
  if (params.pop_size < 1) throw std::invalid_argument("pop_size must be >= 1");

  Rng rng(run_seed);
  const SplitScorer scorer(d, spec);
  bool budget_flag = false;

  std::vector<MoIndividual> pop;
  pop.reserve(static_cast<std::size_t>(params.pop_size));
  for (Assignment& a : internal::make_population(d, spec, params, rng, &budget_flag)) {
    pop.push_back({std::move(a), {}});
  }
  evaluate_all(scorer, pop);

  ParetoFront result;
  ObjectivePair prev_knee = knee_of_front0(pop);
  result.knee_history.push_back(prev_knee);

  std::int32_t stale = 0;
  while (stale < params.stale_generations_max) {
    const std::vector<std::size_t> by_rank = rank_order(pop);
    std::vector<MoIndividual> children;
    for (Assignment& a : internal::make_offspring(
             [&](std::size_t rank) -> const Assignment& { return pop[by_rank[rank]].genes; },
             pop.size(), d, spec, params, rng, &budget_flag)) {
      children.push_back({std::move(a), {}});
    }
    evaluate_all(scorer, children);

    std::vector<MoIndividual> merged = std::move(pop);
    for (MoIndividual& child : children) merged.push_back(std::move(child));

    const std::vector<ObjectivePair> objs = objectives_of(merged);
    const auto fronts = non_dominated_sort(objs);

    // Survival: whole fronts while they fit, the critical front truncated by
    // crowding (descending, ties by insertion order).
    const auto n = static_cast<std::size_t>(params.pop_size);
    std::vector<std::size_t> survivors;
    survivors.reserve(n);
    for (const auto& front : fronts) {
      if (survivors.size() == n) break;
      if (survivors.size() + front.size() <= n) {
        survivors.insert(survivors.end(), front.begin(), front.end());
        continue;
      }
      std::vector<ObjectivePair> front_objs;
      front_objs.reserve(front.size());
      for (const std::size_t i : front) front_objs.push_back(objs[i]);
      const std::vector<double> crowd = crowding_distance(front_objs);
      std::vector<std::size_t> local(front.size());
      std::iota(local.begin(), local.end(), std::size_t{0});
      std::stable_sort(local.begin(), local.end(),
                       [&](std::size_t a, std::size_t b) { return crowd[a] > crowd[b]; });
      for (const std::size_t i : local) {
        if (survivors.size() == n) break;
        survivors.push_back(front[i]);
      }
    }

    // Crowding truncation may cut the knee member of front 0; keep it so the
    // knee distance to origin never regresses between generations.
    {
      std::vector<ObjectivePair> front0_objs;
      front0_objs.reserve(fronts[0].size());
      for (const std::size_t i : fronts[0]) front0_objs.push_back(objs[i]);
      const std::size_t knee_idx = fronts[0][select_knee(front0_objs)];
      if (std::find(survivors.begin(), survivors.end(), knee_idx) == survivors.end()) {
        survivors.back() = knee_idx;
      }
    }

    std::vector<MoIndividual> next;
    next.reserve(survivors.size());
    for (const std::size_t i : survivors) next.push_back(std::move(merged[i]));
    pop = std::move(next);

    ++result.generations;
    const ObjectivePair knee = knee_of_front0(pop);
    result.knee_history.push_back(knee);
    const bool unchanged =
        std::abs(knee.ld_prime - prev_knee.ld_prime) <= params.improvement_epsilon &&
        std::abs(knee.lpd - prev_knee.lpd) <= params.improvement_epsilon;
    stale = unchanged ? stale + 1 : 0;
    prev_knee = knee;
  }

  // Final front 0, deduplicated on exact objective pairs (first occurrence
  // keeps its assignment), crowding recomputed on the deduplicated set.
  const std::vector<ObjectivePair> objs = objectives_of(pop);
  const auto fronts = non_dominated_sort(objs);
  for (const std::size_t i : fronts[0]) {
    const ObjectivePair& obj = pop[i].objectives;
    if (std::find(result.objectives.begin(), result.objectives.end(), obj) !=
        result.objectives.end()) {
      continue;
    }
    result.objectives.push_back(obj);
    result.assignments.push_back(pop[i].genes);
  }
  result.crowding = crowding_distance(result.objectives);
  result.constraint_repair_incomplete = budget_flag;
  return result;
}

}  // namespace evosplit
