#ifndef EVOSPLIT_NSGA2_HPP
#define EVOSPLIT_NSGA2_HPP

#include <cstdint>
#include <vector>

#include "evosplit/evolution.hpp"
#include "evosplit/split_metrics.hpp"

namespace evosplit {

/// Non-dominated set of (LD', LPD) solutions with crowding metadata;
/// boundary solutions carry +infinity crowding.
struct ParetoFront {
  std::vector<Assignment> assignments;
  std::vector<ObjectivePair> objectives;
  std::vector<double> crowding;
  bool constraint_repair_incomplete = false;
  std::int64_t generations = 0;
  std::vector<ObjectivePair> knee_history;  // per-generation knee, entry 0 = initial

  std::size_t size() const { return objectives.size(); }
};

/// a dominates b iff a <= b componentwise and a < b in at least one.
bool dominates(const ObjectivePair& a, const ObjectivePair& b);

/// Fast non-dominated sort. Front 0 is the non-dominated set; each later
/// front is non-dominated once the earlier ones are removed. Indices within
/// a front keep their input order.
std::vector<std::vector<std::size_t>> non_dominated_sort(const std::vector<ObjectivePair>& points);

/// NSGA-II crowding distance for one front. Boundary solutions per
/// objective get +infinity; interior ones accumulate (next - prev) /
/// (max - min) per objective, 0 when an objective is degenerate.
std::vector<double> crowding_distance(const std::vector<ObjectivePair>& front);

/// NSGA-II minimizing (LD', LPD) with the same operators, repairs, and
/// population parameters as the single-objective EA (params.fitness is
/// ignored). Returns the final population's first front.
ParetoFront nsga2_evolve(const MultiLabelDataset& d, const FoldSpec& spec, const EAParams& params,
                         std::uint64_t run_seed);

/// Front member closest to the objective-space origin (raw objectives,
/// plain Euclidean distance); ties by lower ld_prime, then position.
std::size_t select_knee(const std::vector<ObjectivePair>& front);

}  // namespace evosplit

#endif
