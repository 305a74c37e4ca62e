#ifndef EVOSPLIT_BASELINES_HPP
#define EVOSPLIT_BASELINES_HPP

#include "evosplit/rng.hpp"
#include "evosplit/split_metrics.hpp"

namespace evosplit {

/// Seeded shuffle, then folds filled to their exact targets in order.
/// Always size-feasible; uniform over all size-feasible assignments.
Assignment random_split(const MultiLabelDataset& d, const FoldSpec& spec, RngSeed seed);

/// Greedy stratification: repeatedly takes the label with fewest remaining
/// unassigned examples and hands each of its examples to the fold with the
/// largest remaining quota for that label (ties: larger remaining size
/// quota, then a seeded uniform choice). Fold sizes are a soft target, so
/// the result may have ED > 0.
Assignment iterative_stratification(const MultiLabelDataset& d, const FoldSpec& spec, RngSeed seed);

/// Same greedy loop over co-occurring label pairs; leftover single-label
/// examples go through the single-label rule and label-free examples fill
/// the folds with the largest remaining size quota.
Assignment second_order_iterative_stratification(const MultiLabelDataset& d, const FoldSpec& spec,
                                                 RngSeed seed);

}  // namespace evosplit

#endif
