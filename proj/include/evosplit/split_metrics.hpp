#ifndef EVOSPLIT_SPLIT_METRICS_HPP
#define EVOSPLIT_SPLIT_METRICS_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "evosplit/dataset.hpp"
#include "evosplit/stats.hpp"

namespace evosplit {

/// Fold layout: k folds, desired proportions r summing to 1, and exact
/// integer targets c summing to m. Targets are the hard size constraint.
struct FoldSpec {
  std::int32_t k = 0;
  std::vector<double> proportions;
  std::vector<std::int64_t> targets;

  /// Equal proportions; targets via largest-remainder rounding.
  static FoldSpec uniform(std::int32_t k, std::int64_t m);

  /// Targets derived from proportions by largest-remainder rounding, ties
  /// broken by lower fold index. Proportions must sum to 1 within 1e-9.
  static FoldSpec from_proportions(std::vector<double> r, std::int64_t m);

  /// Explicit targets; proportions derived as c_j / m.
  static FoldSpec from_targets(std::vector<std::int64_t> c);

  std::int64_t total() const;

  /// Checks k >= 2 and every target >= 1; throws std::invalid_argument.
  void validate_for_split() const;
};

/// Genotype: one fold index per example.
struct Assignment {
  std::vector<std::int32_t> fold_of;

  std::int64_t size() const { return static_cast<std::int64_t>(fold_of.size()); }

  friend bool operator==(const Assignment&, const Assignment&) = default;
};

/// A point in (LD', LPD) objective space; both components are >= 0.
struct ObjectivePair {
  double ld_prime = 0.0;
  double lpd = 0.0;

  friend bool operator==(const ObjectivePair&, const ObjectivePair&) = default;
};

/// All split-quality measures for one assignment.
struct SplitReport {
  double ld = 0.0;
  double ld_prime = 0.0;
  double lpd = 0.0;
  double ed = 0.0;
  std::int64_t fz = 0;
  std::int64_t flz = 0;
  std::vector<std::int64_t> fold_sizes;
  bool constrained_feasible = false;  // every label with presence >= k is in every fold
};

std::vector<std::int64_t> fold_sizes(const Assignment& a, std::int32_t k);

/// Scores assignments against one dataset + fold spec. Construction
/// precomputes the per-label tallies and the pair index once; the scoring
/// methods are const and safe to call concurrently.
class SplitScorer {
 public:
  SplitScorer(const MultiLabelDataset& d, FoldSpec spec);

  /// LD (ratio of positive to negative examples per label, presence
  /// counts). Ratio denominators are clamped to a minimum of 1.
  double ld(const Assignment& a) const;

  /// LD' (multiplicity-weighted variant used as the EA fitness).
  double ld_prime(const Assignment& a) const;

  /// LPD over the co-occurring pair set E; binary co-occurrence.
  double lpd(const Assignment& a) const;

  /// Mean absolute deviation of fold sizes from targets; accepts
  /// size-infeasible assignments (this is the measure that detects them).
  double ed(const Assignment& a) const;

  /// (FZ, FLZ) counting only labels present in the dataset.
  std::pair<std::int64_t, std::int64_t> zero_counts(const Assignment& a) const;

  ObjectivePair objectives(const Assignment& a) const;

  SplitReport evaluate(const Assignment& a) const;

  const FoldSpec& spec() const { return spec_; }
  const MultiLabelDataset& dataset() const { return *dataset_; }
  std::int64_t present_label_count() const { return present_count_; }
  const std::vector<std::int64_t>& presence() const { return presence_; }
  const std::vector<LabelPair>& pairs() const { return pairs_; }
  const std::vector<std::int64_t>& pair_counts() const { return pair_counts_; }

  /// True when the assignment's fold sizes equal the targets exactly.
  bool size_feasible(const Assignment& a) const;

 private:
  struct FoldTallies;
  FoldTallies count(const Assignment& a) const;

  const MultiLabelDataset* dataset_;
  FoldSpec spec_;
  std::vector<std::int64_t> presence_;     // |D^i| per label
  std::vector<std::int64_t> occurrence_;   // lambda^D_i per label
  std::int64_t total_occurrence_ = 0;      // L^D
  std::int64_t present_count_ = 0;         // labels with presence >= 1
  std::vector<LabelPair> pairs_;           // E, sorted
  std::vector<std::int64_t> pair_counts_;  // |D^p| per pair
  std::vector<std::int64_t> example_pair_offsets_;  // CSR: per-example pair ids
  std::vector<std::int32_t> example_pair_ids_;
};

// Free-function forms of the measures. The first three require a
// size-feasible assignment and throw std::invalid_argument otherwise;
// evaluate_split and examples_distribution accept any well-formed assignment.
double label_distribution(const MultiLabelDataset& d, const Assignment& a, const FoldSpec& spec);
double modified_label_distribution(const MultiLabelDataset& d, const Assignment& a,
                                   const FoldSpec& spec);
double label_pair_distribution(const MultiLabelDataset& d, const Assignment& a,
                               const FoldSpec& spec);
double examples_distribution(const Assignment& a, const FoldSpec& spec);
std::pair<std::int64_t, std::int64_t> zero_counts(const MultiLabelDataset& d, const Assignment& a,
                                                  const FoldSpec& spec);
SplitReport evaluate_split(const MultiLabelDataset& d, const Assignment& a, const FoldSpec& spec);

}  // namespace evosplit

#endif
