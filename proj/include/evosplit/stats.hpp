#ifndef EVOSPLIT_STATS_HPP
#define EVOSPLIT_STATS_HPP

#include <cstdint>
#include <vector>

#include "evosplit/dataset.hpp"

namespace evosplit {

/// Whole-dataset imbalance measures.
///
/// Conventions: Card / Max Labels / Max Frequency are multiplicity-weighted;
/// Div / PDiv use distinct label sets ignoring multiplicity; IRLbl / avgIR /
/// SCUMBLE use binary presence counts. TCS is exposed both as the raw
/// product m*q*Div and as its log10.
struct DatasetStats {
  double card = 0.0;
  double dens = 0.0;
  std::int64_t div = 0;
  double pdiv = 0.0;
  std::int64_t max_labels = 0;
  double max_frequency = 0.0;
  double tcs_raw = 0.0;
  double tcs_log = 0.0;
  double avg_ir = 0.0;
  double scumble = 0.0;
  std::vector<std::int64_t> per_label_presence;    // examples containing each label
  std::vector<std::int64_t> per_label_occurrence;  // multiplicity-weighted totals
  std::vector<double> irlbl;                       // 0 for labels absent from the dataset
  std::vector<std::int32_t> zero_presence_labels;  // excluded from avgIR/SCUMBLE averages
};

/// Unordered label pair (a < b).
struct LabelPair {
  std::int32_t a = 0;
  std::int32_t b = 0;

  friend bool operator==(const LabelPair&, const LabelPair&) = default;
  friend auto operator<=>(const LabelPair&, const LabelPair&) = default;
};

/// Order-2 measures over co-occurring label pairs. Pairs come from each
/// example's distinct label set; multiplicities are ignored.
struct PairStats {
  double card2 = 0.0;
  double dens2 = 0.0;
  std::int64_t div2 = 0;
  double pdiv2 = 0.0;
  double max_frequency2 = 0.0;
  std::vector<LabelPair> pairs;            // sorted lexicographically
  std::vector<std::int64_t> pair_counts;   // examples containing each pair
};

/// Requires m >= 1 and q >= 1.
DatasetStats dataset_stats(const MultiLabelDataset& d);

/// Returns zeros and an empty pair index when q < 2 or no pair co-occurs.
PairStats pair_stats(const MultiLabelDataset& d);

}  // namespace evosplit

#endif
