#ifndef EVOSPLIT_REFERENCE_HPP
#define EVOSPLIT_REFERENCE_HPP

#include "evosplit/split_metrics.hpp"
#include "evosplit/stats.hpp"

// Single-threaded straight-line transcriptions of every measure, written
// independently of the production kernels. The test suites check the
// kernels against these, and the benchmark tool compares their speed.
namespace evosplit::reference {

DatasetStats dataset_stats(const MultiLabelDataset& d);
PairStats pair_stats(const MultiLabelDataset& d);

double label_distribution(const MultiLabelDataset& d, const Assignment& a, const FoldSpec& spec);
double modified_label_distribution(const MultiLabelDataset& d, const Assignment& a,
                                   const FoldSpec& spec);
double label_pair_distribution(const MultiLabelDataset& d, const Assignment& a,
                               const FoldSpec& spec);

}  // namespace evosplit::reference

#endif
