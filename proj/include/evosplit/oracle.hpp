#ifndef EVOSPLIT_ORACLE_HPP
#define EVOSPLIT_ORACLE_HPP

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "evosplit/split_metrics.hpp"

namespace evosplit {

enum class Metric { kLd, kLdPrime, kLpd };

class OracleTooLarge : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct OracleResult {
  double optimum_value = 0.0;
  std::vector<Assignment> optimizers;       // all argmin assignments, lexicographic
  std::int64_t enumerated = 0;              // multinomial(m; c)
  std::vector<ObjectivePair> pareto_pairs;  // all distinct (LD', LPD) pairs, sorted
};

/// Number of size-feasible assignments, or -1 if it exceeds `limit`.
std::int64_t count_feasible_assignments(std::int64_t m, const std::vector<std::int64_t>& targets,
                                        std::int64_t limit);

/// Enumerates every size-feasible assignment in lexicographic order and
/// returns the global minimum of the chosen metric together with all of its
/// argmins and the full set of distinct objective pairs. Throws
/// OracleTooLarge when multinomial(m; c) exceeds 10^6.
OracleResult exhaustive_optimal(const MultiLabelDataset& d, const FoldSpec& spec, Metric metric);

}  // namespace evosplit

#endif
