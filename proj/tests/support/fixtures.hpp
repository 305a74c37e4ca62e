#ifndef EVOSPLIT_TESTS_FIXTURES_HPP
#define EVOSPLIT_TESTS_FIXTURES_HPP

#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "evosplit/dataset.hpp"
#include "evosplit/rng.hpp"
#include "evosplit/split_metrics.hpp"

namespace evosplit::testing {

// m=4, q=3: e0={A}, e1={A,B}, e2={B,C}, e3={A,B,C}
inline const char* kTiny4Text = "#q 3\n0\n0 1\n1 2\n0 1 2\n";

inline MultiLabelDataset tiny4() {
  std::istringstream in(kTiny4Text);
  return load_dataset(in, DatasetFormat::kSparseText);
}

inline Assignment assignment(std::vector<std::int32_t> folds) {
  Assignment a;
  a.fold_of = std::move(folds);
  return a;
}

inline MultiLabelDataset from_rows(std::int32_t q, std::vector<std::vector<LabelCount>> rows) {
  std::vector<std::string> names(static_cast<std::size_t>(q));
  for (std::size_t l = 0; l < names.size(); ++l) names[l] = std::to_string(l);
  return MultiLabelDataset(std::move(names), std::move(rows));
}

// n copies of the single-label example {0}.
inline MultiLabelDataset copies_of_single_label(std::int64_t n) {
  std::vector<std::vector<LabelCount>> rows(static_cast<std::size_t>(n), {{0, 1}});
  return from_rows(1, std::move(rows));
}

// Presence-only dataset with every label drawn independently per example.
inline MultiLabelDataset random_dataset(std::int64_t m, std::int32_t q, std::uint64_t seed,
                                        double label_probability = 0.5) {
  Rng rng(seed);
  std::vector<std::vector<LabelCount>> rows(static_cast<std::size_t>(m));
  for (auto& row : rows) {
    for (std::int32_t l = 0; l < q; ++l) {
      if (rng.next_double() < label_probability) row.push_back({l, 1});
    }
  }
  return from_rows(q, std::move(rows));
}

// Imbalanced dataset for the constraint and improvement studies: the first
// `rare` labels have presence in [k, 2k], the rest are much more frequent.
inline MultiLabelDataset imbalanced_dataset(std::int64_t m, std::int32_t q, std::int32_t k,
                                            std::uint64_t seed, std::int32_t rare = 4) {
  Rng rng(seed);
  std::vector<std::vector<bool>> has(static_cast<std::size_t>(m),
                                     std::vector<bool>(static_cast<std::size_t>(q), false));
  for (std::int32_t l = 0; l < q; ++l) {
    std::int64_t presence;
    if (l < rare) {
      presence = k + static_cast<std::int64_t>(rng.next_below(static_cast<std::uint64_t>(k) + 1));
    } else {
      presence = m / 12 +
                 static_cast<std::int64_t>(rng.next_below(static_cast<std::uint64_t>(m / 2)));
    }
    std::int64_t placed = 0;
    while (placed < presence) {
      const auto i = static_cast<std::size_t>(rng.next_below(static_cast<std::uint64_t>(m)));
      if (has[i][static_cast<std::size_t>(l)]) continue;
      has[i][static_cast<std::size_t>(l)] = true;
      ++placed;
    }
  }
  std::vector<std::vector<LabelCount>> rows(static_cast<std::size_t>(m));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::int32_t l = 0; l < q; ++l) {
      if (has[i][static_cast<std::size_t>(l)]) rows[i].push_back({l, 1});
    }
  }
  return from_rows(q, std::move(rows));
}

}  // namespace evosplit::testing

#endif
