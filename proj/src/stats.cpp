#include "evosplit/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include "evosplit/parallel.hpp"

namespace evosplit {

DatasetStats dataset_stats(const MultiLabelDataset& d) {
  const std::int64_t m = d.num_examples();
  const std::int32_t q = d.num_labels();
  if (m < 1) throw std::invalid_argument("dataset_stats: dataset has no examples");
  if (q < 1) throw std::invalid_argument("dataset_stats: dataset has no labels");

  DatasetStats s;
  s.per_label_presence.assign(static_cast<std::size_t>(q), 0);
  s.per_label_occurrence.assign(static_cast<std::size_t>(q), 0);

  std::int64_t total_occurrence = 0;
  std::int64_t max_labels = 0;
  for (std::int64_t i = 0; i < m; ++i) {
    std::int64_t row_total = 0;
    for (const LabelCount& lc : d.entry(i)) {
      s.per_label_presence[static_cast<std::size_t>(lc.label)] += 1;
      s.per_label_occurrence[static_cast<std::size_t>(lc.label)] += lc.count;
      row_total += lc.count;
    }
    total_occurrence += row_total;
    max_labels = std::max(max_labels, row_total);
  }

  // Distinct label sets, ignoring multiplicity. Entries are label-sorted, so
  // the distinct-index sequence is already canonical.
  std::vector<std::vector<std::int32_t>> signatures;
  signatures.reserve(static_cast<std::size_t>(m));
  for (std::int64_t i = 0; i < m; ++i) {
    std::vector<std::int32_t> sig;
    sig.reserve(d.entry(i).size());
    for (const LabelCount& lc : d.entry(i)) sig.push_back(lc.label);
    signatures.push_back(std::move(sig));
  }
  std::sort(signatures.begin(), signatures.end());
  s.div = static_cast<std::int64_t>(
      std::unique(signatures.begin(), signatures.end()) - signatures.begin());

  s.card = static_cast<double>(total_occurrence) / static_cast<double>(m);
  s.dens = s.card / static_cast<double>(q);
  s.pdiv = static_cast<double>(s.div) / static_cast<double>(m);
  s.max_labels = max_labels;
  s.tcs_raw = static_cast<double>(m) * static_cast<double>(q) * static_cast<double>(s.div);
  s.tcs_log = std::log10(s.tcs_raw);

  std::int64_t max_occurrence = 0;
  for (std::int32_t l = 0; l < q; ++l) {
    max_occurrence = std::max(max_occurrence, s.per_label_occurrence[static_cast<std::size_t>(l)]);
  }
  s.max_frequency = static_cast<double>(max_occurrence) / static_cast<double>(m);

  // IRLbl over presence counts; labels absent from D are flagged and left out
  // of the avgIR and SCUMBLE averages.
  std::int64_t max_presence = 0;
  for (std::int32_t l = 0; l < q; ++l) {
    max_presence = std::max(max_presence, s.per_label_presence[static_cast<std::size_t>(l)]);
  }
  s.irlbl.assign(static_cast<std::size_t>(q), 0.0);
  std::int64_t present = 0;
  double irlbl_sum = 0.0;
  for (std::int32_t l = 0; l < q; ++l) {
    const std::int64_t presence = s.per_label_presence[static_cast<std::size_t>(l)];
    if (presence > 0) {
      s.irlbl[static_cast<std::size_t>(l)] =
          static_cast<double>(max_presence) / static_cast<double>(presence);
      irlbl_sum += s.irlbl[static_cast<std::size_t>(l)];
      ++present;
    } else {
      s.zero_presence_labels.push_back(l);
    }
  }
  s.avg_ir = present > 0 ? irlbl_sum / static_cast<double>(present) : 0.0;

  // SCUMBLE_i = 1 - geomean(IRLbl over the instance's labels) / mean(...).
  // Per-instance terms fill independent slots; the final sum runs in index
  // order so the result does not depend on the thread count.
  std::vector<double> scumble_terms(static_cast<std::size_t>(m), 0.0);
#pragma omp parallel for schedule(static) num_threads(effective_threads())
  for (std::int64_t i = 0; i < m; ++i) {
    const auto& row = d.entry(i);
    if (row.empty()) continue;
    double log_sum = 0.0;
    double lin_sum = 0.0;
    for (const LabelCount& lc : row) {
      const double ir = s.irlbl[static_cast<std::size_t>(lc.label)];
      log_sum += std::log(ir);
      lin_sum += ir;
    }
    const double n = static_cast<double>(row.size());
    const double geo = std::exp(log_sum / n);
    const double arith = lin_sum / n;
    scumble_terms[static_cast<std::size_t>(i)] = 1.0 - geo / arith;
  }
  double scumble_sum = 0.0;
  for (std::int64_t i = 0; i < m; ++i) scumble_sum += scumble_terms[static_cast<std::size_t>(i)];
  s.scumble = scumble_sum / static_cast<double>(m);

  return s;
}

PairStats pair_stats(const MultiLabelDataset& d) {
  const std::int64_t m = d.num_examples();
  const std::int32_t q = d.num_labels();

  PairStats p;
  if (q < 2 || m < 1) return p;

  std::unordered_map<std::uint64_t, std::int64_t> counts;
  std::int64_t total_pairs = 0;
  for (std::int64_t i = 0; i < m; ++i) {
    const auto& row = d.entry(i);
    for (std::size_t a = 0; a < row.size(); ++a) {
      for (std::size_t b = a + 1; b < row.size(); ++b) {
        const std::uint64_t key = (static_cast<std::uint64_t>(row[a].label) << 32) |
                                  static_cast<std::uint32_t>(row[b].label);
        counts[key] += 1;
        ++total_pairs;
      }
    }
  }

  p.pairs.reserve(counts.size());
  for (const auto& [key, count] : counts) {
    p.pairs.push_back({static_cast<std::int32_t>(key >> 32),
                       static_cast<std::int32_t>(key & 0xFFFFFFFFu)});
    (void)count;
  }
  std::sort(p.pairs.begin(), p.pairs.end());
  p.pair_counts.reserve(p.pairs.size());
  std::int64_t max_count = 0;
  for (const LabelPair& pair : p.pairs) {
    const std::uint64_t key =
        (static_cast<std::uint64_t>(pair.a) << 32) | static_cast<std::uint32_t>(pair.b);
    const std::int64_t count = counts.at(key);
    p.pair_counts.push_back(count);
    max_count = std::max(max_count, count);
  }

  p.div2 = static_cast<std::int64_t>(p.pairs.size());
  p.card2 = static_cast<double>(total_pairs) / static_cast<double>(m);
  p.dens2 = p.card2 / static_cast<double>(q);
  p.pdiv2 = static_cast<double>(p.div2) / static_cast<double>(m);
  p.max_frequency2 = static_cast<double>(max_count) / static_cast<double>(m);
  return p;
}

}  // namespace evosplit
