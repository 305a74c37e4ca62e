#include "evosplit/reference.hpp"

#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

namespace evosplit::reference {

namespace {

bool example_has_label(const MultiLabelDataset& d, std::int64_t i, std::int32_t l) {
  for (const LabelCount& lc : d.entry(i)) {
    if (lc.label == l) return true;
  }
  return false;
}

std::int64_t example_label_count(const MultiLabelDataset& d, std::int64_t i, std::int32_t l) {
  for (const LabelCount& lc : d.entry(i)) {
    if (lc.label == l) return lc.count;
  }
  return 0;
}

double clamp1(double x) { return x < 1.0 ? 1.0 : x; }

}  // namespace

DatasetStats dataset_stats(const MultiLabelDataset& d) {
  const std::int64_t m = d.num_examples();
  const std::int32_t q = d.num_labels();
  if (m < 1 || q < 1) throw std::invalid_argument("empty dataset");

  DatasetStats s;
  s.per_label_presence.assign(static_cast<std::size_t>(q), 0);
  s.per_label_occurrence.assign(static_cast<std::size_t>(q), 0);
  for (std::int32_t l = 0; l < q; ++l) {
    for (std::int64_t i = 0; i < m; ++i) {
      if (example_has_label(d, i, l)) s.per_label_presence[static_cast<std::size_t>(l)] += 1;
      s.per_label_occurrence[static_cast<std::size_t>(l)] += example_label_count(d, i, l);
    }
  }

  std::int64_t total = 0;
  for (std::int64_t i = 0; i < m; ++i) {
    std::int64_t row = 0;
    for (const LabelCount& lc : d.entry(i)) row += lc.count;
    total += row;
    if (row > s.max_labels) s.max_labels = row;
  }
  s.card = static_cast<double>(total) / static_cast<double>(m);
  s.dens = s.card / static_cast<double>(q);

  std::set<std::vector<std::int32_t>> distinct;
  for (std::int64_t i = 0; i < m; ++i) {
    std::vector<std::int32_t> sig;
    for (const LabelCount& lc : d.entry(i)) sig.push_back(lc.label);
    distinct.insert(sig);
  }
  s.div = static_cast<std::int64_t>(distinct.size());
  s.pdiv = static_cast<double>(s.div) / static_cast<double>(m);
  s.tcs_raw = static_cast<double>(m) * static_cast<double>(q) * static_cast<double>(s.div);
  s.tcs_log = std::log10(s.tcs_raw);

  std::int64_t max_occ = 0;
  for (std::int32_t l = 0; l < q; ++l) {
    if (s.per_label_occurrence[static_cast<std::size_t>(l)] > max_occ) {
      max_occ = s.per_label_occurrence[static_cast<std::size_t>(l)];
    }
  }
  s.max_frequency = static_cast<double>(max_occ) / static_cast<double>(m);

  std::int64_t max_presence = 0;
  for (std::int32_t l = 0; l < q; ++l) {
    if (s.per_label_presence[static_cast<std::size_t>(l)] > max_presence) {
      max_presence = s.per_label_presence[static_cast<std::size_t>(l)];
    }
  }
  s.irlbl.assign(static_cast<std::size_t>(q), 0.0);
  double ir_sum = 0.0;
  std::int64_t present = 0;
  for (std::int32_t l = 0; l < q; ++l) {
    if (s.per_label_presence[static_cast<std::size_t>(l)] > 0) {
      s.irlbl[static_cast<std::size_t>(l)] =
          static_cast<double>(max_presence) /
          static_cast<double>(s.per_label_presence[static_cast<std::size_t>(l)]);
      ir_sum += s.irlbl[static_cast<std::size_t>(l)];
      ++present;
    } else {
      s.zero_presence_labels.push_back(l);
    }
  }
  s.avg_ir = present > 0 ? ir_sum / static_cast<double>(present) : 0.0;

  double scumble_sum = 0.0;
  for (std::int64_t i = 0; i < m; ++i) {
    const auto& row = d.entry(i);
    if (row.empty()) continue;
    double product = 1.0;
    double mean = 0.0;
    for (const LabelCount& lc : row) {
      product *= s.irlbl[static_cast<std::size_t>(lc.label)];
      mean += s.irlbl[static_cast<std::size_t>(lc.label)];
    }
    const double n = static_cast<double>(row.size());
    mean /= n;
    scumble_sum += 1.0 - std::pow(product, 1.0 / n) / mean;
  }
  s.scumble = scumble_sum / static_cast<double>(m);
  return s;
}

PairStats pair_stats(const MultiLabelDataset& d) {
  const std::int64_t m = d.num_examples();
  const std::int32_t q = d.num_labels();
  PairStats p;
  if (q < 2 || m < 1) return p;

  std::map<std::pair<std::int32_t, std::int32_t>, std::int64_t> counts;
  std::int64_t total = 0;
  for (std::int64_t i = 0; i < m; ++i) {
    const auto& row = d.entry(i);
    for (std::size_t x = 0; x < row.size(); ++x) {
      for (std::size_t y = x + 1; y < row.size(); ++y) {
        counts[{row[x].label, row[y].label}] += 1;
        ++total;
      }
    }
  }
  std::int64_t max_count = 0;
  for (const auto& [pair, count] : counts) {
    p.pairs.push_back({pair.first, pair.second});
    p.pair_counts.push_back(count);
    if (count > max_count) max_count = count;
  }
  p.div2 = static_cast<std::int64_t>(p.pairs.size());
  p.card2 = static_cast<double>(total) / static_cast<double>(m);
  p.dens2 = p.card2 / static_cast<double>(q);
  p.pdiv2 = static_cast<double>(p.div2) / static_cast<double>(m);
  p.max_frequency2 = static_cast<double>(max_count) / static_cast<double>(m);
  return p;
}

double label_distribution(const MultiLabelDataset& d, const Assignment& a, const FoldSpec& spec) {
  const std::int64_t m = d.num_examples();
  const std::int32_t q = d.num_labels();
  const std::int32_t k = spec.k;

  double sum = 0.0;
  std::int64_t present = 0;
  for (std::int32_t l = 0; l < q; ++l) {
    std::int64_t d_pos = 0;
    for (std::int64_t i = 0; i < m; ++i) {
      if (example_has_label(d, i, l)) ++d_pos;
    }
    if (d_pos == 0) continue;
    ++present;
    const double d_ratio = static_cast<double>(d_pos) / clamp1(static_cast<double>(m - d_pos));
    double fold_sum = 0.0;
    for (std::int32_t j = 0; j < k; ++j) {
      std::int64_t s_pos = 0;
      std::int64_t s_size = 0;
      for (std::int64_t i = 0; i < m; ++i) {
        if (a.fold_of[static_cast<std::size_t>(i)] != j) continue;
        ++s_size;
        if (example_has_label(d, i, l)) ++s_pos;
      }
      const double s_ratio =
          static_cast<double>(s_pos) / clamp1(static_cast<double>(s_size - s_pos));
      fold_sum += std::abs(s_ratio - d_ratio);
    }
    sum += fold_sum / static_cast<double>(k);
  }
  return present > 0 ? sum / static_cast<double>(present) : 0.0;
}

double modified_label_distribution(const MultiLabelDataset& d, const Assignment& a,
                                   const FoldSpec& spec) {
  const std::int64_t m = d.num_examples();
  const std::int32_t q = d.num_labels();
  const std::int32_t k = spec.k;

  std::int64_t grand_total = 0;
  for (std::int64_t i = 0; i < m; ++i) {
    for (const LabelCount& lc : d.entry(i)) grand_total += lc.count;
  }

  double sum = 0.0;
  std::int64_t present = 0;
  for (std::int32_t l = 0; l < q; ++l) {
    std::int64_t d_lambda = 0;
    bool seen = false;
    for (std::int64_t i = 0; i < m; ++i) {
      const std::int64_t c = example_label_count(d, i, l);
      d_lambda += c;
      if (c > 0) seen = true;
    }
    if (!seen) continue;
    ++present;
    const double d_ratio =
        static_cast<double>(d_lambda) / clamp1(static_cast<double>(grand_total - d_lambda));
    double fold_sum = 0.0;
    for (std::int32_t j = 0; j < k; ++j) {
      std::int64_t s_lambda = 0;
      std::int64_t s_total = 0;
      for (std::int64_t i = 0; i < m; ++i) {
        if (a.fold_of[static_cast<std::size_t>(i)] != j) continue;
        s_lambda += example_label_count(d, i, l);
        for (const LabelCount& lc : d.entry(i)) s_total += lc.count;
      }
      const double s_ratio =
          static_cast<double>(s_lambda) / clamp1(static_cast<double>(s_total - s_lambda));
      fold_sum += std::abs(s_ratio - d_ratio);
    }
    sum += fold_sum / static_cast<double>(k);
  }
  return present > 0 ? sum / static_cast<double>(present) : 0.0;
}

double label_pair_distribution(const MultiLabelDataset& d, const Assignment& a,
                               const FoldSpec& spec) {
  const std::int64_t m = d.num_examples();
  const std::int32_t k = spec.k;

  const PairStats ps = reference::pair_stats(d);
  if (ps.pairs.empty()) return 0.0;

  double sum = 0.0;
  for (std::size_t p = 0; p < ps.pairs.size(); ++p) {
    const std::int32_t la = ps.pairs[p].a;
    const std::int32_t lb = ps.pairs[p].b;
    const std::int64_t d_pos = ps.pair_counts[p];
    const double d_ratio = static_cast<double>(d_pos) / clamp1(static_cast<double>(m - d_pos));
    double fold_sum = 0.0;
    for (std::int32_t j = 0; j < k; ++j) {
      std::int64_t s_pos = 0;
      std::int64_t s_size = 0;
      for (std::int64_t i = 0; i < m; ++i) {
        if (a.fold_of[static_cast<std::size_t>(i)] != j) continue;
        ++s_size;
        if (example_has_label(d, i, la) && example_has_label(d, i, lb)) ++s_pos;
      }
      const double s_ratio =
          static_cast<double>(s_pos) / clamp1(static_cast<double>(s_size - s_pos));
      fold_sum += std::abs(s_ratio - d_ratio);
    }
    sum += fold_sum / static_cast<double>(k);
  }
  return sum / static_cast<double>(ps.pairs.size());
}

}  // namespace evosplit::reference
