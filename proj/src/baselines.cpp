#include "evosplit/baselines.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace evosplit {

Assignment random_split(const MultiLabelDataset& d, const FoldSpec& spec, RngSeed seed) {
  const std::int64_t m = d.num_examples();
  if (spec.total() != m) throw std::invalid_argument("fold targets do not sum to m");

  Rng rng(seed.master_seed);
  std::vector<std::int64_t> order(static_cast<std::size_t>(m));
  std::iota(order.begin(), order.end(), std::int64_t{0});
  rng.shuffle(order);

  Assignment a;
  a.fold_of.assign(static_cast<std::size_t>(m), 0);
  std::size_t pos = 0;
  for (std::int32_t j = 0; j < spec.k; ++j) {
    for (std::int64_t n = 0; n < spec.targets[static_cast<std::size_t>(j)]; ++n) {
      a.fold_of[static_cast<std::size_t>(order[pos++])] = j;
    }
  }
  return a;
}

namespace {

// Fold choice shared by IS and SOIS: largest remaining quota for the item
// being distributed, then largest remaining size quota, then seeded uniform.
std::int32_t pick_fold(const std::vector<double>& item_quota, const std::vector<double>& size_quota,
                       std::int32_t k, Rng& rng) {
  std::vector<std::int32_t> best;
  double best_quota = -1.0;
  for (std::int32_t j = 0; j < k; ++j) {
    const double v = item_quota[static_cast<std::size_t>(j)];
    if (v > best_quota) {
      best_quota = v;
      best.clear();
      best.push_back(j);
    } else if (v == best_quota) {
      best.push_back(j);
    }
  }
  if (best.size() > 1) {
    std::vector<std::int32_t> by_size;
    double best_size = -1.0;
    for (const std::int32_t j : best) {
      const double v = size_quota[static_cast<std::size_t>(j)];
      if (v > best_size) {
        best_size = v;
        by_size.clear();
        by_size.push_back(j);
      } else if (v == best_size) {
        by_size.push_back(j);
      }
    }
    best = std::move(by_size);
  }
  if (best.size() == 1) return best.front();
  return best[static_cast<std::size_t>(rng.next_below(best.size()))];
}

std::int32_t pick_fold_by_size(const std::vector<double>& size_quota, std::int32_t k, Rng& rng) {
  std::vector<std::int32_t> best;
  double best_size = -1.0;
  for (std::int32_t j = 0; j < k; ++j) {
    const double v = size_quota[static_cast<std::size_t>(j)];
    if (v > best_size) {
      best_size = v;
      best.clear();
      best.push_back(j);
    } else if (v == best_size) {
      best.push_back(j);
    }
  }
  if (best.size() == 1) return best.front();
  return best[static_cast<std::size_t>(rng.next_below(best.size()))];
}

struct StratState {
  std::vector<std::int32_t> assignment;   // -1 = unassigned
  std::vector<double> size_quota;         // per fold
  std::vector<double> label_quota;        // k*q
  std::vector<std::int64_t> label_remaining;  // unassigned examples per label
  std::int32_t k = 0;
  std::int32_t q = 0;

  void assign(const MultiLabelDataset& d, std::int64_t example, std::int32_t fold) {
    assignment[static_cast<std::size_t>(example)] = fold;
    size_quota[static_cast<std::size_t>(fold)] -= 1.0;
    for (const LabelCount& lc : d.entry(example)) {
      label_quota[static_cast<std::size_t>(fold) * q + static_cast<std::size_t>(lc.label)] -= 1.0;
      label_remaining[static_cast<std::size_t>(lc.label)] -= 1;
    }
  }
};

StratState init_state(const MultiLabelDataset& d, const FoldSpec& spec) {
  const std::int64_t m = d.num_examples();
  const std::int32_t q = d.num_labels();
  StratState st;
  st.k = spec.k;
  st.q = q;
  st.assignment.assign(static_cast<std::size_t>(m), -1);
  st.size_quota.resize(static_cast<std::size_t>(spec.k));
  for (std::int32_t j = 0; j < spec.k; ++j) {
    st.size_quota[static_cast<std::size_t>(j)] =
        static_cast<double>(spec.targets[static_cast<std::size_t>(j)]);
  }
  st.label_remaining.assign(static_cast<std::size_t>(q), 0);
  for (std::int64_t i = 0; i < m; ++i) {
    for (const LabelCount& lc : d.entry(i)) {
      st.label_remaining[static_cast<std::size_t>(lc.label)] += 1;
    }
  }
  st.label_quota.resize(static_cast<std::size_t>(spec.k) * static_cast<std::size_t>(q));
  for (std::int32_t j = 0; j < spec.k; ++j) {
    for (std::int32_t l = 0; l < q; ++l) {
      st.label_quota[static_cast<std::size_t>(j) * q + static_cast<std::size_t>(l)] =
          spec.proportions[static_cast<std::size_t>(j)] *
          static_cast<double>(st.label_remaining[static_cast<std::size_t>(l)]);
    }
  }
  return st;
}

// Distributes every unassigned example that carries at least one label,
// scarcest label first. Used directly by IS and as SOIS's second phase.
void run_label_phase(const MultiLabelDataset& d, StratState& st,
                     const std::vector<std::vector<std::int64_t>>& label_examples, Rng& rng) {
  for (;;) {
    std::int32_t scarcest = -1;
    std::int64_t fewest = 0;
    for (std::int32_t l = 0; l < st.q; ++l) {
      const std::int64_t remaining = st.label_remaining[static_cast<std::size_t>(l)];
      if (remaining > 0 && (scarcest < 0 || remaining < fewest)) {
        scarcest = l;
        fewest = remaining;
      }
    }
    if (scarcest < 0) break;

    std::vector<double> quota(static_cast<std::size_t>(st.k));
    for (const std::int64_t i : label_examples[static_cast<std::size_t>(scarcest)]) {
      if (st.assignment[static_cast<std::size_t>(i)] >= 0) continue;
      for (std::int32_t j = 0; j < st.k; ++j) {
        quota[static_cast<std::size_t>(j)] =
            st.label_quota[static_cast<std::size_t>(j) * st.q + static_cast<std::size_t>(scarcest)];
      }
      st.assign(d, i, pick_fold(quota, st.size_quota, st.k, rng));
    }
  }
}

void run_leftover_phase(const MultiLabelDataset& d, StratState& st, Rng& rng) {
  const std::int64_t m = d.num_examples();
  for (std::int64_t i = 0; i < m; ++i) {
    if (st.assignment[static_cast<std::size_t>(i)] >= 0) continue;
    st.assign(d, i, pick_fold_by_size(st.size_quota, st.k, rng));
  }
}

std::vector<std::vector<std::int64_t>> build_label_index(const MultiLabelDataset& d) {
  std::vector<std::vector<std::int64_t>> index(static_cast<std::size_t>(d.num_labels()));
  for (std::int64_t i = 0; i < d.num_examples(); ++i) {
    for (const LabelCount& lc : d.entry(i)) {
      index[static_cast<std::size_t>(lc.label)].push_back(i);
    }
  }
  return index;
}

}  // namespace

Assignment iterative_stratification(const MultiLabelDataset& d, const FoldSpec& spec,
                                    RngSeed seed) {
  if (spec.total() != d.num_examples()) throw std::invalid_argument("fold targets do not sum to m");
  Rng rng(seed.master_seed);
  StratState st = init_state(d, spec);
  const auto label_examples = build_label_index(d);
  run_label_phase(d, st, label_examples, rng);
  run_leftover_phase(d, st, rng);

  Assignment a;
  a.fold_of = std::move(st.assignment);
  return a;
}

Assignment second_order_iterative_stratification(const MultiLabelDataset& d, const FoldSpec& spec,
                                                 RngSeed seed) {
  if (spec.total() != d.num_examples()) throw std::invalid_argument("fold targets do not sum to m");
  Rng rng(seed.master_seed);
  StratState st = init_state(d, spec);

  const PairStats ps = pair_stats(d);
  const auto num_pairs = static_cast<std::int64_t>(ps.pairs.size());

  // Per-pair example index and per-fold pair quotas, mirroring the label
  // bookkeeping; label quotas stay in sync so the second phase sees the
  // state the pair phase left behind.
  std::map<std::pair<std::int32_t, std::int32_t>, std::int32_t> id_of;
  for (std::size_t p = 0; p < ps.pairs.size(); ++p) {
    id_of[{ps.pairs[p].a, ps.pairs[p].b}] = static_cast<std::int32_t>(p);
  }
  std::vector<std::vector<std::int64_t>> pair_examples(ps.pairs.size());
  std::vector<std::int64_t> pair_remaining(ps.pairs.size(), 0);
  for (std::int64_t i = 0; i < d.num_examples(); ++i) {
    const auto& row = d.entry(i);
    for (std::size_t x = 0; x < row.size(); ++x) {
      for (std::size_t y = x + 1; y < row.size(); ++y) {
        const auto p = static_cast<std::size_t>(id_of.at({row[x].label, row[y].label}));
        pair_examples[p].push_back(i);
        pair_remaining[p] += 1;
      }
    }
  }
  std::vector<double> pair_quota(static_cast<std::size_t>(spec.k) * ps.pairs.size());
  for (std::int32_t j = 0; j < spec.k; ++j) {
    for (std::size_t p = 0; p < ps.pairs.size(); ++p) {
      pair_quota[static_cast<std::size_t>(j) * ps.pairs.size() + p] =
          spec.proportions[static_cast<std::size_t>(j)] * static_cast<double>(pair_remaining[p]);
    }
  }

  const auto decrement_pairs = [&](std::int64_t example, std::int32_t fold) {
    const auto& row = d.entry(example);
    for (std::size_t x = 0; x < row.size(); ++x) {
      for (std::size_t y = x + 1; y < row.size(); ++y) {
        const auto p = static_cast<std::size_t>(id_of.at({row[x].label, row[y].label}));
        pair_quota[static_cast<std::size_t>(fold) * ps.pairs.size() + p] -= 1.0;
        pair_remaining[p] -= 1;
      }
    }
  };

  for (;;) {
    std::int64_t scarcest = -1;
    std::int64_t fewest = 0;
    for (std::int64_t p = 0; p < num_pairs; ++p) {
      const std::int64_t remaining = pair_remaining[static_cast<std::size_t>(p)];
      if (remaining > 0 && (scarcest < 0 || remaining < fewest)) {
        scarcest = p;
        fewest = remaining;
      }
    }
    if (scarcest < 0) break;

    std::vector<double> quota(static_cast<std::size_t>(spec.k));
    for (const std::int64_t i : pair_examples[static_cast<std::size_t>(scarcest)]) {
      if (st.assignment[static_cast<std::size_t>(i)] >= 0) continue;
      for (std::int32_t j = 0; j < spec.k; ++j) {
        quota[static_cast<std::size_t>(j)] =
            pair_quota[static_cast<std::size_t>(j) * ps.pairs.size() +
                       static_cast<std::size_t>(scarcest)];
      }
      const std::int32_t fold = pick_fold(quota, st.size_quota, spec.k, rng);
      st.assign(d, i, fold);
      decrement_pairs(i, fold);
    }
  }

  // Remaining labeled examples carry no pair (single-label); then label-free
  // examples fill folds to their expected sizes.
  const auto label_examples = build_label_index(d);
  run_label_phase(d, st, label_examples, rng);
  run_leftover_phase(d, st, rng);

  Assignment a;
  a.fold_of = std::move(st.assignment);
  return a;
}

}  // namespace evosplit
