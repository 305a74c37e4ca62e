#include "evosplit/split_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

#include "evosplit/parallel.hpp"

namespace evosplit {

namespace {

double clamped_ratio(std::int64_t numerator, std::int64_t denominator) {
  return static_cast<double>(numerator) / static_cast<double>(std::max<std::int64_t>(denominator, 1));
}

void check_assignment(const Assignment& a, std::int64_t m, std::int32_t k) {
  if (a.size() != m) throw std::invalid_argument("assignment length does not match example count");
  for (const std::int32_t f : a.fold_of) {
    if (f < 0 || f >= k) throw std::invalid_argument("fold index out of range");
  }
}

}  // namespace

FoldSpec FoldSpec::uniform(std::int32_t k, std::int64_t m) {
  if (k < 1) throw std::invalid_argument("fold count must be >= 1");
  return from_proportions(std::vector<double>(static_cast<std::size_t>(k),
                                              1.0 / static_cast<double>(k)),
                          m);
}

FoldSpec FoldSpec::from_proportions(std::vector<double> r, std::int64_t m) {
  if (r.empty()) throw std::invalid_argument("no proportions given");
  if (m < 1) throw std::invalid_argument("dataset size must be >= 1");
  double sum = 0.0;
  for (const double v : r) {
    if (v < 0.0) throw std::invalid_argument("proportions must be non-negative");
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw std::invalid_argument("proportions must sum to 1");

  const auto k = static_cast<std::int32_t>(r.size());
  std::vector<std::int64_t> c(r.size(), 0);
  std::vector<double> remainder(r.size(), 0.0);
  std::int64_t assigned = 0;
  for (std::size_t j = 0; j < r.size(); ++j) {
    const double exact = r[j] * static_cast<double>(m);
    c[j] = static_cast<std::int64_t>(std::floor(exact));
    remainder[j] = exact - static_cast<double>(c[j]);
    assigned += c[j];
  }
  // Largest remainder first, ties to the lower fold index.
  std::vector<std::size_t> order(r.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return remainder[x] > remainder[y]; });
  std::int64_t leftover = m - assigned;
  for (std::size_t i = 0; leftover > 0; i = (i + 1) % order.size(), --leftover) c[order[i]] += 1;
  while (leftover < 0) {  // guards against proportions summing slightly above 1
    for (std::size_t i = order.size(); i > 0 && leftover < 0; --i) {
      if (c[order[i - 1]] > 0) {
        c[order[i - 1]] -= 1;
        ++leftover;
      }
    }
  }

  FoldSpec spec;
  spec.k = k;
  spec.proportions = std::move(r);
  spec.targets = std::move(c);
  return spec;
}

FoldSpec FoldSpec::from_targets(std::vector<std::int64_t> c) {
  if (c.empty()) throw std::invalid_argument("no targets given");
  std::int64_t m = 0;
  for (const std::int64_t v : c) {
    if (v < 0) throw std::invalid_argument("targets must be non-negative");
    m += v;
  }
  if (m < 1) throw std::invalid_argument("targets sum to zero");
  FoldSpec spec;
  spec.k = static_cast<std::int32_t>(c.size());
  spec.proportions.reserve(c.size());
  for (const std::int64_t v : c) {
    spec.proportions.push_back(static_cast<double>(v) / static_cast<double>(m));
  }
  spec.targets = std::move(c);
  return spec;
}

std::int64_t FoldSpec::total() const {
  return std::accumulate(targets.begin(), targets.end(), std::int64_t{0});
}

void FoldSpec::validate_for_split() const {
  if (k < 2) throw std::invalid_argument("fold count must be >= 2");
  for (const std::int64_t c : targets) {
    if (c < 1) throw std::invalid_argument("every fold target must be >= 1");
  }
}

std::vector<std::int64_t> fold_sizes(const Assignment& a, std::int32_t k) {
  std::vector<std::int64_t> sizes(static_cast<std::size_t>(k), 0);
  for (const std::int32_t f : a.fold_of) sizes[static_cast<std::size_t>(f)] += 1;
  return sizes;
}

struct SplitScorer::FoldTallies {
  std::vector<std::int64_t> sizes;          // |S_j|
  std::vector<std::int64_t> label_presence; // k*q, |S_j^i|
  std::vector<std::int64_t> label_lambda;   // k*q, lambda^{S_j}_i
  std::vector<std::int64_t> fold_occurrence;  // L^{S_j}
};

SplitScorer::SplitScorer(const MultiLabelDataset& d, FoldSpec spec)
    : dataset_(&d), spec_(std::move(spec)) {
  if (spec_.k < 1) throw std::invalid_argument("fold count must be >= 1");
  if (spec_.total() != d.num_examples()) {
    throw std::invalid_argument("fold targets do not sum to the example count");
  }

  const std::int64_t m = d.num_examples();
  const std::int32_t q = d.num_labels();
  presence_.assign(static_cast<std::size_t>(q), 0);
  occurrence_.assign(static_cast<std::size_t>(q), 0);
  for (std::int64_t i = 0; i < m; ++i) {
    for (const LabelCount& lc : d.entry(i)) {
      presence_[static_cast<std::size_t>(lc.label)] += 1;
      occurrence_[static_cast<std::size_t>(lc.label)] += lc.count;
      total_occurrence_ += lc.count;
    }
  }
  present_count_ = static_cast<std::int64_t>(
      std::count_if(presence_.begin(), presence_.end(), [](std::int64_t c) { return c > 0; }));

  const PairStats ps = pair_stats(d);
  pairs_ = ps.pairs;
  pair_counts_ = ps.pair_counts;

  // CSR of pair ids per example, in pair index order within each row.
  std::vector<std::int64_t> pair_id;  // keyed by packed pair
  std::unordered_map<std::uint64_t, std::int32_t> id_of;
  id_of.reserve(pairs_.size() * 2);
  for (std::size_t p = 0; p < pairs_.size(); ++p) {
    const std::uint64_t key =
        (static_cast<std::uint64_t>(pairs_[p].a) << 32) | static_cast<std::uint32_t>(pairs_[p].b);
    id_of.emplace(key, static_cast<std::int32_t>(p));
  }
  example_pair_offsets_.assign(static_cast<std::size_t>(m) + 1, 0);
  for (std::int64_t i = 0; i < m; ++i) {
    const auto& row = d.entry(i);
    const std::int64_t n = static_cast<std::int64_t>(row.size());
    example_pair_offsets_[static_cast<std::size_t>(i) + 1] =
        example_pair_offsets_[static_cast<std::size_t>(i)] + n * (n - 1) / 2;
  }
  example_pair_ids_.resize(static_cast<std::size_t>(example_pair_offsets_.back()));
  for (std::int64_t i = 0; i < m; ++i) {
    const auto& row = d.entry(i);
    std::size_t out = static_cast<std::size_t>(example_pair_offsets_[static_cast<std::size_t>(i)]);
    for (std::size_t a = 0; a < row.size(); ++a) {
      for (std::size_t b = a + 1; b < row.size(); ++b) {
        const std::uint64_t key = (static_cast<std::uint64_t>(row[a].label) << 32) |
                                  static_cast<std::uint32_t>(row[b].label);
        example_pair_ids_[out++] = id_of.at(key);
      }
    }
  }
}

SplitScorer::FoldTallies SplitScorer::count(const Assignment& a) const {
  const std::int64_t m = dataset_->num_examples();
  const std::int32_t q = dataset_->num_labels();
  const std::int32_t k = spec_.k;

  FoldTallies t;
  t.sizes.assign(static_cast<std::size_t>(k), 0);
  t.label_presence.assign(static_cast<std::size_t>(k) * static_cast<std::size_t>(q), 0);
  t.label_lambda.assign(static_cast<std::size_t>(k) * static_cast<std::size_t>(q), 0);
  t.fold_occurrence.assign(static_cast<std::size_t>(k), 0);
  for (std::int64_t i = 0; i < m; ++i) {
    const auto f = static_cast<std::size_t>(a.fold_of[static_cast<std::size_t>(i)]);
    t.sizes[f] += 1;
    const std::size_t base = f * static_cast<std::size_t>(q);
    for (const LabelCount& lc : dataset_->entry(i)) {
      t.label_presence[base + static_cast<std::size_t>(lc.label)] += 1;
      t.label_lambda[base + static_cast<std::size_t>(lc.label)] += lc.count;
      t.fold_occurrence[f] += lc.count;
    }
  }
  return t;
}

double SplitScorer::ld(const Assignment& a) const {
  if (present_count_ == 0) return 0.0;
  const std::int64_t m = dataset_->num_examples();
  const std::int32_t q = dataset_->num_labels();
  const std::int32_t k = spec_.k;
  const FoldTallies t = count(a);

  std::vector<double> terms(static_cast<std::size_t>(q), 0.0);
#pragma omp parallel for schedule(static) num_threads(effective_threads())
  for (std::int32_t l = 0; l < q; ++l) {
    const std::int64_t d_pos = presence_[static_cast<std::size_t>(l)];
    if (d_pos == 0) continue;
    const double d_ratio = clamped_ratio(d_pos, m - d_pos);
    double acc = 0.0;
    for (std::int32_t j = 0; j < k; ++j) {
      const std::int64_t s_pos =
          t.label_presence[static_cast<std::size_t>(j) * q + static_cast<std::size_t>(l)];
      acc += std::abs(clamped_ratio(s_pos, t.sizes[static_cast<std::size_t>(j)] - s_pos) - d_ratio);
    }
    terms[static_cast<std::size_t>(l)] = acc / static_cast<double>(k);
  }
  double sum = 0.0;
  for (std::int32_t l = 0; l < q; ++l) sum += terms[static_cast<std::size_t>(l)];
  return sum / static_cast<double>(present_count_);
}

double SplitScorer::ld_prime(const Assignment& a) const {
  if (present_count_ == 0) return 0.0;
  const std::int32_t q = dataset_->num_labels();
  const std::int32_t k = spec_.k;
  const FoldTallies t = count(a);

  std::vector<double> terms(static_cast<std::size_t>(q), 0.0);
#pragma omp parallel for schedule(static) num_threads(effective_threads())
  for (std::int32_t l = 0; l < q; ++l) {
    const std::int64_t d_lambda = occurrence_[static_cast<std::size_t>(l)];
    if (presence_[static_cast<std::size_t>(l)] == 0) continue;
    const double d_ratio = clamped_ratio(d_lambda, total_occurrence_ - d_lambda);
    double acc = 0.0;
    for (std::int32_t j = 0; j < k; ++j) {
      const std::int64_t s_lambda =
          t.label_lambda[static_cast<std::size_t>(j) * q + static_cast<std::size_t>(l)];
      acc += std::abs(
          clamped_ratio(s_lambda, t.fold_occurrence[static_cast<std::size_t>(j)] - s_lambda) -
          d_ratio);
    }
    terms[static_cast<std::size_t>(l)] = acc / static_cast<double>(k);
  }
  double sum = 0.0;
  for (std::int32_t l = 0; l < q; ++l) sum += terms[static_cast<std::size_t>(l)];
  return sum / static_cast<double>(present_count_);
}

double SplitScorer::lpd(const Assignment& a) const {
  const std::int64_t num_pairs = static_cast<std::int64_t>(pairs_.size());
  if (num_pairs == 0) return 0.0;
  const std::int64_t m = dataset_->num_examples();
  const std::int32_t k = spec_.k;

  std::vector<std::int64_t> sizes(static_cast<std::size_t>(k), 0);
  std::vector<std::int64_t> pair_pos(static_cast<std::size_t>(k) * pairs_.size(), 0);
  for (std::int64_t i = 0; i < m; ++i) {
    const auto f = static_cast<std::size_t>(a.fold_of[static_cast<std::size_t>(i)]);
    sizes[f] += 1;
    const std::size_t base = f * pairs_.size();
    for (std::int64_t idx = example_pair_offsets_[static_cast<std::size_t>(i)];
         idx < example_pair_offsets_[static_cast<std::size_t>(i) + 1]; ++idx) {
      pair_pos[base + static_cast<std::size_t>(example_pair_ids_[static_cast<std::size_t>(idx)])] += 1;
    }
  }

  std::vector<double> terms(pairs_.size(), 0.0);
#pragma omp parallel for schedule(static) num_threads(effective_threads())
  for (std::int64_t p = 0; p < num_pairs; ++p) {
    const std::int64_t d_pos = pair_counts_[static_cast<std::size_t>(p)];
    const double d_ratio = clamped_ratio(d_pos, m - d_pos);
    double acc = 0.0;
    for (std::int32_t j = 0; j < k; ++j) {
      const std::int64_t s_pos =
          pair_pos[static_cast<std::size_t>(j) * pairs_.size() + static_cast<std::size_t>(p)];
      acc += std::abs(clamped_ratio(s_pos, sizes[static_cast<std::size_t>(j)] - s_pos) - d_ratio);
    }
    terms[static_cast<std::size_t>(p)] = acc / static_cast<double>(k);
  }
  double sum = 0.0;
  for (std::int64_t p = 0; p < num_pairs; ++p) sum += terms[static_cast<std::size_t>(p)];
  return sum / static_cast<double>(num_pairs);
}

double SplitScorer::ed(const Assignment& a) const {
  const std::vector<std::int64_t> sizes = fold_sizes(a, spec_.k);
  std::int64_t dev = 0;
  for (std::int32_t j = 0; j < spec_.k; ++j) {
    dev += std::abs(sizes[static_cast<std::size_t>(j)] - spec_.targets[static_cast<std::size_t>(j)]);
  }
  return static_cast<double>(dev) / static_cast<double>(spec_.k);
}

std::pair<std::int64_t, std::int64_t> SplitScorer::zero_counts(const Assignment& a) const {
  const std::int32_t q = dataset_->num_labels();
  const std::int32_t k = spec_.k;
  const FoldTallies t = count(a);
  std::int64_t fz = 0;
  std::int64_t flz = 0;
  for (std::int32_t j = 0; j < k; ++j) {
    bool fold_has_zero = false;
    for (std::int32_t l = 0; l < q; ++l) {
      if (presence_[static_cast<std::size_t>(l)] == 0) continue;
      if (t.label_presence[static_cast<std::size_t>(j) * q + static_cast<std::size_t>(l)] == 0) {
        ++flz;
        fold_has_zero = true;
      }
    }
    if (fold_has_zero) ++fz;
  }
  return {fz, flz};
}

ObjectivePair SplitScorer::objectives(const Assignment& a) const {
  return {ld_prime(a), lpd(a)};
}

bool SplitScorer::size_feasible(const Assignment& a) const {
  return fold_sizes(a, spec_.k) == spec_.targets;
}

SplitReport SplitScorer::evaluate(const Assignment& a) const {
  check_assignment(a, dataset_->num_examples(), spec_.k);
  SplitReport r;
  r.ld = ld(a);
  r.ld_prime = ld_prime(a);
  r.lpd = lpd(a);
  r.ed = ed(a);
  std::tie(r.fz, r.flz) = zero_counts(a);
  r.fold_sizes = fold_sizes(a, spec_.k);

  const FoldTallies t = count(a);
  const std::int32_t q = dataset_->num_labels();
  r.constrained_feasible = true;
  for (std::int32_t l = 0; l < q && r.constrained_feasible; ++l) {
    if (presence_[static_cast<std::size_t>(l)] < spec_.k) continue;
    for (std::int32_t j = 0; j < spec_.k; ++j) {
      if (t.label_presence[static_cast<std::size_t>(j) * q + static_cast<std::size_t>(l)] == 0) {
        r.constrained_feasible = false;
        break;
      }
    }
  }
  return r;
}

namespace {

void require_size_feasible(const SplitScorer& scorer, const Assignment& a) {
  check_assignment(a, scorer.dataset().num_examples(), scorer.spec().k);
  if (!scorer.size_feasible(a)) {
    throw std::invalid_argument("assignment is not size-feasible for the fold spec");
  }
}

}  // namespace

double label_distribution(const MultiLabelDataset& d, const Assignment& a, const FoldSpec& spec) {
  const SplitScorer scorer(d, spec);
  require_size_feasible(scorer, a);
  return scorer.ld(a);
}

double modified_label_distribution(const MultiLabelDataset& d, const Assignment& a,
                                   const FoldSpec& spec) {
  const SplitScorer scorer(d, spec);
  require_size_feasible(scorer, a);
  return scorer.ld_prime(a);
}

double label_pair_distribution(const MultiLabelDataset& d, const Assignment& a,
                               const FoldSpec& spec) {
  const SplitScorer scorer(d, spec);
  require_size_feasible(scorer, a);
  return scorer.lpd(a);
}

double examples_distribution(const Assignment& a, const FoldSpec& spec) {
  check_assignment(a, a.size(), spec.k);
  const std::vector<std::int64_t> sizes = fold_sizes(a, spec.k);
  std::int64_t dev = 0;
  for (std::int32_t j = 0; j < spec.k; ++j) {
    dev += std::abs(sizes[static_cast<std::size_t>(j)] - spec.targets[static_cast<std::size_t>(j)]);
  }
  return static_cast<double>(dev) / static_cast<double>(spec.k);
}

std::pair<std::int64_t, std::int64_t> zero_counts(const MultiLabelDataset& d, const Assignment& a,
                                                  const FoldSpec& spec) {
  const SplitScorer scorer(d, spec);
  require_size_feasible(scorer, a);
  return scorer.zero_counts(a);
}

SplitReport evaluate_split(const MultiLabelDataset& d, const Assignment& a, const FoldSpec& spec) {
  return SplitScorer(d, spec).evaluate(a);
}

}  // namespace evosplit
