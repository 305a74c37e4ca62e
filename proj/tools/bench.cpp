// Benchmark: parallel scoring kernels vs the serial reference
// transcriptions, on a synthetic dataset. Also cross-checks that both
// paths agree to tight tolerance.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "evosplit/baselines.hpp"
#include "evosplit/parallel.hpp"
#include "evosplit/reference.hpp"
#include "evosplit/rng.hpp"
#include "evosplit/split_metrics.hpp"
#include "evosplit/stats.hpp"

using namespace evosplit;

namespace {

MultiLabelDataset make_synthetic(std::int64_t m, std::int32_t q, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::vector<LabelCount>> entries(static_cast<std::size_t>(m));
  std::vector<std::vector<bool>> has(static_cast<std::size_t>(m),
                                     std::vector<bool>(static_cast<std::size_t>(q), false));
  for (std::int32_t l = 0; l < q; ++l) {
    // presence spread over two orders of magnitude
    const std::int64_t presence =
        3 + static_cast<std::int64_t>(rng.next_below(static_cast<std::uint64_t>(m / 2)));
    for (std::int64_t n = 0; n < presence; ++n) {
      const auto i = static_cast<std::size_t>(rng.next_below(static_cast<std::uint64_t>(m)));
      if (has[i][static_cast<std::size_t>(l)]) continue;
      has[i][static_cast<std::size_t>(l)] = true;
      entries[i].push_back({l, 1});
    }
  }
  std::vector<std::string> names(static_cast<std::size_t>(q));
  for (std::size_t l = 0; l < names.size(); ++l) names[l] = "label" + std::to_string(l);
  return MultiLabelDataset(std::move(names), std::move(entries));
}

template <typename F>
double time_ms(F&& f, int iters) {
  const auto start = std::chrono::steady_clock::now();
  for (int i = 0; i < iters; ++i) f();
  const auto elapsed = std::chrono::steady_clock::now() - start;
  return std::chrono::duration<double, std::milli>(elapsed).count() / iters;
}

}  // namespace

int main(int argc, char** argv) {
  std::int64_t m = 20000;
  std::int32_t q = 60;
  std::int32_t k = 10;
  std::uint64_t seed = 1;
  int iters = 3;
  int threads = 0;

  CLI::App app{"kernel benchmark: parallel vs serial reference"};
  app.add_option("--m", m, "examples");
  app.add_option("--q", q, "labels");
  app.add_option("--k", k, "folds");
  app.add_option("--seed", seed, "rng seed");
  app.add_option("--iters", iters, "iterations per measurement");
  app.add_option("--threads", threads, "thread cap");
  CLI11_PARSE(app, argc, argv);

  if (threads > 0) set_thread_count(threads);
  std::printf("dataset: m=%lld q=%d k=%d  threads=%d\n", static_cast<long long>(m), q, k,
              effective_threads());

  const MultiLabelDataset d = make_synthetic(m, q, seed);
  const FoldSpec spec = FoldSpec::uniform(k, m);
  const Assignment a = random_split(d, spec, RngSeed{seed});
  const SplitScorer scorer(d, spec);

  struct Case {
    const char* name;
    double parallel_ms;
    double serial_ms;
    double parallel_value;
    double serial_value;
  };
  std::vector<Case> cases;

  {
    double pv = 0.0, sv = 0.0;
    const double pt = time_ms([&] { pv = dataset_stats(d).scumble; }, iters);
    const double st = time_ms([&] { sv = reference::dataset_stats(d).scumble; }, 1);
    cases.push_back({"dataset_stats", pt, st, pv, sv});
  }
  {
    double pv = 0.0, sv = 0.0;
    const double pt = time_ms([&] { pv = scorer.ld(a); }, iters);
    const double st = time_ms([&] { sv = reference::label_distribution(d, a, spec); }, 1);
    cases.push_back({"ld", pt, st, pv, sv});
  }
  {
    double pv = 0.0, sv = 0.0;
    const double pt = time_ms([&] { pv = scorer.ld_prime(a); }, iters);
    const double st = time_ms([&] { sv = reference::modified_label_distribution(d, a, spec); }, 1);
    cases.push_back({"ld_prime", pt, st, pv, sv});
  }
  {
    double pv = 0.0, sv = 0.0;
    const double pt = time_ms([&] { pv = scorer.lpd(a); }, iters);
    const double st = time_ms([&] { sv = reference::label_pair_distribution(d, a, spec); }, 1);
    cases.push_back({"lpd", pt, st, pv, sv});
  }

  std::printf("%-14s %12s %12s %9s %s\n", "kernel", "parallel/ms", "serial/ms", "speedup",
              "agree");
  bool all_agree = true;
  for (const Case& c : cases) {
    const double rel = std::abs(c.parallel_value - c.serial_value) /
                       std::max(1.0, std::abs(c.serial_value));
    const bool agree = rel < 1e-9;
    all_agree = all_agree && agree;
    std::printf("%-14s %12.3f %12.3f %8.1fx %s\n", c.name, c.parallel_ms, c.serial_ms,
                c.serial_ms / c.parallel_ms, agree ? "yes" : "NO");
  }
  return all_agree ? 0 : 1;
}
