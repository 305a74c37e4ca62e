#include "evosplit/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <ostream>

#include "CLI11.hpp"
#include "json.hpp"

#include "evosplit/baselines.hpp"
#include "evosplit/dataset.hpp"
#include "evosplit/evolution.hpp"
#include "evosplit/nsga2.hpp"
#include "evosplit/oracle.hpp"
#include "evosplit/parallel.hpp"
#include "evosplit/reference.hpp"
#include "evosplit/serialize.hpp"
#include "evosplit/split_metrics.hpp"
#include "evosplit/stats.hpp"

namespace evosplit {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitConfig = 3;
constexpr int kExitOracle = 4;
constexpr int kExitMismatch = 5;

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class MismatchError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

DatasetFormat parse_format(const std::string& name) {
  if (name == "sparse-text") return DatasetFormat::kSparseText;
  if (name == "jsonl") return DatasetFormat::kJsonl;
  throw ConfigError("unknown format '" + name + "' (expected sparse-text or jsonl)");
}

struct SpecOpts {
  std::int32_t k = 0;
  std::vector<double> proportions;
  std::vector<std::int64_t> targets;

  FoldSpec resolve(std::int64_t m) const {
    if (!targets.empty()) {
      if (!proportions.empty()) throw ConfigError("give either --proportions or --targets");
      FoldSpec spec = FoldSpec::from_targets(targets);
      if (k > 0 && spec.k != k) throw ConfigError("--k disagrees with the number of targets");
      if (spec.total() != m) throw ConfigError("targets must sum to the example count");
      return spec;
    }
    if (!proportions.empty()) {
      FoldSpec spec = FoldSpec::from_proportions(proportions, m);
      if (k > 0 && spec.k != k) throw ConfigError("--k disagrees with the number of proportions");
      return spec;
    }
    if (k < 1) throw ConfigError("one of --k, --proportions, --targets is required");
    return FoldSpec::uniform(k, m);
  }
};

void add_spec_options(CLI::App* cmd, SpecOpts& opts) {
  cmd->add_option("--k", opts.k, "number of folds");
  cmd->add_option("--proportions", opts.proportions, "fold proportions, e.g. 0.8,0.2")
      ->delimiter(',');
  cmd->add_option("--targets", opts.targets, "exact fold sizes, e.g. 400,100")->delimiter(',');
}

void write_or_print(const nlohmann::json& j, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << j.dump(2) << '\n';
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot write file: " + path);
  file << j.dump(2) << '\n';
}

const std::vector<std::string> kMethods = {"random", "is", "sois", "ea-ld", "ea-lpd", "moea"};

bool is_evolutionary(const std::string& method) {
  return method == "ea-ld" || method == "ea-lpd" || method == "moea";
}

struct MethodRun {
  Assignment assignment;
  std::int64_t generations = -1;  // -1 for non-evolutionary methods
  bool constraint_repair_incomplete = false;
  std::optional<ParetoFront> front;  // moea only
};

MethodRun run_method(const std::string& method, const MultiLabelDataset& d, const FoldSpec& spec,
                     std::uint64_t seed, std::int32_t runs, bool constrained) {
  MethodRun result;
  if (method == "random") {
    result.assignment = random_split(d, spec, RngSeed{seed});
  } else if (method == "is") {
    result.assignment = iterative_stratification(d, spec, RngSeed{seed});
  } else if (method == "sois") {
    result.assignment = second_order_iterative_stratification(d, spec, RngSeed{seed});
  } else if (method == "ea-ld" || method == "ea-lpd") {
    EAParams params;
    params.fitness = method == "ea-ld" ? FitnessMetric::kLdPrime : FitnessMetric::kLpd;
    params.constrained = constrained;
    params.seed = RngSeed{seed};
    params.runs = runs;
    EAResult ea = run_best_of(d, spec, params);
    result.assignment = std::move(ea.best_assignment);
    result.generations = ea.generations;
    result.constraint_repair_incomplete = ea.constraint_repair_incomplete;
  } else if (method == "moea") {
    EAParams params;
    params.constrained = constrained;
    params.seed = RngSeed{seed};
    params.runs = runs;
    // Best of `runs` independent runs, judged by the knee distance.
    std::optional<ParetoFront> best;
    double best_dist = 0.0;
    std::size_t best_knee = 0;
    for (std::int32_t r = 0; r < runs; ++r) {
      ParetoFront front = nsga2_evolve(d, spec, params, seed + static_cast<std::uint64_t>(r));
      const std::size_t knee = select_knee(front.objectives);
      const ObjectivePair& obj = front.objectives[knee];
      const double dist = std::sqrt(obj.ld_prime * obj.ld_prime + obj.lpd * obj.lpd);
      if (!best || dist < best_dist) {
        best_dist = dist;
        best_knee = knee;
        best = std::move(front);
      }
    }
    result.assignment = best->assignments[best_knee];
    result.generations = best->generations;
    result.constraint_repair_incomplete = best->constraint_repair_incomplete;
    result.front = std::move(best);
  } else {
    throw ConfigError("unknown method '" + method + "'");
  }
  return result;
}

nlohmann::json resolved_config(const std::string& command, const std::string& input,
                               const std::string& format, const FoldSpec& spec,
                               std::uint64_t seed) {
  nlohmann::json config;
  config["command"] = command;
  config["input"] = input;
  config["format"] = format;
  config["k"] = spec.k;
  config["proportions"] = spec.proportions;
  config["targets"] = spec.targets;
  config["seed"] = seed;
  return config;
}

// ---- analyze ---------------------------------------------------------------

struct AnalyzeOpts {
  std::string input;
  std::string format = "sparse-text";
  std::string out_report;
};

int cmd_analyze(const AnalyzeOpts& opts, std::ostream& out) {
  const MultiLabelDataset d = load_dataset_file(opts.input, parse_format(opts.format));
  const DatasetStats s = dataset_stats(d);
  const PairStats p = pair_stats(d);
  write_or_print(stats_to_json(d, s, p), opts.out_report, out);
  return kExitOk;
}

// ---- split -----------------------------------------------------------------

struct SplitOpts {
  std::string input;
  std::string format = "sparse-text";
  SpecOpts spec;
  std::string method;
  bool constrained = false;
  std::uint64_t seed = 0;
  std::int32_t runs = 5;
  bool runs_given = false;
  bool want_oracle = false;
  bool timings = false;
  std::string out_assignment;
  std::string out_report;
  std::string out_front;
};

nlohmann::json oracle_to_json(const MultiLabelDataset& d, const FoldSpec& spec,
                              const std::string& method) {
  nlohmann::json j;
  if (method == "ea-ld") {
    j["metric"] = "ld_prime";
    const OracleResult r = exhaustive_optimal(d, spec, Metric::kLdPrime);
    j["optimum"] = r.optimum_value;
    j["enumerated"] = r.enumerated;
  } else if (method == "ea-lpd") {
    j["metric"] = "lpd";
    const OracleResult r = exhaustive_optimal(d, spec, Metric::kLpd);
    j["optimum"] = r.optimum_value;
    j["enumerated"] = r.enumerated;
  } else if (method == "moea") {
    const OracleResult r = exhaustive_optimal(d, spec, Metric::kLdPrime);
    j["metric"] = "ld_prime+lpd";
    j["optimum_ld_prime"] = r.optimum_value;
    double best_lpd = r.pareto_pairs.empty() ? 0.0 : r.pareto_pairs.front().lpd;
    for (const ObjectivePair& p : r.pareto_pairs) best_lpd = std::min(best_lpd, p.lpd);
    j["optimum_lpd"] = best_lpd;
    j["enumerated"] = r.enumerated;
  } else {
    j["metric"] = "ld";
    const OracleResult r = exhaustive_optimal(d, spec, Metric::kLd);
    j["optimum"] = r.optimum_value;
    j["enumerated"] = r.enumerated;
  }
  return j;
}

int cmd_split(const SplitOpts& opts, std::ostream& out) {
  if (opts.runs_given && !is_evolutionary(opts.method)) {
    throw ConfigError("--runs only applies to ea-ld, ea-lpd, moea");
  }
  if (opts.constrained && !is_evolutionary(opts.method)) {
    throw ConfigError("--constrained only applies to ea-ld, ea-lpd, moea");
  }
  if (!opts.out_front.empty() && opts.method != "moea") {
    throw ConfigError("--out-front only applies to moea");
  }
  if (opts.runs < 1) throw ConfigError("--runs must be >= 1");

  const MultiLabelDataset d = load_dataset_file(opts.input, parse_format(opts.format));
  const FoldSpec spec = opts.spec.resolve(d.num_examples());
  spec.validate_for_split();

  const auto start = std::chrono::steady_clock::now();
  const MethodRun run = run_method(opts.method, d, spec, opts.seed, opts.runs, opts.constrained);
  const auto elapsed = std::chrono::steady_clock::now() - start;

  nlohmann::json report = report_to_json(evaluate_split(d, run.assignment, spec));
  report["method"] = opts.method;
  report["seed"] = opts.seed;
  report["k"] = spec.k;
  report["proportions"] = spec.proportions;
  if (is_evolutionary(opts.method)) {
    report["runs"] = opts.runs;
    report["generations"] = run.generations;
    report["constrained"] = opts.constrained;
    if (opts.constrained) {
      report["constraint_repair_incomplete"] = run.constraint_repair_incomplete;
    }
  }
  if (opts.timings) {
    report["runtime_ms"] =
        std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count();
  }
  nlohmann::json config = resolved_config("split", opts.input, opts.format, spec, opts.seed);
  config["method"] = opts.method;
  config["constrained"] = opts.constrained;
  config["runs"] = opts.runs;
  report["config"] = std::move(config);
  if (opts.want_oracle) report["oracle"] = oracle_to_json(d, spec, opts.method);

  if (!opts.out_assignment.empty()) write_assignment_csv_file(opts.out_assignment, run.assignment);
  if (!opts.out_front.empty() && run.front) {
    std::ofstream file(opts.out_front, std::ios::binary);
    if (!file) throw std::runtime_error("cannot write file: " + opts.out_front);
    file << front_to_json(*run.front).dump(2) << '\n';
  }
  write_or_print(report, opts.out_report, out);
  return kExitOk;
}

// ---- evaluate --------------------------------------------------------------

struct EvaluateOpts {
  std::string input;
  std::string format = "sparse-text";
  SpecOpts spec;
  std::string assignment;
  std::string out_report;
};

int cmd_evaluate(const EvaluateOpts& opts, std::ostream& out) {
  const MultiLabelDataset d = load_dataset_file(opts.input, parse_format(opts.format));
  const FoldSpec spec = opts.spec.resolve(d.num_examples());
  spec.validate_for_split();

  const Assignment a = read_assignment_csv_file(opts.assignment);
  if (a.size() != d.num_examples()) {
    throw MismatchError("assignment has " + std::to_string(a.size()) + " rows, dataset has " +
                        std::to_string(d.num_examples()) + " examples");
  }
  for (const std::int32_t f : a.fold_of) {
    if (f < 0 || f >= spec.k) {
      throw MismatchError("fold index " + std::to_string(f) + " out of range for k=" +
                          std::to_string(spec.k));
    }
  }

  nlohmann::json report = report_to_json(evaluate_split(d, a, spec));
  report["config"] = resolved_config("evaluate", opts.input, opts.format, spec, 0);
  write_or_print(report, opts.out_report, out);
  return kExitOk;
}

// ---- compare ---------------------------------------------------------------

struct CompareOpts {
  std::string input;
  std::string format = "sparse-text";
  SpecOpts spec;
  std::vector<std::string> methods;
  bool constrained = false;
  std::uint64_t seed = 0;
  std::int32_t runs = 5;
  bool runs_given = false;
  std::string out_report;
};

int cmd_compare(const CompareOpts& opts, std::ostream& out) {
  if (opts.methods.size() < 2) throw ConfigError("compare needs at least two methods");
  bool any_evolutionary = false;
  for (const std::string& method : opts.methods) {
    if (std::find(kMethods.begin(), kMethods.end(), method) == kMethods.end()) {
      throw ConfigError("unknown method '" + method + "'");
    }
    any_evolutionary = any_evolutionary || is_evolutionary(method);
  }
  if (opts.runs_given && !any_evolutionary) {
    throw ConfigError("--runs only applies when an evolutionary method is compared");
  }

  const MultiLabelDataset d = load_dataset_file(opts.input, parse_format(opts.format));
  const FoldSpec spec = opts.spec.resolve(d.num_examples());
  spec.validate_for_split();

  struct Row {
    std::string method;
    bool ok = false;
    std::string error;
    int error_code = 0;
    SplitReport report;
  };
  std::vector<Row> rows;
  for (const std::string& method : opts.methods) {
    Row row;
    row.method = method;
    try {
      const bool constrained = opts.constrained && is_evolutionary(method);
      const MethodRun run = run_method(method, d, spec, opts.seed, opts.runs, constrained);
      row.report = evaluate_split(d, run.assignment, spec);
      row.ok = true;
    } catch (const std::exception& e) {
      row.error = e.what();
      row.error_code = kExitConfig;
    }
    rows.push_back(std::move(row));
  }

  // Lowest value per measure wins.
  const auto pick = [&](auto getter) {
    double best = 0.0;
    bool seen = false;
    for (const Row& row : rows) {
      if (!row.ok) continue;
      const double v = static_cast<double>(getter(row.report));
      if (!seen || v < best) {
        best = v;
        seen = true;
      }
    }
    return best;
  };
  const double best_ld = pick([](const SplitReport& r) { return r.ld; });
  const double best_ldp = pick([](const SplitReport& r) { return r.ld_prime; });
  const double best_lpd = pick([](const SplitReport& r) { return r.lpd; });
  const double best_ed = pick([](const SplitReport& r) { return r.ed; });
  const double best_fz = pick([](const SplitReport& r) { return static_cast<double>(r.fz); });
  const double best_flz = pick([](const SplitReport& r) { return static_cast<double>(r.flz); });

  char buffer[256];
  out << "method      ld         ld_prime   lpd        ed         fz    flz\n";
  for (const Row& row : rows) {
    if (!row.ok) {
      std::snprintf(buffer, sizeof(buffer), "%-10s  error: %s\n", row.method.c_str(),
                    row.error.c_str());
      out << buffer;
      continue;
    }
    const SplitReport& r = row.report;
    const auto mark = [](bool best) { return best ? '*' : ' '; };
    std::snprintf(buffer, sizeof(buffer),
                  "%-10s  %.2e%c  %.2e%c  %.2e%c  %.2e%c  %3lld%c  %3lld%c\n", row.method.c_str(),
                  r.ld, mark(r.ld == best_ld), r.ld_prime, mark(r.ld_prime == best_ldp), r.lpd,
                  mark(r.lpd == best_lpd), r.ed, mark(r.ed == best_ed),
                  static_cast<long long>(r.fz), mark(static_cast<double>(r.fz) == best_fz),
                  static_cast<long long>(r.flz), mark(static_cast<double>(r.flz) == best_flz));
    out << buffer;
  }

  nlohmann::json table = nlohmann::json::array();
  for (const Row& row : rows) {
    nlohmann::json entry;
    entry["method"] = row.method;
    entry["status"] = row.ok ? "ok" : "error";
    if (row.ok) {
      entry["report"] = report_to_json(row.report);
      entry["best"] = {{"ld", row.report.ld == best_ld},
                       {"ld_prime", row.report.ld_prime == best_ldp},
                       {"lpd", row.report.lpd == best_lpd},
                       {"ed", row.report.ed == best_ed},
                       {"fz", static_cast<double>(row.report.fz) == best_fz},
                       {"flz", static_cast<double>(row.report.flz) == best_flz}};
    } else {
      entry["error"] = row.error;
    }
    table.push_back(std::move(entry));
  }
  nlohmann::json report;
  report["rows"] = std::move(table);
  nlohmann::json config = resolved_config("compare", opts.input, opts.format, spec, opts.seed);
  config["methods"] = opts.methods;
  config["constrained"] = opts.constrained;
  config["runs"] = opts.runs;
  report["config"] = std::move(config);
  if (!opts.out_report.empty()) write_or_print(report, opts.out_report, out);

  for (const Row& row : rows) {
    if (!row.ok) return row.error_code;
  }
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"multi-label dataset splitting and imbalance measurement"};
  app.require_subcommand(1);
  int threads = 0;

  AnalyzeOpts analyze;
  CLI::App* analyze_cmd = app.add_subcommand("analyze", "dataset imbalance measures");
  analyze_cmd->add_option("--input", analyze.input, "dataset file")->required();
  analyze_cmd->add_option("--format", analyze.format, "sparse-text or jsonl");
  analyze_cmd->add_option("--out-report", analyze.out_report, "write the JSON here");
  analyze_cmd->add_option("--threads", threads, "thread cap (default EVOSPLIT_THREADS)");

  SplitOpts split;
  CLI::App* split_cmd = app.add_subcommand("split", "produce a fold assignment");
  split_cmd->add_option("--input", split.input, "dataset file")->required();
  split_cmd->add_option("--format", split.format, "sparse-text or jsonl");
  add_spec_options(split_cmd, split.spec);
  split_cmd->add_option("--method", split.method, "random | is | sois | ea-ld | ea-lpd | moea")
      ->required();
  split_cmd->add_flag("--constrained", split.constrained, "cover every label with presence >= k");
  split_cmd->add_option("--seed", split.seed, "master seed");
  CLI::Option* runs_opt = split_cmd->add_option("--runs", split.runs, "independent runs, best kept");
  split_cmd->add_flag("--oracle", split.want_oracle, "add the exhaustive optimum to the report");
  split_cmd->add_flag("--timings", split.timings, "add runtime_ms to the report");
  split_cmd->add_option("--out-assignment", split.out_assignment, "assignment CSV path");
  split_cmd->add_option("--out-report", split.out_report, "report JSON path");
  split_cmd->add_option("--out-front", split.out_front, "Pareto front JSON path (moea)");
  split_cmd->add_option("--threads", threads, "thread cap (default EVOSPLIT_THREADS)");

  EvaluateOpts evaluate;
  CLI::App* evaluate_cmd = app.add_subcommand("evaluate", "score an existing assignment");
  evaluate_cmd->add_option("--input", evaluate.input, "dataset file")->required();
  evaluate_cmd->add_option("--format", evaluate.format, "sparse-text or jsonl");
  add_spec_options(evaluate_cmd, evaluate.spec);
  evaluate_cmd->add_option("--assignment", evaluate.assignment, "assignment CSV")->required();
  evaluate_cmd->add_option("--out-report", evaluate.out_report, "report JSON path");
  evaluate_cmd->add_option("--threads", threads, "thread cap (default EVOSPLIT_THREADS)");

  CompareOpts compare;
  CLI::App* compare_cmd = app.add_subcommand("compare", "run several methods side by side");
  compare_cmd->add_option("--input", compare.input, "dataset file")->required();
  compare_cmd->add_option("--format", compare.format, "sparse-text or jsonl");
  add_spec_options(compare_cmd, compare.spec);
  compare_cmd->add_option("--methods", compare.methods, "comma-separated method list")
      ->delimiter(',')
      ->required();
  compare_cmd->add_flag("--constrained", compare.constrained,
                        "constrained mode for evolutionary rows");
  compare_cmd->add_option("--seed", compare.seed, "master seed");
  CLI::Option* compare_runs_opt =
      compare_cmd->add_option("--runs", compare.runs, "runs per evolutionary method");
  compare_cmd->add_option("--out-report", compare.out_report, "comparison JSON path");
  compare_cmd->add_option("--threads", threads, "thread cap (default EVOSPLIT_THREADS)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  if (threads > 0) set_thread_count(threads);
  split.runs_given = runs_opt->count() > 0;
  compare.runs_given = compare_runs_opt->count() > 0;

  try {
    if (analyze_cmd->parsed()) return cmd_analyze(analyze, out);
    if (split_cmd->parsed()) return cmd_split(split, out);
    if (evaluate_cmd->parsed()) return cmd_evaluate(evaluate, out);
    if (compare_cmd->parsed()) return cmd_compare(compare, out);
    err << "no command given\n";
    return kExitConfig;
  } catch (const ParseError& e) {
    err << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const MismatchError& e) {
    err << "assignment mismatch: " << e.what() << '\n';
    return kExitMismatch;
  } catch (const OracleTooLarge& e) {
    err << "oracle error: " << e.what() << '\n';
    return kExitOracle;
  } catch (const std::invalid_argument& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "input error: " << e.what() << '\n';
    return kExitInput;
  }
}

}  // namespace evosplit
