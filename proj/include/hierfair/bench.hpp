#pragma once

#include <functional>
#include <string>
#include <vector>

#include "json.hpp"

#include "hierfair/allocation.hpp"
#include "hierfair/errors.hpp"
#include "hierfair/generator.hpp"
#include "hierfair/instance.hpp"

namespace hierfair {

enum class Algorithm { sma, mgys, gys_leaves };

/// "sma", "mgys", "gys-leaves"
std::string to_string(Algorithm a);
Algorithm parse_algorithm(const std::string& s);

struct SolveOutcome {
  MultilevelAllocation allocation;
  std::vector<int> utilities;
  int iterations = 0;
  double runtime_ms = 0;
};

/// Runs one algorithm; throws Timeout past the deadline.
SolveOutcome solve(Algorithm a, const Instance& inst, const Deadline& deadline = {});

struct BenchConfig {
  std::string id;
  GeneratorConfig generator;
  int instances = 30;
};

struct BenchPlan {
  std::vector<BenchConfig> configs;
  std::vector<Algorithm> algorithms = {Algorithm::sma, Algorithm::mgys, Algorithm::gys_leaves};
  double timeout_s = 60;
  int jobs = 1;
  /// Compute err1/err2 for every run (the discarded count is always filled).
  bool audit = true;
};

/// {"timeout": 60, "jobs": 1, "audit": true, "algorithms": ["sma", ...],
///  "configs": [{"id": "...", "instances": 30, "tree": "balanced", "nodes": 15,
///  "items": 25, "p": 0.5, "pref": "indep", "rho": 0.8, "families": [...],
///  "criteria": ["lorenz"], "weights": [1, 5], "seed": 1}]}
/// HIERFAIR_SEED, when set, replaces every config seed.
BenchPlan bench_plan_from_json(const nlohmann::json& j);

struct BenchRow {
  std::string config_id;
  int instance_id = 0;
  std::string algorithm;
  double runtime_ms = 0;
  bool err1 = false;
  int err2 = 0;
  int discarded = 0;
  bool timeout = false;
  friend bool operator==(const BenchRow&, const BenchRow&) = default;
};

std::string rows_to_csv(const std::vector<BenchRow>& rows);
std::vector<BenchRow> rows_from_csv(const std::string& csv);

/// Seed of instance k of a config.
std::uint64_t instance_seed(const BenchConfig& c, int k);

/// One run: generate, solve, audit. Timeouts are recorded in the row.
BenchRow bench_one(const BenchConfig& config, int instance_id, Algorithm a, double timeout_s, bool audit);

/// All (config, instance, algorithm) runs on `plan.jobs` worker threads, in
/// canonical order. `progress` is called after each finished run.
std::vector<BenchRow> run_bench(const BenchPlan& plan,
                                const std::function<void(const BenchRow&)>& progress = {});

struct BenchSummary {
  std::string config_id;
  std::string algorithm;
  int runs = 0;
  int timeouts = 0;
  double mean_ms = 0;
  double stddev_ms = 0;
  double err1_rate = 0;
  /// Mean err2 over the instances with err1.
  double mean_err2_failing = 0;
  double mean_discarded = 0;
};

/// Per (config, algorithm), in order of first appearance. Timed-out runs are
/// counted but excluded from the means.
std::vector<BenchSummary> summarize(const std::vector<BenchRow>& rows);
std::string summary_table(const std::vector<BenchSummary>& s);

}  // namespace hierfair
