#include "hierfair/bench.hpp"

#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <mutex>
#include <sstream>
#include <thread>

#include "hierfair/audit.hpp"
#include "hierfair/mgys.hpp"
#include "hierfair/sma.hpp"

namespace hierfair {

using nlohmann::json;

std::string to_string(Algorithm a) {
  switch (a) {
    case Algorithm::sma:
      return "sma";
    case Algorithm::mgys:
      return "mgys";
    case Algorithm::gys_leaves:
      return "gys-leaves";
  }
  return "?";
}

Algorithm parse_algorithm(const std::string& s) {
  if (s == "sma") return Algorithm::sma;
  if (s == "mgys") return Algorithm::mgys;
  if (s == "gys-leaves") return Algorithm::gys_leaves;
  throw InvalidInput("unknown algorithm '" + s + "'");
}

SolveOutcome solve(Algorithm a, const Instance& inst, const Deadline& deadline) {
  SolveOutcome out;
  auto start = std::chrono::steady_clock::now();
  switch (a) {
    case Algorithm::sma: {
      auto r = run_sma(inst, {deadline});
      out.allocation = std::move(r.allocation);
      out.utilities = std::move(r.utilities);
      break;
    }
    case Algorithm::mgys: {
      MgysOptions opts;
      opts.deadline = deadline;
      auto r = run_mgys(inst, opts);
      out.allocation = std::move(r.allocation);
      out.utilities = std::move(r.utilities);
      out.iterations = r.iterations;
      break;
    }
    case Algorithm::gys_leaves:
      out.allocation = gys_on_leaves(inst, deadline);
      out.utilities = node_utilities(inst.tree, inst.valuations, out.allocation);
      break;
  }
  out.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return out;
}

BenchPlan bench_plan_from_json(const json& j) {
  try {
    BenchPlan plan;
    plan.timeout_s = j.value("timeout", plan.timeout_s);
    plan.jobs = j.value("jobs", plan.jobs);
    plan.audit = j.value("audit", plan.audit);
    if (j.contains("algorithms")) {
      plan.algorithms.clear();
      for (const auto& a : j.at("algorithms")) plan.algorithms.push_back(parse_algorithm(a.get<std::string>()));
    }
    const char* env = std::getenv("HIERFAIR_SEED");
    for (const auto& c : j.at("configs")) {
      BenchConfig bc;
      bc.id = c.at("id").get<std::string>();
      bc.instances = c.value("instances", bc.instances);
      GeneratorConfig& g = bc.generator;
      g.shape = parse_tree_shape(c.value("tree", std::string("balanced")));
      g.nodes = c.value("nodes", g.nodes);
      g.items = c.value("items", g.items);
      g.p = c.value("p", g.p);
      g.pref = parse_pref_mode(c.value("pref", std::string("indep")));
      g.rho = c.value("rho", g.rho);
      if (c.contains("families")) g.families = c.at("families").get<std::vector<std::string>>();
      if (c.contains("criteria")) {
        g.criteria.clear();
        for (const auto& t : c.at("criteria")) g.criteria.push_back(Criterion::parse(t.get<std::string>()));
      }
      if (c.contains("weights")) {
        auto w = c.at("weights").get<std::vector<int>>();
        if (w.size() != 2) throw InvalidInput("weights must be [lo, hi]");
        g.weight_min = w[0];
        g.weight_max = w[1];
      }
      g.seed = c.value("seed", g.seed);
      if (env) g.seed = std::strtoull(env, nullptr, 10);
      g.validate();
      plan.configs.push_back(std::move(bc));
    }
    if (plan.jobs < 1) throw InvalidInput("jobs must be positive");
    if (!(plan.timeout_s > 0)) throw InvalidInput("timeout must be positive");
    return plan;
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("malformed bench config: ") + e.what());
  }
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t k = 0; k < line.size(); ++k) {
    char c = line[k];
    if (quoted) {
      if (c == '"' && k + 1 < line.size() && line[k + 1] == '"') {
        cur += '"';
        ++k;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::string format_double(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

template <class T>
T parse_number(const std::string& s) {
  T v{};
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) throw InvalidInput("bad CSV number '" + s + "'");
  return v;
}

constexpr const char* kHeader = "config_id,instance_id,algorithm,runtime_ms,err1,err2,discarded,timeout";

}  // namespace

std::string rows_to_csv(const std::vector<BenchRow>& rows) {
  std::string out = std::string(kHeader) + "\n";
  for (const auto& r : rows) {
    out += csv_field(r.config_id) + "," + std::to_string(r.instance_id) + "," + csv_field(r.algorithm) + "," +
           format_double(r.runtime_ms) + "," + (r.err1 ? "1" : "0") + "," + std::to_string(r.err2) + "," +
           std::to_string(r.discarded) + "," + (r.timeout ? "1" : "0") + "\n";
  }
  return out;
}

std::vector<BenchRow> rows_from_csv(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  if (!std::getline(in, line) || line != kHeader) throw InvalidInput("unexpected CSV header");
  std::vector<BenchRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto f = split_csv_line(line);
    if (f.size() != 8) throw InvalidInput("CSV row with " + std::to_string(f.size()) + " fields");
    BenchRow r;
    r.config_id = f[0];
    r.instance_id = parse_number<int>(f[1]);
    r.algorithm = f[2];
    r.runtime_ms = parse_number<double>(f[3]);
    r.err1 = parse_number<int>(f[4]) != 0;
    r.err2 = parse_number<int>(f[5]);
    r.discarded = parse_number<int>(f[6]);
    r.timeout = parse_number<int>(f[7]) != 0;
    rows.push_back(std::move(r));
  }
  return rows;
}

std::uint64_t instance_seed(const BenchConfig& c, int k) { return c.generator.seed + static_cast<std::uint64_t>(k); }

BenchRow bench_one(const BenchConfig& config, int instance_id, Algorithm a, double timeout_s, bool do_audit) {
  BenchRow row;
  row.config_id = config.id;
  row.instance_id = instance_id;
  row.algorithm = to_string(a);
  GeneratorConfig g = config.generator;
  g.seed = instance_seed(config, instance_id);
  Instance inst = generate(g);
  auto budget = std::chrono::milliseconds(static_cast<long long>(timeout_s * 1000));
  try {
    SolveOutcome out = solve(a, inst, Deadline::after(budget));
    row.runtime_ms = out.runtime_ms;
    row.discarded = discarded_items(inst.tree, out.allocation);
    if (do_audit) {
      AuditOptions opts;
      opts.deadline = Deadline::after(budget);
      AuditReport rep = audit(inst, out.allocation, opts);
      row.err1 = rep.err1;
      row.err2 = rep.err2;
    }
  } catch (const Timeout&) {
    // An audit timeout keeps the solve time.
    row.timeout = true;
    if (row.runtime_ms == 0) row.runtime_ms = timeout_s * 1000;
  }
  return row;
}

std::vector<BenchRow> run_bench(const BenchPlan& plan, const std::function<void(const BenchRow&)>& progress) {
  struct Task {
    std::size_t config;
    int instance;
    Algorithm algorithm;
  };
  std::vector<Task> tasks;
  for (std::size_t c = 0; c < plan.configs.size(); ++c)
    for (int k = 0; k < plan.configs[c].instances; ++k)
      for (Algorithm a : plan.algorithms) tasks.push_back({c, k, a});

  std::vector<BenchRow> rows(tasks.size());
  std::atomic<std::size_t> next{0};
  std::mutex report;
  std::exception_ptr failure;
  auto worker = [&] {
    for (std::size_t t; (t = next.fetch_add(1)) < tasks.size();) {
      try {
        rows[t] = bench_one(plan.configs[tasks[t].config], tasks[t].instance, tasks[t].algorithm, plan.timeout_s,
                            plan.audit);
      } catch (...) {
        std::lock_guard lock(report);
        if (!failure) failure = std::current_exception();
        next = tasks.size();
        return;
      }
      if (progress) {
        std::lock_guard lock(report);
        progress(rows[t]);
      }
    }
  };
  std::vector<std::thread> pool;
  for (int w = 1; w < plan.jobs; ++w) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
  return rows;
}

std::vector<BenchSummary> summarize(const std::vector<BenchRow>& rows) {
  std::vector<BenchSummary> out;
  struct Acc {
    std::vector<double> times;
    int failing = 0;
    long long err2 = 0;
    long long discarded = 0;
  };
  std::vector<Acc> acc;
  for (const auto& r : rows) {
    std::size_t k = 0;
    while (k < out.size() && !(out[k].config_id == r.config_id && out[k].algorithm == r.algorithm)) ++k;
    if (k == out.size()) {
      out.push_back({r.config_id, r.algorithm});
      acc.emplace_back();
    }
    ++out[k].runs;
    if (r.timeout) {
      ++out[k].timeouts;
      continue;
    }
    acc[k].times.push_back(r.runtime_ms);
    acc[k].discarded += r.discarded;
    if (r.err1) {
      ++acc[k].failing;
      acc[k].err2 += r.err2;
    }
  }
  for (std::size_t k = 0; k < out.size(); ++k) {
    const auto& t = acc[k].times;
    if (t.empty()) continue;
    double mean = 0;
    for (double x : t) mean += x;
    mean /= static_cast<double>(t.size());
    double var = 0;
    for (double x : t) var += (x - mean) * (x - mean);
    out[k].mean_ms = mean;
    out[k].stddev_ms = t.size() > 1 ? std::sqrt(var / static_cast<double>(t.size() - 1)) : 0.0;
    out[k].err1_rate = static_cast<double>(acc[k].failing) / static_cast<double>(t.size());
    out[k].mean_err2_failing = acc[k].failing ? static_cast<double>(acc[k].err2) / acc[k].failing : 0.0;
    out[k].mean_discarded = static_cast<double>(acc[k].discarded) / static_cast<double>(t.size());
  }
  return out;
}

std::string summary_table(const std::vector<BenchSummary>& s) {
  std::string out;
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-20s %-11s %5s %5s %12s %12s %6s %8s %9s\n", "config", "algorithm", "runs", "t/o",
                "mean_ms", "stddev_ms", "err1", "err2|f", "discarded");
  out += buf;
  for (const auto& r : s) {
    std::snprintf(buf, sizeof buf, "%-20s %-11s %5d %5d %12.3f %12.3f %6.2f %8.2f %9.2f\n", r.config_id.c_str(),
                  r.algorithm.c_str(), r.runs, r.timeouts, r.mean_ms, r.stddev_ms, r.err1_rate, r.mean_err2_failing,
                  r.mean_discarded);
    out += buf;
  }
  return out;
}

}  // namespace hierfair
