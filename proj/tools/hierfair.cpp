// Command-line front end: generate, solve, audit, bench.
#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "hierfair/audit.hpp"
#include "hierfair/bench.hpp"
#include "hierfair/errors.hpp"
#include "hierfair/generator.hpp"
#include "hierfair/mgys.hpp"
#include "hierfair/oracle.hpp"
#include "hierfair/serialization.hpp"

using namespace hierfair;
using nlohmann::json;

namespace {

constexpr int kInvalidInput = 2;
constexpr int kBudget = 3;

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  for (std::string part; std::getline(in, part, ',');)
    if (!part.empty()) out.push_back(part);
  return out;
}

void emit(const json& j, const std::string& path) {
  if (path.empty() || path == "-")
    std::cout << j.dump(2) << '\n';
  else
    save_json(j, path);
}

Deadline deadline_for(double timeout_s) {
  if (timeout_s <= 0) return {};
  return Deadline::after(std::chrono::milliseconds(static_cast<long long>(timeout_s * 1000)));
}

json node_audit_json(const NodeAudit& a) {
  return {{"node", a.node},
          {"failing", a.failing},
          {"actual", a.actual},
          {"reference", a.reference},
          {"deviation", a.deviation}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fair allocation of indivisible items over a hierarchy of agents"};
  app.require_subcommand(1);

  GeneratorConfig gen;
  std::string shape = "balanced", pref = "indep", families = "binary_additive", criteria = "lorenz";
  std::string gen_out;
  auto* g = app.add_subcommand("generate", "Draw a random instance");
  g->add_option("--tree", shape, "balanced or comb")->capture_default_str();
  g->add_option("--nodes", gen.nodes, "Tree size")->capture_default_str();
  g->add_option("--items", gen.items, "Number of items")->capture_default_str();
  g->add_option("--p", gen.p, "Approval probability")->capture_default_str();
  g->add_option("--pref", pref, "indep or corr")->capture_default_str();
  g->add_option("--rho", gen.rho, "Copy probability in corr mode")->capture_default_str();
  g->add_option("--seed", gen.seed)->capture_default_str();
  g->add_option("--families", families, "Comma-separated leaf valuation families")->capture_default_str();
  g->add_option("--criteria", criteria, "Comma-separated criteria drawn per internal node")->capture_default_str();
  g->add_option("--weight-min", gen.weight_min)->capture_default_str();
  g->add_option("--weight-max", gen.weight_max)->capture_default_str();
  g->add_option("--max-subagents", gen.max_subagents)->capture_default_str();
  g->add_option("-o,--output", gen_out, "Output file, stdout if omitted");

  std::string algorithm = "sma", instance_path, solve_out;
  bool trace = false;
  double solve_timeout = 0;
  auto* s = app.add_subcommand("solve", "Compute an allocation");
  s->add_option("--algorithm", algorithm, "sma, mgys or gys-leaves")->capture_default_str();
  s->add_option("--instance", instance_path)->required();
  s->add_option("-o,--output", solve_out, "Output file, stdout if omitted");
  s->add_flag("--trace", trace, "Per-iteration JSON lines on stderr (mgys)");
  s->add_option("--timeout", solve_timeout, "Seconds, 0 for none");

  std::string audit_instance, audit_alloc;
  bool use_oracle = false;
  auto* a = app.add_subcommand("audit", "Measure fairness errors of an allocation");
  a->add_option("--instance", audit_instance)->required();
  a->add_option("--allocation", audit_alloc)->required();
  a->add_flag("--oracle", use_oracle, "Compare against exhaustive enumeration");

  std::string bench_config, bench_out;
  int jobs = 0;
  double bench_timeout = 0;
  auto* b = app.add_subcommand("bench", "Run a benchmark plan");
  b->add_option("--config", bench_config)->required();
  b->add_option("-o,--output", bench_out, "CSV file")->required();
  b->add_option("--jobs", jobs, "Worker threads, overrides the plan");
  b->add_option("--timeout", bench_timeout, "Per-run seconds, overrides the plan");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*g) {
      gen.shape = parse_tree_shape(shape);
      gen.pref = parse_pref_mode(pref);
      gen.families = split_list(families);
      gen.criteria.clear();
      for (const auto& c : split_list(criteria)) gen.criteria.push_back(Criterion::parse(c));
      emit(instance_to_json(generate(gen)), gen_out);
    } else if (*s) {
      auto inst = load_instance(instance_path);
      auto alg = parse_algorithm(algorithm);
      AllocationRecord rec;
      rec.algorithm = to_string(alg);
      if (alg == Algorithm::mgys && trace) {
        MgysOptions opt;
        opt.trace = true;
        opt.deadline = deadline_for(solve_timeout);
        auto r = run_mgys(inst, opt);
        for (const auto& e : r.trace) std::cerr << e.json() << '\n';
        rec.allocation = std::move(r.allocation);
        rec.utilities = std::move(r.utilities);
        rec.iterations = r.iterations;
      } else {
        if (trace) std::cerr << "note: --trace only applies to mgys\n";
        auto r = solve(alg, inst, deadline_for(solve_timeout));
        rec.allocation = std::move(r.allocation);
        rec.utilities = std::move(r.utilities);
        rec.iterations = r.iterations;
      }
      emit(allocation_to_json(inst, rec), solve_out);
    } else if (*a) {
      auto inst = load_instance(audit_instance);
      auto rec = allocation_from_json(inst, load_json(audit_alloc));
      AuditOptions opt;
      opt.use_oracle = use_oracle;
      auto report = audit(inst, rec.allocation, opt);
      json out = {{"err1", report.err1}, {"err2", report.err2}, {"discarded", report.discarded}};
      out["nodes"] = json::array();
      for (const auto& n : report.nodes) out["nodes"].push_back(node_audit_json(n));
      if (use_oracle) {
        auto v = check_allocation(inst, rec.allocation);
        out["oracle"] = {{"utilitarian_optimal", v.utilitarian_optimal}, {"psi_maximizing", v.psi_maximizing}};
      }
      std::cout << out.dump(2) << '\n';
    } else if (*b) {
      auto plan = bench_plan_from_json(load_json(bench_config));
      if (jobs > 0) plan.jobs = jobs;
      if (bench_timeout > 0) plan.timeout_s = bench_timeout;
      auto rows = run_bench(plan, [](const BenchRow& r) {
        std::cerr << r.config_id << ' ' << r.instance_id << ' ' << r.algorithm << (r.timeout ? " timeout" : "") << '\n';
      });
      std::ofstream f(bench_out);
      if (!f) throw InvalidInput("cannot write " + bench_out);
      f << rows_to_csv(rows);
      std::cout << summary_table(summarize(rows));
    }
  } catch (const InvalidInput& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << '\n';
    return kBudget;
  } catch (const Timeout& e) {
    std::cerr << "timeout: " << e.what() << '\n';
    return kBudget;
  }
  return 0;
}
