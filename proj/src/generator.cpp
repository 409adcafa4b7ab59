#include "hierfair/generator.hpp"

#include <algorithm>
#include <cmath>

#include "hierfair/errors.hpp"
#include "hierfair/rng.hpp"

namespace hierfair {

void GeneratorConfig::validate() const {
  if (nodes < 2) throw InvalidInput("a generated tree needs at least 2 nodes");
  if (shape == TreeShape::comb && nodes < 3) throw InvalidInput("a comb tree needs at least 3 nodes");
  if (items < 0) throw InvalidInput("negative item count");
  if (!(p > 0 && p <= 1)) throw InvalidInput("p must lie in (0, 1]");
  if (!(rho >= 0 && rho <= 1)) throw InvalidInput("rho must lie in [0, 1]");
  if (weight_min < 1 || weight_max < weight_min) throw InvalidInput("weight range must be positive integers lo <= hi");
  if (families.empty()) throw InvalidInput("no valuation family enabled");
  for (const auto& f : families)
    if (f != "binary_additive" && f != "capped_binary_additive" && f != "uniform_cap" && f != "binary_assignment")
      throw InvalidInput("unknown valuation family '" + f + "'");
  if (criteria.empty()) throw InvalidInput("no criterion to assign");
  if (min_subagents < 1 || max_subagents < min_subagents) throw InvalidInput("bad subagent range");
}

TreeShape parse_tree_shape(const std::string& s) {
  if (s == "balanced") return TreeShape::balanced;
  if (s == "comb") return TreeShape::comb;
  throw InvalidInput("unknown tree shape '" + s + "'");
}

PrefMode parse_pref_mode(const std::string& s) {
  if (s == "indep") return PrefMode::independent;
  if (s == "corr") return PrefMode::correlated;
  throw InvalidInput("unknown preference mode '" + s + "'");
}

std::string to_string(TreeShape s) { return s == TreeShape::balanced ? "balanced" : "comb"; }
std::string to_string(PrefMode p) { return p == PrefMode::independent ? "indep" : "corr"; }

std::vector<NodeId> tree_parents(TreeShape shape, int nodes) {
  std::vector<NodeId> parent(nodes + 1, 0);
  if (shape == TreeShape::balanced) {
    for (NodeId k = 2; k <= nodes; ++k) parent[k] = (k - 2) / 3 + 1;
    return parent;
  }
  if (nodes < 3) throw InvalidInput("a comb tree needs at least 3 nodes");
  // Spine 1 -> 3 -> 5 -> ..., each spine node also gets the leaf just after it.
  NodeId spine = 1;
  NodeId next = 2;
  while (nodes - next + 1 > 3) {
    parent[next] = spine;      // leaf
    parent[next + 1] = spine;  // next spine node
    spine = next + 1;
    next += 2;
  }
  for (; next <= nodes; ++next) parent[next] = spine;
  return parent;
}

namespace {

ItemSet draw_approvals(Rng& rng, int m, double p) {
  ItemSet s(m);
  for (Item g = 0; g < m; ++g)
    if (bernoulli(rng, p)) s.insert(g);
  return s;
}

}  // namespace

Instance generate(const GeneratorConfig& config) {
  config.validate();
  Rng rng(config.seed);
  const int n = config.nodes, m = config.items;
  const auto parent = tree_parents(config.shape, n);
  std::vector<int> child_count(n + 1, 0);
  for (NodeId k = 2; k <= n; ++k) ++child_count[parent[k]];

  std::vector<NodeSpec> specs;
  for (NodeId k = 1; k <= n; ++k) {
    NodeSpec s;
    s.id = k;
    if (k > 1) s.parent = parent[k];
    s.weight = k == 1 ? Rational(1) : Rational(uniform_int(rng, config.weight_min, config.weight_max));
    if (child_count[k] > 0)
      s.criterion = config.criteria[uniform_int(rng, 0, static_cast<std::int64_t>(config.criteria.size()) - 1)];
    specs.push_back(s);
  }

  Instance inst;
  inst.tree = Tree::build(specs);
  inst.m = m;
  inst.valuations.assign(n + 1, std::nullopt);
  std::optional<ItemSet> reference;
  // One preference draw: Bernoulli(p) per item, or in correlated mode a copy
  // of the first draw with probability rho per item.
  auto draw = [&]() {
    if (config.pref == PrefMode::independent || !reference) {
      ItemSet s = draw_approvals(rng, m, config.p);
      if (config.pref == PrefMode::correlated) reference = s;
      return s;
    }
    ItemSet s(m);
    for (Item g = 0; g < m; ++g) {
      bool keep = bernoulli(rng, config.rho) ? reference->contains(g) : bernoulli(rng, config.p);
      if (keep) s.insert(g);
    }
    return s;
  };
  for (NodeId x : inst.tree.leaves()) {
    ItemSet approved = draw();
    const std::string& family =
        config.families[uniform_int(rng, 0, static_cast<std::int64_t>(config.families.size()) - 1)];
    if (family == "binary_additive") {
      inst.valuations[x] = BinaryAdditive{approved};
    } else if (family == "capped_binary_additive") {
      int cap = static_cast<int>(uniform_int(rng, 1, std::max(1, approved.size())));
      inst.valuations[x] = CappedBinaryAdditive{approved, cap};
    } else if (family == "uniform_cap") {
      // every singleton is valued, so p does not apply
      inst.valuations[x] = UniformCap{static_cast<int>(uniform_int(rng, 1, std::max(1, m)))};
    } else {
      // the subagent-item edges are the singleton preferences here
      int k = static_cast<int>(uniform_int(rng, config.min_subagents, config.max_subagents));
      BinaryAssignment ba;
      for (int r = 0; r < k; ++r) ba.subagents.push_back(draw());
      inst.valuations[x] = std::move(ba);
    }
  }
  inst.meta["generator"] = to_string(config.shape);
  inst.meta["seed"] = std::to_string(config.seed);
  inst.meta["p"] = std::to_string(config.p);
  inst.meta["pref"] = to_string(config.pref);
  return inst;
}

}  // namespace hierfair
