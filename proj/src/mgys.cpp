#include "hierfair/mgys.hpp"

#include <algorithm>
#include <numeric>

#include "hierfair/welfare.hpp"

namespace hierfair {
namespace {

std::string join(const std::vector<int>& v) {
  std::string s = "[";
  for (std::size_t k = 0; k < v.size(); ++k) s += (k ? "," : "") + std::to_string(v[k]);
  return s + "]";
}

bool in_chain(const Tree& tree, NodeId a, NodeId z) { return a == z || tree.is_ancestor(a, z); }

}  // namespace

std::string MgysTraceEvent::json() const {
  return "{\"iteration\":" + std::to_string(iteration) + ",\"leaf\":" + std::to_string(leaf) +
         ",\"path\":" + join(path) + ",\"pruned\":" + join(pruned) + "}";
}

MgysState::MgysState(const Tree& tree, std::vector<const AgentValuation*> agents, const ItemSet& items,
                     MgysOptions options)
    : tree_(&tree), options_(options) {
  const int n = tree.node_count();
  if (tree.is_leaf(tree.root())) throw InvalidInput("the root must be an internal node");
  if (static_cast<int>(agents.size()) != n + 1) throw InvalidInput("agent table does not match the tree");
  for (NodeId x : tree.leaves())
    if (!agents[x]) throw InvalidInput("leaf " + std::to_string(x) + " has no valuation");
  exchange_ = ExchangeState::with_pool(std::move(agents), items);
  alloc_.m = items.universe();
  alloc_.bundles.assign(n + 1, ItemSet(alloc_.m));
  alloc_.bundles[tree.root()] = items;
  alloc_.bundles[kPool] = items;
  util_.assign(n + 1, 0);
  alive_.assign(n + 1, 1);
  live_children_.assign(n + 1, 0);
  for (NodeId i = 1; i <= n; ++i) live_children_[i] = static_cast<int>(tree.children(i).size());
  if (options_.audit) audit_state("start");
}

bool MgysState::finished() const { return live_children_[tree_->root()] == 0; }

NodeId MgysState::select_leaf() const {
  NodeId i = tree_->root();
  while (!tree_->is_leaf(i)) {
    const Criterion& crit = tree_->criterion(i);
    std::optional<GainVector> best;
    for (NodeId c : tree_->children(i)) {
      if (!alive_[c]) continue;
      GainVector g = gain(crit, util_[c], tree_->weight(c), c);
      if (!best || gain_precedes(g, *best)) best = std::move(g);
    }
    if (!best) throw InvalidInput("select_leaf on a finished run");
    i = best->node;
  }
  return i;
}

int MgysState::actual_utility(NodeId i) const {
  int total = 0;
  for (NodeId x : tree_->leaves(i)) total += exchange_.agents[x]->value(alloc_.bundles[x]);
  return total;
}

MgysTraceEvent MgysState::step() {
  options_.deadline.check();
  MgysTraceEvent ev;
  ev.iteration = ++iterations_;
  ev.leaf = select_leaf();
  const NodeId x = ev.leaf;
  auto path = shortest_transfer_path(exchange_, x, exchange_.pool(), options_.deadline);
  if (path) {
    std::vector<int> sizes;
    int welfare = 0;
    if (options_.audit) {
      for (const auto& b : alloc_.bundles) sizes.push_back(b.size());
      welfare = actual_utility(tree_->root());
    }
    auto moves = path_augment(exchange_, *path);
    apply_moves(*tree_, alloc_.bundles, moves);
    ++util_[x];
    for (NodeId a : tree_->ancestors(x)) ++util_[a];
    ev.path = path->items;
    if (options_.audit) {
      audit_deltas(sizes, x, moves.back().from);
      if (actual_utility(tree_->root()) != welfare + 1)
        failures_.push_back("iteration " + std::to_string(iterations_) + ": welfare did not grow by one");
    }
  } else {
    alive_[x] = 0;
    ev.pruned.push_back(x);
    NodeId p = *tree_->parent(x);
    --live_children_[p];
    while (p != tree_->root() && live_children_[p] == 0) {
      alive_[p] = 0;
      ev.pruned.push_back(p);
      p = *tree_->parent(p);
      --live_children_[p];
    }
  }
  if (options_.audit) audit_state("iteration");
  if (options_.trace) trace_.push_back(ev);
  return ev;
}

void MgysState::run() {
  while (!finished()) step();
}

void MgysState::audit_deltas(const std::vector<int>& before, NodeId x, NodeId y) {
  const Tree& t = *tree_;
  for (NodeId i = 0; i <= t.node_count(); ++i) {
    int expected = before[i];
    bool up = in_chain(t, i, x);
    bool down = in_chain(t, i, y);
    if (up && !down) ++expected;
    if (down && !up) --expected;
    if (alloc_.bundles[i].size() != expected)
      failures_.push_back("iteration " + std::to_string(iterations_) + ": node " + std::to_string(i) + " has " +
                          std::to_string(alloc_.bundles[i].size()) + " items, expected " + std::to_string(expected));
  }
}

void MgysState::audit_state(const char* when) {
  const Tree& t = *tree_;
  const std::string where = std::string(when) + " " + std::to_string(iterations_) + ": ";
  for (NodeId i = 1; i <= t.node_count(); ++i) {
    if (!alive_[i] || i == t.root()) continue;
    int actual = actual_utility(i);
    if (actual != alloc_.bundles[i].size())
      failures_.push_back(where + "node " + std::to_string(i) + " is redundant (v=" + std::to_string(actual) +
                          ", |π|=" + std::to_string(alloc_.bundles[i].size()) + ")");
    if (actual != util_[i]) failures_.push_back(where + "cached utility of node " + std::to_string(i) + " is stale");
  }
  ItemSet covered = alloc_.bundles[kPool];
  int total = covered.size();
  for (NodeId x : t.leaves()) {
    covered |= alloc_.bundles[x];
    total += alloc_.bundles[x].size();
  }
  if (covered != exchange_.domain || total != exchange_.domain.size())
    failures_.push_back(where + "pool and leaf bundles do not partition the items");
  for (NodeId i : t.internal_nodes()) {
    ItemSet u(alloc_.m);
    for (NodeId c : t.children(i)) u |= alloc_.bundles[c];
    if (i == t.root()) u |= alloc_.bundles[kPool];
    if (u != alloc_.bundles[i]) failures_.push_back(where + "node " + std::to_string(i) + " differs from its children");
  }
  if (exchange_.domain == ItemSet::full(alloc_.m)) {
    auto report = validate_allocation(t, alloc_);
    if (!report.ok()) failures_.push_back(where + report.str());
  }
  if (iterations_ > exchange_.domain.size() + static_cast<int>(t.leaves().size()))
    failures_.push_back(where + "iteration bound exceeded");
}

MgysResult MgysState::result() const {
  MgysResult r;
  r.allocation = alloc_;
  r.utilities = util_;
  r.iterations = iterations_;
  r.trace = trace_;
  r.audit_failures = failures_;
  return r;
}

MgysResult run_mgys(const Instance& inst, const MgysOptions& options) {
  validate_instance(inst);
  std::vector<LeafAgent> storage;
  storage.reserve(inst.tree.leaves().size());
  std::vector<const AgentValuation*> agents(inst.tree.node_count() + 1, nullptr);
  for (NodeId x : inst.tree.leaves()) {
    storage.emplace_back(leaf_valuation(inst.valuations, x));
    agents[x] = &storage.back();
  }
  MgysState st(inst.tree, std::move(agents), inst.all_items(), options);
  st.run();
  return st.result();
}

LocalAllocation monolevel_gys(const std::vector<NodeId>& agents, const std::vector<Rational>& weights,
                              const std::vector<const AgentValuation*>& valuations, const ItemSet& items,
                              const Criterion& crit, const Deadline& deadline) {
  const std::size_t k = agents.size();
  if (k == 0) throw InvalidInput("GYS needs at least one agent");
  if (weights.size() != k || valuations.size() != k) throw InvalidInput("GYS argument lengths differ");
  std::vector<std::size_t> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return agents[a] < agents[b]; });

  std::vector<Rational> star_weights;
  std::vector<const AgentValuation*> star_agents{nullptr, nullptr};
  for (std::size_t pos : order) {
    star_weights.push_back(weights[pos]);
    star_agents.push_back(valuations[pos]);
  }
  Tree star = Tree::star(static_cast<int>(k), crit, star_weights);
  MgysOptions opts;
  opts.deadline = deadline;
  MgysState st(star, std::move(star_agents), items, opts);
  st.run();

  LocalAllocation la;
  la.source = items;
  la.nodes = agents;
  la.shares.assign(k, ItemSet(items.universe()));
  for (std::size_t r = 0; r < k; ++r) la.shares[order[r]] = st.allocation()[static_cast<NodeId>(r) + 2];
  return la;
}

}  // namespace hierfair
