#include "hierfair/audit.hpp"

#include "hierfair/errors.hpp"
#include "hierfair/welfare.hpp"

namespace hierfair {

const NodeAudit& AuditReport::at(NodeId i) const {
  for (const auto& n : nodes)
    if (n.node == i) return n;
  throw InvalidInput("no audit entry for node " + std::to_string(i));
}

int discarded_items(const Tree& tree, const MultilevelAllocation& alloc) {
  ItemSet held(alloc.m);
  for (NodeId x : tree.leaves()) held |= alloc[x];
  return alloc.m - held.size();
}

AuditReport audit(const Instance& inst, const MultilevelAllocation& alloc, const AuditOptions& options) {
  validate_instance(inst);
  const Tree& t = inst.tree;
  auto validity = validate_allocation(t, alloc);
  if (!validity.ok()) throw InvalidInput("allocation is not a multilevel allocation: " + validity.str());
  AgentTable agents(t, inst.valuations);
  const auto util = node_utilities(t, inst.valuations, alloc);
  std::optional<OracleVerdict> oracle;
  if (options.use_oracle) oracle = check_allocation(inst, alloc, options.budget);

  AuditReport report;
  report.discarded = discarded_items(t, alloc);
  for (NodeId i : t.internal_nodes()) {
    const auto& kids = t.children(i);
    std::vector<Rational> weights;
    std::vector<const AgentValuation*> vals;
    for (NodeId c : kids) {
      weights.push_back(t.weight(c));
      vals.push_back(&agents[c]);
    }
    LocalAllocation a = monolevel_gys(kids, weights, vals, alloc[i], t.criterion(i), options.deadline);
    NodeAudit na;
    na.node = i;
    for (std::size_t k = 0; k < kids.size(); ++k) {
      na.actual.push_back(util[kids[k]]);
      na.reference.push_back(agents[kids[k]].value(a.shares[k]));
      na.actual_sizes.push_back(alloc[kids[k]].size());
      na.reference_sizes.push_back(a.shares[k].size());
      na.deviation += std::abs(na.actual_sizes.back() - na.reference_sizes.back());
    }
    if (oracle) {
      na.failing = !oracle->at(i).psi;
      na.reference = oracle->at(i).best;
    } else {
      na.failing = compare(t.criterion(i), na.actual, na.reference, weights) < 0;
    }
    if (na.failing) {
      report.err1 = true;
      report.err2 += na.deviation;
    }
    report.nodes.push_back(std::move(na));
  }
  return report;
}

MultilevelAllocation gys_on_leaves(const Instance& inst, const Deadline& deadline) {
  validate_instance(inst);
  const Tree& t = inst.tree;
  std::vector<LeafAgent> storage;
  storage.reserve(t.leaves().size());
  std::vector<const AgentValuation*> vals;
  std::vector<Rational> weights;
  for (NodeId x : t.leaves()) {
    storage.emplace_back(leaf_valuation(inst.valuations, x));
    vals.push_back(&storage.back());
    weights.push_back(t.weight(x));
  }
  LocalAllocation a = monolevel_gys(t.leaves(), weights, vals, inst.all_items(), t.criterion(t.root()), deadline);
  MultilevelAllocation pi = MultilevelAllocation::root_only(t, inst.m);
  for (std::size_t k = 0; k < t.leaves().size(); ++k) {
    NodeId x = t.leaves()[k];
    pi[x] = a.shares[k];
    for (NodeId anc : t.ancestors(x))
      if (anc != t.root()) pi[anc] |= a.shares[k];
  }
  return pi;
}

}  // namespace hierfair
