#include "hierfair/sma.hpp"

#include "hierfair/welfare.hpp"

namespace hierfair {
namespace {

void allocate(const Instance& inst, const AgentTable& agents, NodeId i, MultilevelAllocation& pi,
              const Deadline& deadline) {
  const Tree& t = inst.tree;
  if (t.is_leaf(i)) return;
  const auto& kids = t.children(i);
  std::vector<Rational> weights;
  std::vector<const AgentValuation*> vals;
  for (NodeId c : kids) {
    weights.push_back(t.weight(c));
    vals.push_back(&agents[c]);
  }
  LocalAllocation a = monolevel_gys(kids, weights, vals, pi[i], t.criterion(i), deadline);
  for (std::size_t k = 0; k < kids.size(); ++k) pi[kids[k]] = a.shares[k];
  for (NodeId c : kids) allocate(inst, agents, c, pi, deadline);
}

}  // namespace

SmaResult run_sma(const Instance& inst, const SmaOptions& options) {
  validate_instance(inst);
  AgentTable agents(inst.tree, inst.valuations);
  SmaResult r;
  r.allocation = MultilevelAllocation::root_only(inst.tree, inst.m);
  allocate(inst, agents, inst.tree.root(), r.allocation, options.deadline);
  r.utilities = node_utilities(inst.tree, inst.valuations, r.allocation);
  for (NodeId i : inst.tree.internal_nodes())
    r.hat_v_evaluations += static_cast<const SubtreeWelfare&>(agents[i]).memo_size();
  return r;
}

}  // namespace hierfair
