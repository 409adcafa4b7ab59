#include "hierfair/instance.hpp"

#include <variant>

#include "hierfair/errors.hpp"

namespace hierfair {
namespace {

void check_set(const ItemSet& s, int m, const std::string& who) {
  if (s.universe() != m) throw InvalidInput(who + " refers to a universe of " + std::to_string(s.universe()) +
                                            " items instead of " + std::to_string(m));
}

}  // namespace

std::string Instance::item_name(Item g) const {
  if (g >= 0 && g < static_cast<int>(item_names.size())) return item_names[g];
  return std::to_string(g);
}

void validate_instance(const Instance& inst) {
  if (inst.m < 0) throw InvalidInput("negative item count");
  if (!inst.item_names.empty() && static_cast<int>(inst.item_names.size()) != inst.m)
    throw InvalidInput("item name count differs from m");
  const Tree& t = inst.tree;
  if (t.node_count() < 1) throw InvalidInput("empty tree");
  if (t.is_leaf(t.root())) throw InvalidInput("the root must be an internal node");
  if (static_cast<int>(inst.valuations.size()) != t.node_count() + 1)
    throw InvalidInput("valuation table does not match the node count");
  for (NodeId i = 1; i <= t.node_count(); ++i) {
    const std::string who = "node " + std::to_string(i);
    const auto& v = inst.valuations[i];
    if (!t.is_leaf(i)) {
      if (v) throw InvalidInput(who + " is internal but has a leaf valuation");
      continue;
    }
    if (!v) throw InvalidInput("leaf " + std::to_string(i) + " has no valuation");
    if (auto* a = std::get_if<BinaryAdditive>(&*v)) check_set(a->approved, inst.m, who);
    if (auto* a = std::get_if<CappedBinaryAdditive>(&*v)) {
      check_set(a->approved, inst.m, who);
      if (a->cap < 0) throw InvalidInput(who + " has a negative cap");
    }
    if (auto* a = std::get_if<UniformCap>(&*v))
      if (a->cap < 0) throw InvalidInput(who + " has a negative cap");
    if (auto* a = std::get_if<BinaryAssignment>(&*v))
      for (const auto& s : a->subagents) check_set(s, inst.m, who);
  }
  if (inst.valuations[0]) throw InvalidInput("the pool cannot have a valuation");
}

}  // namespace hierfair
