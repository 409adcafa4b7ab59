#pragma once

#include <map>
#include <string>
#include <vector>

#include "hierfair/tree.hpp"
#include "hierfair/valuation.hpp"

namespace hierfair {

struct Instance {
  Tree tree;
  int m = 0;
  /// Optional display names, item id = position.
  std::vector<std::string> item_names;
  LeafValuations valuations;
  std::map<std::string, std::string> meta;

  ItemSet all_items() const { return ItemSet::full(m); }
  std::string item_name(Item g) const;
};

/// Every leaf has a valuation over m items and no internal node has one.
/// Throws InvalidInput otherwise.
void validate_instance(const Instance& inst);

}  // namespace hierfair
