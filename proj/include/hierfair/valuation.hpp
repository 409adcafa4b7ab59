#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "hierfair/item_set.hpp"

namespace hierfair {

/// u(S) = |S ∩ approved|
struct BinaryAdditive {
  ItemSet approved;
};

/// u(S) = min(|S ∩ approved|, cap)
struct CappedBinaryAdditive {
  ItemSet approved;
  int cap = 0;
};

/// u(S) = min(|S|, cap), the rank of a uniform matroid.
struct UniformCap {
  int cap = 0;
};

/// u(S) = size of a maximum matching between subagents and S, where subagent r
/// may take item g iff g is in subagents[r].
struct BinaryAssignment {
  std::vector<ItemSet> subagents;
};

/// A leaf's matroid rank valuation.
using Valuation = std::variant<BinaryAdditive, CappedBinaryAdditive, UniformCap, BinaryAssignment>;

/// Indexed by node id; only leaves hold a value.
using LeafValuations = std::vector<std::optional<Valuation>>;

int evaluate(const Valuation& val, const ItemSet& bundle);
/// u(S + g) - u(S). Throws when g is already in S.
int marginal_gain(const Valuation& val, const ItemSet& bundle, Item g);

/// "binary_additive", "capped_binary_additive", "uniform_cap" or "binary_assignment".
std::string family_name(const Valuation& val);

/// Hopcroft-Karp maximum matching between `left` (each entry lists the
/// right-hand items it accepts) and the items of `right`.
int maximum_matching(const std::vector<ItemSet>& left, const ItemSet& right);

struct MrfReport {
  bool ok = true;
  /// "empty", "monotonicity", "binary-marginal" or "submodularity"; empty when ok.
  std::string violated;
  ItemSet smaller;  // S
  ItemSet larger;   // T, with S ⊆ T
  Item item = -1;   // g ∉ T
  bool exhaustive = false;
  std::string str() const;
};

using SetFunction = std::function<int(const ItemSet&)>;

/// Checks u(∅) = 0, monotonicity, submodularity and binary marginals of `f`
/// over the universe {0..m-1}. Exhaustive for m <= 10, otherwise `trials`
/// random chains S ⊆ T and items g ∉ T drawn from `seed`.
MrfReport mrf_axiom_check(const SetFunction& f, int m, int trials, std::uint64_t seed);

}  // namespace hierfair
