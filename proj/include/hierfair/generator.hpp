#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hierfair/instance.hpp"

namespace hierfair {

enum class TreeShape { balanced, comb };
enum class PrefMode { independent, correlated };

struct GeneratorConfig {
  TreeShape shape = TreeShape::balanced;
  /// Total node count n, root and leaves included.
  int nodes = 7;
  int items = 5;
  /// Bernoulli approval probability.
  double p = 0.5;
  PrefMode pref = PrefMode::independent;
  double rho = 0.8;
  int weight_min = 1;
  int weight_max = 5;
  /// Leaf families drawn uniformly; names as in family_name().
  std::vector<std::string> families = {"binary_additive"};
  /// Internal nodes draw their criterion uniformly from this pool.
  std::vector<Criterion> criteria = {Criterion::lorenz()};
  int min_subagents = 2;
  int max_subagents = 25;
  std::uint64_t seed = 1;

  /// Throws InvalidInput on inconsistent settings.
  void validate() const;
};

TreeShape parse_tree_shape(const std::string& s);
PrefMode parse_pref_mode(const std::string& s);
std::string to_string(TreeShape s);
std::string to_string(PrefMode p);

/// Parent of every node 2..n. Balanced trees fill levels left to right with
/// three children per node. A comb is a path of internal nodes, each with one
/// leaf child, ending in a node with two leaves (three when n is even).
std::vector<NodeId> tree_parents(TreeShape shape, int nodes);

/// Deterministic in the config, seed included.
Instance generate(const GeneratorConfig& config);

}  // namespace hierfair
