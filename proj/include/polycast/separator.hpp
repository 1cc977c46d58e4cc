#pragma once

#include <span>
#include <string>
#include <vector>

#include "polycast/graph.hpp"

namespace polycast {

/// Up to three shortest paths from a common root whose removal leaves
/// components of at most half the total weight.
struct PathSeparator {
  Node root = 0;
  std::vector<Path> paths;

  /// Union of the path nodes, sorted.
  std::vector<Node> nodes() const;
};

struct SeparatorStats {
  int candidates = 0;
  int roots_tried = 0;
  bool used_fallback = false;
  long long max_component_weight = 0;
};

/// component: the nodes to separate (empty = all of g); it must induce a
/// connected planar subgraph. Every root is tried with BFS-tree paths to the
/// corners of a node, edge or face of a triangulation; the valid separator
/// with the fewest nodes wins (then lighter heaviest component, then smaller
/// root). Exhaustive search over shortest paths is the fallback (<= 16 nodes).
PathSeparator find_3path_separator(const Graph& g, std::span<const long long> weights,
                                   std::span<const Node> component = {},
                                   SeparatorStats* stats = nullptr);

/// Empty string when valid, otherwise the first violated property.
std::string separator_violation(const Graph& g, std::span<const long long> weights,
                                std::span<const Node> component, const PathSeparator& sep);

bool verify_separator(const Graph& g, std::span<const long long> weights,
                      std::span<const Node> component, const PathSeparator& sep);

}  // namespace polycast
