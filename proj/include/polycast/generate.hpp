#pragma once

#include <cstdint>
#include <string>

#include "polycast/graph.hpp"

namespace polycast {

Graph grid_graph(int rows, int cols);
Graph path_graph(int n);
/// Center 0, leaves 1..leaves.
Graph star_graph(int leaves);
/// Complete d-ary tree, BFS numbering, root 0.
Graph dary_tree(int d, int depth);
/// Delaunay triangulation of n jittered grid points; planar and connected.
Graph random_planar(int n, std::uint64_t seed);

/// `pairs` distinct ordered pairs with distinct endpoints, uniformly drawn.
DemandSet random_demands(int node_count, int pairs, std::uint64_t seed);

struct InstanceParams {
  int rows = 0;
  int cols = 0;
  int n = 0;
  int d = 0;
  int depth = 0;
  /// Number of random demand pairs; 0 means a rooted broadcast from node 0
  /// for tree kinds and no demands otherwise. -1 means gossip.
  int pairs = 0;
};

struct Instance {
  Graph graph;
  DemandSet demands;
};

/// kind: grid, path, star, dary-tree or random-planar. Throws BadParams.
Instance generate_instance(const std::string& kind, const InstanceParams& params,
                           std::uint64_t seed);

}  // namespace polycast
