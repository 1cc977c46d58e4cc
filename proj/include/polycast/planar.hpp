#pragma once

#include <array>
#include <vector>

#include "polycast/graph.hpp"

namespace polycast {

bool is_planar(const Graph& g);

struct Triangulation {
  /// The input graph plus the edges added to make it maximal planar.
  Graph graph;
  /// Faces of the maximal planar embedding, corners sorted.
  std::vector<std::array<Node, 3>> faces;
};

/// Embeds g and completes it to a maximal planar graph. Throws NotPlanar.
/// Graphs with fewer than three nodes have no faces.
Triangulation triangulate(const Graph& g);

}  // namespace polycast
