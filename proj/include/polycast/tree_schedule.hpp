#pragma once

#include <span>
#include <vector>

#include "polycast/graph.hpp"
#include "polycast/schedule.hpp"

namespace polycast {

struct RootedTree {
  Node root = 0;
  std::vector<Node> parent;                 // -1 for the root and for nodes off the tree
  std::vector<std::vector<Node>> children;  // sorted by id
  std::vector<char> in_tree;
};

/// Orients an edge set that must form a tree containing root. Throws NotATree.
RootedTree root_tree(int node_count, std::span<const Edge> edges, Node root);

/// Rounds needed to inform the subtree of every node once it is informed.
std::vector<int> broadcast_times(const RootedTree& tree);

/// Optimal telephone broadcast on a tree: every informed node calls its
/// children in decreasing order of their completion time.
TelephoneSchedule tree_broadcast_schedule(int node_count, std::span<const Edge> edges, Node root);
TelephoneSchedule tree_broadcast_schedule(const RootedTree& tree);

/// The broadcast schedule in reverse; collects every tree message at root.
TelephoneSchedule tree_gather_schedule(int node_count, std::span<const Edge> edges, Node root);
TelephoneSchedule tree_gather_schedule(const RootedTree& tree);

/// Alternates the matchings {p0p1, p2p3, ...} and {p1p2, p3p4, ...}.
TelephoneSchedule path_shuttle_schedule(std::span<const Node> path, int rounds);

}  // namespace polycast
