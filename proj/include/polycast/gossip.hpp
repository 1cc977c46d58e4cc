#pragma once

#include <cstdint>
#include <vector>

#include "polycast/graph.hpp"
#include "polycast/schedule.hpp"

namespace polycast {

/// One separator path of a level, starting at its separator root. A node
/// shared with an earlier path of the level belongs to that earlier path.
struct GossipPath {
  int component = 0;  // index into GossipLevel::components
  int cls = 0;        // 0, 1, 2
  Path nodes;
};

struct GossipLevel {
  /// Components of the previous remainder that this level separates.
  std::vector<std::vector<Node>> components;
  std::vector<GossipPath> paths;
  std::vector<Node> landmarks;
  /// Per node: path index / position of its first occurrence, -1 elsewhere.
  std::vector<int> path_of;
  std::vector<int> position;
  /// Per node: index into `components`, -1 outside.
  std::vector<int> component_of;
  std::vector<char> remaining;  // V_i
};

struct GossipDecomposition {
  int L = 1;
  Node root = 0;
  std::vector<GossipLevel> levels;  // levels[0] is level 1
  /// Per node: level index whose paths contain it.
  std::vector<int> level_of;

  int depth() const { return static_cast<int>(levels.size()); }
};

/// Recursive 3-path separators with unit weights. g must be connected.
GossipDecomposition decompose(const Graph& g, int L);

/// Landmark of a path node: the nearest landmark along its path, left on
/// ties and in the tail segment. Returns the position on the path.
int landmark_position(int position, int path_length, int L);

/// Rounds gathering every own path node's messages at its landmark, path
/// classes one after another. Throws InterferenceDetected if a planned
/// reception does not happen.
RadioSchedule gather_on_paths(const Graph& g, const GossipDecomposition& d, int level);

struct LandmarkMatching {
  std::vector<Node> landmark;
  std::vector<Node> target;  // in an earlier level's paths
  /// landmark ... target, at most L edges, inside the landmark's component.
  std::vector<Path> witness;
};

/// Max-flow matching of the level's landmarks into earlier separator nodes,
/// each of those taking at most 3L partners. Throws MatchingInfeasible.
LandmarkMatching find_landmark_matching(const Graph& g, const GossipDecomposition& d, int level);

/// Walk the witnesses to their last node before the target, then hand over
/// in batches keyed by (level, class, position mod 3).
RadioSchedule move_to_prefix(const Graph& g, const GossipDecomposition& d, int level,
                             const LandmarkMatching& matching);

/// Waves along the level 1 paths collecting the landmarks' messages at the root.
RadioSchedule collect_at_root(const Graph& g, const GossipDecomposition& d);

/// Layer-by-layer broadcast from root; every node of a layer hears exactly
/// one transmitter of the previous layer.
RadioSchedule layered_broadcast(const Graph& g, Node root);

struct GossipAttempt {
  int L = 0;
  bool feasible = false;
  int length = 0;
};

struct GossipResult {
  RadioSchedule schedule;
  int L = 0;
  int depth = 0;
  int gather_rounds = 0;     // everything before the broadcast back
  int broadcast_rounds = 0;
  std::vector<GossipAttempt> attempts;
};

/// Doubling search over L from max(3, diameter) up to 2n; the first
/// candidate whose schedule completes gossip is returned. Throws
/// InvalidInput if g is disconnected, NotPlanar if g is not planar.
GossipResult radio_gossip(const Graph& g, std::uint64_t seed = 0);

}  // namespace polycast
