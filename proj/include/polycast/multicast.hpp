#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "polycast/graph.hpp"
#include "polycast/poise_lp.hpp"
#include "polycast/rounding.hpp"
#include "polycast/schedule.hpp"
#include "polycast/separator.hpp"

namespace polycast {

/// gamma = 1/log2 k, at most 1/2.
double multicast_gamma(int k);

struct DemandSplit {
  std::vector<int> k1;  // pair indices crossing the separator with mass >= gamma
  std::vector<int> k2;
  /// Per pair: separator path carrying the most crossing flow, -1 for K2.
  std::vector<int> assigned;
  /// Per pair: total weight of decomposition paths meeting the separator.
  std::vector<double> crossing;
};

DemandSplit split_demands(const PoiseFractional& frac, const PathSeparator& sep, double gamma);

struct ScaledK1 {
  std::vector<int> pairs;     // indices into the input frac, in K1 order
  std::vector<double> scale;  // per K1 pair
  double max_scale = 1.0;
  /// Paths of the K1 pairs that meet their assigned separator path, scaled
  /// and truncated to unit mass. Budgets recomputed on the graph.
  PoiseFractional frac;
};

/// Throws InsufficientCrossingFlow if a pair keeps less than gamma/3.
ScaledK1 scale_K1(const Graph& g, const PoiseFractional& frac, const PathSeparator& sep,
                  const DemandSplit& split, double gamma);

/// Component graph plus a balanced binary tree of dummy nodes whose leaves
/// are the nodes of one separator path.
struct AugmentedInstance {
  Graph graph;
  int base_nodes = 0;  // ids >= base_nodes are dummies
  Node root = 0;
  Path path;
  std::vector<Node> terminals;  // sources and sinks of the assigned pairs
  std::vector<DemandPair> pairs;
  int tree_depth = 0;
  std::vector<Node> up;  // parent in the binary tree, -1 at the root / off it
};

AugmentedInstance build_augmented_instance(const Graph& component, std::span<const Node> path,
                                           std::span<const DemandPair> pairs);

/// Rooted fractional solution for the augmented instance: every terminal
/// follows its pair's scaled paths to the separator path, then climbs the
/// binary tree. pair_paths[i] belongs to aug.pairs[i].
PoiseFractional augmented_fractional(const AugmentedInstance& aug,
                                     const std::vector<std::vector<WeightedPath>>& pair_paths);

/// Gather along the real part of the tree into the separator path, shuttle
/// along the path, then broadcast back down. Throws DummyEdgeScheduled if a
/// call would touch a dummy node.
TelephoneSchedule schedule_K1(const AugmentedInstance& aug, const PoiseTree& tree);

struct MulticastLevel {
  int depth = 0;
  int nodes = 0;     // recursion nodes with demands at this depth
  int k1_pairs = 0;
  int k2_pairs = 0;
  int base_pairs = 0;
  int rounds = 0;    // longest K1 phase among this depth's nodes
};

struct MulticastOptions {
  std::uint64_t seed = 0;
  long long grid = kDefaultGrid;
};

struct MulticastResult {
  TelephoneSchedule schedule;
  int depth = 0;
  double lp_root = 0.0;
  double gamma = 0.5;
  /// Largest product of flow scalings applied on the way to a K1 phase.
  double max_scaling = 1.0;
  int max_poise = 0;
  std::vector<MulticastLevel> levels;
};

/// Recursive planar multicommodity multicast. Throws NotPlanar, InvalidInput
/// or InfeasiblePair on bad input; the result is simulated before returning.
MulticastResult planar_mc_multicast(const Graph& g, const DemandSet& demands,
                                    const MulticastOptions& options = {});

}  // namespace polycast
