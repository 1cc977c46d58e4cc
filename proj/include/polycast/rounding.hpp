#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "polycast/graph.hpp"
#include "polycast/multiflow.hpp"
#include "polycast/poise_lp.hpp"

namespace polycast {

inline constexpr long long kDefaultGrid = 1024;

/// Integer path multiplicities for one center: round(w * M) per decomposition
/// path, repaired to exactly M by largest remainder.
std::vector<long long> grid_multiplicities(std::span<const WeightedPath> paths, long long grid);

/// Union over centers of their rooted decomposition paths scaled to the grid,
/// with every multiplicity doubled. Throws GridTooCoarse if some center ends
/// up with no path.
MultiGraph scale_to_multigraph(const PoiseFractional& frac, std::span<const Node> centers,
                               long long grid);

struct CandidatePath {
  Path path;  // empty: the pruned choice
  long long count = 0;
};

struct CongestionRounding {
  /// Per terminal, index into its candidate list, or -1.
  std::vector<int> chosen;
  int congestion = 0;
  int samples = 0;
  bool within_bound = false;
};

/// Picks one candidate per terminal with probability proportional to its
/// count. Resamples up to 64 times while the node congestion (number of chosen
/// paths through a node) exceeds bound; keeps the least congested sample.
CongestionRounding congestion_round_paths(
    const std::vector<std::vector<CandidatePath>>& candidates, int node_count, double bound,
    std::uint64_t seed);

struct MergeStats {
  int attempts = 0;
  long long packed = 0;
  long long pruned = 0;
  int congestion = 0;
  bool congestion_ok = true;
};

/// One round of cluster merging. Each returned path runs from a star leaf
/// center (front) to the star's center (back).
std::vector<Path> merge_centers(const Graph& g, const PoiseFractional& frac, Node root,
                                std::span<const Node> centers, double L, std::uint64_t seed,
                                long long grid = kDefaultGrid, MergeStats* stats = nullptr);

struct PoiseTree {
  Node root = 0;
  std::vector<Edge> edges;
  int max_degree = 0;
  int depth = 0;     // max root-to-terminal distance
  int diameter = 0;
  int poise = 0;     // diameter + max degree
  int iterations = 0;
  int longest_merge_path = 0;
  int max_congestion = 0;
  double lp_value = 0.0;
};

struct RoundingOptions {
  long long grid = kDefaultGrid;
  std::uint64_t seed = 0;
};

/// Rounds a rooted fractional solution for (r, R) into a tree spanning r and R.
PoiseTree round_poise_tree(const Graph& g, Node root, std::span<const Node> terminals,
                           const PoiseFractional& frac, const RoundingOptions& options = {});

/// Diameter, max degree and poise of an edge set that forms a tree; throws
/// NotATree otherwise.
void measure_tree(int node_count, PoiseTree& tree);

/// Depth of every node of the tree from its root (-1 off the tree).
std::vector<int> tree_depths(int node_count, Node root, std::span<const Edge> edges);

}  // namespace polycast
