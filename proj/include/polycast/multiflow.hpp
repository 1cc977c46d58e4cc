#pragma once

#include <span>
#include <vector>

#include "polycast/graph.hpp"

namespace polycast {

/// A bundle of identical T-paths.
struct TPath {
  Path path;
  long long count = 0;
};

struct TPathPacking {
  std::vector<TPath> paths;
  long long value = 0;
  /// Sum over terminals of lambda(t, T - t).
  long long lambda_sum = 0;
  /// True when the exhaustive search had to replace splitting-off.
  bool used_fallback = false;
  long long flow_checks = 0;
};

/// lambda(t, T - t): minimum number of edge copies separating t from the other
/// terminals.
long long terminal_cut(const MultiGraph& g, std::span<const Node> terminals, Node t);

/// Edge-disjoint T-paths of total value sum lambda / 2. Every node outside T
/// must have even degree (EvennessViolated otherwise). Built by complete
/// splitting-off at non-terminal nodes, keeping every lambda(t, T - t) intact.
TPathPacking pack_tpaths(const MultiGraph& g, std::span<const Node> terminals);

/// Per-link usage of a packing; throws Internal if a link is overused or a
/// path is not a T-path.
void verify_packing(const MultiGraph& g, std::span<const Node> terminals,
                    const TPathPacking& packing);

/// Functional digraph: succ[v] is v's unique out-neighbor, or -1.
using FunctionalDigraph = std::vector<Node>;

/// Removes one arc per directed cycle (the arc leaving the cycle's smallest
/// node) so every component becomes an in-arborescence.
FunctionalDigraph break_cycles_to_in_forest(const FunctionalDigraph& h);

struct Star {
  Node center = 0;
  std::vector<Node> leaves;
};

struct InForestStars {
  /// kept[v] = head of v's kept arc, or -1.
  FunctionalDigraph kept;
  std::vector<Star> stars;
  int arc_count() const;
};

/// Per in-tree, keeps the arcs of the odd or the even levels, whichever is
/// larger (even on ties). The level of arc v -> succ(v) is v's depth.
InForestStars extract_stars(const FunctionalDigraph& forest);

}  // namespace polycast
