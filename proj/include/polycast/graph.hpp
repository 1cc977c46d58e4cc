#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

namespace polycast {

using Node = int;
using Path = std::vector<Node>;

/// Unordered edge, stored with u < v.
struct Edge {
  Node u = 0;
  Node v = 0;

  Node other(Node w) const { return w == u ? v : u; }
  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

inline Edge make_edge(Node a, Node b) { return a < b ? Edge{a, b} : Edge{b, a}; }

inline std::uint64_t edge_key(Node a, Node b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
         static_cast<std::uint32_t>(b);
}

/// Undirected simple graph on nodes 0..n-1. Neighbor lists are kept sorted so
/// every traversal breaks ties by smallest id.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int node_count);
  Graph(int node_count, std::span<const Edge> edges);

  /// Throws InvalidInput on self-loops, duplicates, or out-of-range ids.
  int add_edge(Node a, Node b);

  int node_count() const { return static_cast<int>(adj_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(int index) const { return edges_[index]; }
  std::span<const Node> neighbors(Node v) const { return adj_[v]; }
  int degree(Node v) const { return static_cast<int>(adj_[v].size()); }
  int max_degree() const;
  bool valid_node(Node v) const { return v >= 0 && v < node_count(); }
  bool has_edge(Node a, Node b) const;
  std::optional<int> edge_index(Node a, Node b) const;

 private:
  std::vector<std::vector<Node>> adj_;
  std::vector<Edge> edges_;
  std::unordered_map<std::uint64_t, int> index_;
};

/// Undirected multigraph; parallel copies are carried as a multiplicity.
class MultiGraph {
 public:
  struct Link {
    Node u = 0;
    Node v = 0;
    long long multiplicity = 0;
  };

  MultiGraph() = default;
  explicit MultiGraph(int node_count) : node_count_(node_count) {}

  void add(Node a, Node b, long long multiplicity = 1);

  int node_count() const { return node_count_; }
  const std::vector<Link>& links() const { return links_; }
  long long total_edges() const;
  /// Degree counting multiplicity.
  long long degree(Node v) const;
  long long multiplicity(Node a, Node b) const;
  Graph support() const;

 private:
  int node_count_ = 0;
  std::vector<Link> links_;
  std::unordered_map<std::uint64_t, int> index_;
};

struct DemandPair {
  Node source = 0;
  Node sink = 0;
  friend bool operator==(const DemandPair&, const DemandPair&) = default;
  friend auto operator<=>(const DemandPair&, const DemandPair&) = default;
};

class DemandSet {
 public:
  DemandSet() = default;
  explicit DemandSet(std::vector<DemandPair> pairs) : pairs_(std::move(pairs)) {}

  /// Rooted instance: pairs (root, t) for every t in terminals.
  static DemandSet rooted(Node root, std::span<const Node> terminals);
  /// All ordered pairs (s, t) with s != t.
  static DemandSet gossip(int node_count);

  void add(Node source, Node sink) { pairs_.push_back({source, sink}); }
  const std::vector<DemandPair>& pairs() const { return pairs_; }
  int size() const { return static_cast<int>(pairs_.size()); }
  bool empty() const { return pairs_.empty(); }
  const DemandPair& operator[](int i) const { return pairs_[i]; }

  /// Throws InvalidInput unless every pair has distinct valid endpoints.
  void validate(const Graph& g) const;
  /// Pairs with duplicates removed, first occurrence order kept.
  std::vector<DemandPair> distinct() const;

 private:
  std::vector<DemandPair> pairs_;
};

/// weight(v) = number of distinct demand pairs containing v.
std::vector<long long> node_weights(int node_count, const DemandSet& demands);

/// Node mask: empty span means "all nodes allowed".
using NodeMask = std::span<const char>;

/// Hop distances from src inside the allowed node set; -1 when unreachable.
std::vector<int> bfs_distances(const Graph& g, Node src, NodeMask allowed = {});

/// Minimum-hop path from u to v; among shortest paths the lexicographically
/// smallest successor sequence is returned.
std::optional<Path> shortest_path(const Graph& g, Node u, Node v,
                                  NodeMask allowed = {});

/// Components of g minus `removed`, each sorted, ordered by minimum id.
std::vector<std::vector<Node>> connected_components(const Graph& g,
                                                    std::span<const Node> removed);
/// Components of the subgraph induced by the allowed mask.
std::vector<std::vector<Node>> components_within(const Graph& g, NodeMask allowed);

bool is_connected(const Graph& g);

struct Eccentricities {
  std::vector<int> eccentricity;
  int diameter = 0;
};

/// Throws InvalidInput if g is disconnected.
Eccentricities eccentricity_and_diameter(const Graph& g);

/// Subgraph induced by `nodes`; local id i corresponds to nodes[i].
struct InducedSubgraph {
  Graph graph;
  std::vector<Node> to_global;
  std::vector<Node> to_local;  // -1 outside
};

InducedSubgraph induced_subgraph(const Graph& g, std::span<const Node> nodes);

bool is_path_in(const Graph& g, std::span<const Node> path);

}  // namespace polycast
