#pragma once

#include <limits>
#include <vector>

namespace polycast {

/// Dinic's algorithm on integer capacities.
class MaxFlow {
 public:
  static constexpr long long kInfinite = std::numeric_limits<long long>::max() / 4;

  explicit MaxFlow(int node_count);

  /// Directed arc; returns its id.
  int add_arc(int from, int to, long long capacity);
  /// Undirected edge usable up to `capacity` in either direction.
  int add_edge(int a, int b, long long capacity);

  /// Maximum flow from s to t, stopping early once `limit` is reached.
  long long run(int s, int t, long long limit = kInfinite);

  /// Net flow pushed along arc `id` (from its tail to its head).
  long long flow(int id) const { return arcs_[id].initial - arcs_[id].capacity; }
  int tail(int id) const { return arcs_[id ^ 1].to; }
  int head(int id) const { return arcs_[id].to; }
  int arc_count() const { return static_cast<int>(arcs_.size()); }

 private:
  struct Arc {
    int to;
    long long capacity;
    long long initial;
  };

  bool build_levels(int s, int t);
  long long augment(int v, int t, long long pushed);

  std::vector<Arc> arcs_;
  std::vector<std::vector<int>> out_;
  std::vector<int> level_;
  std::vector<std::size_t> next_;
};

}  // namespace polycast
