#pragma once

#include <algorithm>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "polycast/graph.hpp"

namespace polycast::fixtures {

inline Graph path_graph(int n) {
  Graph g(n);
  for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
  return g;
}

inline Graph cycle_graph(int n) {
  Graph g = path_graph(n);
  g.add_edge(0, n - 1);
  return g;
}

/// Star with center 0 and leaves 1..leaves.
inline Graph star_graph(int leaves) {
  Graph g(leaves + 1);
  for (int i = 1; i <= leaves; ++i) g.add_edge(0, i);
  return g;
}

inline Graph complete_graph(int n) {
  Graph g(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
  return g;
}

/// Node (r, c) has id r * cols + c.
inline Graph grid_graph(int rows, int cols) {
  Graph g(rows * cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      if (c + 1 < cols) g.add_edge(r * cols + c, r * cols + c + 1);
      if (r + 1 < rows) g.add_edge(r * cols + c, (r + 1) * cols + c);
    }
  return g;
}

/// Complete d-ary tree of the given depth, nodes numbered in BFS order.
inline Graph dary_tree(int d, int depth) {
  int n = 1, level = 1;
  for (int i = 0; i < depth; ++i) n += (level *= d);
  Graph g(n);
  for (int v = 1; v < n; ++v) g.add_edge((v - 1) / d, v);
  return g;
}

struct RootedCatalogEntry {
  Graph tree;
  Node root = 0;
};

/// Every rooted tree on 1..max_nodes nodes up to isomorphism, obtained by
/// decoding all Pruefer sequences and deduplicating by AHU encoding.
inline std::vector<RootedCatalogEntry> rooted_tree_catalog(int max_nodes) {
  std::vector<RootedCatalogEntry> out;
  out.push_back({Graph(1), 0});
  for (int n = 2; n <= max_nodes; ++n) {
    std::set<std::string> seen;
    std::vector<int> seq(n - 2, 0);
    for (;;) {
      std::vector<int> degree(n, 1);
      for (int x : seq) ++degree[x];
      Graph g(n);
      for (int x : seq) {
        int leaf = 0;
        while (degree[leaf] != 1) ++leaf;
        g.add_edge(leaf, x);
        --degree[leaf];
        --degree[x];
      }
      int a = -1;
      for (int v = 0; v < n; ++v)
        if (degree[v] == 1) {
          if (a < 0) a = v;
          else g.add_edge(a, v);
        }
      for (Node root = 0; root < n; ++root) {
        std::function<std::string(Node, Node)> code = [&](Node v, Node parent) {
          std::vector<std::string> parts;
          for (Node w : g.neighbors(v))
            if (w != parent) parts.push_back(code(w, v));
          std::sort(parts.begin(), parts.end());
          std::string s = "(";
          for (const auto& p : parts) s += p;
          return s + ")";
        };
        if (seen.insert(code(root, -1)).second) out.push_back({g, root});
      }
      int i = n - 3;
      while (i >= 0 && seq[i] == n - 1) seq[i--] = 0;
      if (i < 0) break;
      ++seq[i];
    }
  }
  return out;
}

}  // namespace polycast::fixtures
