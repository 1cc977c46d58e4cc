#pragma once

// Brute-force references and fixed instance lists shared by the unit tests
// and the acceptance runner.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "polycast/graph.hpp"

namespace polycast {
Graph random_planar(int n, std::uint64_t seed);
}

namespace polycast::exhaustive {

/// Largest number of link-disjoint T-paths (ends in T, no inner terminal),
/// branching on the first link with spare copies: either some path through
/// it is taken, or the link is dropped.
inline long long max_tpath_packing(const MultiGraph& g, const std::vector<Node>& terminals) {
  const int n = g.node_count();
  const auto& links = g.links();
  std::vector<char> is_t(n, 0);
  for (Node t : terminals) is_t[t] = 1;
  std::vector<std::vector<std::pair<Node, int>>> adj(n);
  for (int i = 0; i < static_cast<int>(links.size()); ++i) {
    adj[links[i].u].push_back({links[i].v, i});
    adj[links[i].v].push_back({links[i].u, i});
  }
  // Every simple T-path as a list of link ids, each found once (start < end).
  std::vector<std::vector<int>> paths;
  std::vector<char> seen(n, 0);
  std::vector<int> used;
  std::function<void(Node, Node)> walk = [&](Node start, Node v) {
    for (auto [w, id] : adj[v]) {
      if (seen[w]) continue;
      used.push_back(id);
      if (is_t[w]) {
        if (w > start) paths.push_back(used);
      } else {
        seen[w] = 1;
        walk(start, w);
        seen[w] = 0;
      }
      used.pop_back();
    }
  };
  for (Node t : terminals) {
    seen[t] = 1;
    walk(t, t);
    seen[t] = 0;
  }
  std::vector<long long> cap(links.size());
  for (std::size_t i = 0; i < links.size(); ++i) cap[i] = links[i].multiplicity;
  std::map<std::vector<long long>, long long> memo;
  std::function<long long()> best = [&]() -> long long {
    auto it = memo.find(cap);
    if (it != memo.end()) return it->second;
    int e = 0;
    while (e < static_cast<int>(cap.size()) && cap[e] == 0) ++e;
    long long result = 0;
    if (e < static_cast<int>(cap.size())) {
      const long long saved = cap[e];
      cap[e] = 0;
      result = best();
      cap[e] = saved;
      for (const auto& p : paths) {
        if (std::find(p.begin(), p.end(), e) == p.end()) continue;
        bool fits = true;
        for (int id : p) fits = fits && cap[id] > 0;
        if (!fits) continue;
        for (int id : p) --cap[id];
        result = std::max(result, 1 + best());
        for (int id : p) ++cap[id];
      }
    }
    memo.emplace(cap, result);
    return result;
  };
  return best();
}

struct PackingInstance {
  MultiGraph graph;
  std::vector<Node> terminals;
};

/// Random connected multigraph on n nodes whose non-terminals all have even
/// degree; at most `max_copies` edge copies before the parity fix.
inline PackingInstance even_multigraph(int n, int terminals, int max_copies, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  PackingInstance inst{MultiGraph(n), {}};
  std::vector<Node> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::shuffle(order.begin(), order.end(), rng);
  inst.terminals.assign(order.begin(), order.begin() + terminals);
  std::sort(inst.terminals.begin(), inst.terminals.end());
  std::vector<char> is_t(n, 0);
  for (Node t : inst.terminals) is_t[t] = 1;
  int copies = 0;
  for (int v = 1; v < n; ++v) {  // random spanning tree
    inst.graph.add(static_cast<Node>(rng() % v), v);
    ++copies;
  }
  while (copies < max_copies) {
    const Node a = static_cast<Node>(rng() % n);
    const Node b = static_cast<Node>(rng() % n);
    if (a == b) continue;
    inst.graph.add(a, b);
    ++copies;
  }
  std::vector<Node> odd;
  for (Node v = 0; v < n; ++v)
    if (!is_t[v] && inst.graph.degree(v) % 2 == 1) odd.push_back(v);
  for (std::size_t i = 0; i + 1 < odd.size(); i += 2) inst.graph.add(odd[i], odd[i + 1]);
  if (odd.size() % 2 == 1) inst.graph.add(odd.back(), inst.terminals.front());
  return inst;
}

struct RoundingCase {
  std::string name;
  Graph graph;
  Node root = 0;
  std::vector<Node> terminals;
};

/// The fixed twelve-instance rounding suite.
inline std::vector<RoundingCase> rounding_suite() {
  return {
      {"grid2x4", fixtures::grid_graph(2, 4), 0, {3, 4, 7}},
      {"grid3x3_corner", fixtures::grid_graph(3, 3), 0, {2, 6, 8}},
      {"grid3x3_center", fixtures::grid_graph(3, 3), 4, {0, 2, 6, 8}},
      {"path8", fixtures::path_graph(8), 0, {3, 7}},
      {"star6", fixtures::star_graph(6), 1, {2, 3, 4, 5, 6}},
      {"cycle8", fixtures::cycle_graph(8), 0, {2, 4, 6}},
      {"binary7", fixtures::dary_tree(2, 2), 0, {3, 4, 5, 6}},
      {"planar9a", random_planar(9, 1), 0, {3, 5, 8}},
      {"planar9b", random_planar(9, 2), 1, {0, 4, 6, 7}},
      {"grid3x4", fixtures::grid_graph(3, 4), 0, {3, 8, 11}},
      {"grid4x4", fixtures::grid_graph(4, 4), 0, {3, 5, 10, 12, 15}},
      {"planar20", random_planar(20, 3), 0, {5, 10, 15, 19}},
  };
}

}  // namespace polycast::exhaustive
