#include "polycast/separator.hpp"

#include <algorithm>
#include <numeric>
#include <tuple>

#include "polycast/error.hpp"
#include "polycast/planar.hpp"

namespace polycast {

std::vector<Node> PathSeparator::nodes() const {
  std::vector<Node> out;
  for (const Path& p : paths) out.insert(out.end(), p.begin(), p.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

struct Local {
  InducedSubgraph sub;
  std::vector<long long> weight;
  long long total = 0;
};

Local localize(const Graph& g, std::span<const long long> weights, std::span<const Node> component) {
  std::vector<Node> nodes(component.begin(), component.end());
  if (nodes.empty()) {
    nodes.resize(g.node_count());
    std::iota(nodes.begin(), nodes.end(), 0);
  }
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  ensure(static_cast<int>(weights.size()) == g.node_count(), ErrorCode::InvalidInput,
         "weight vector size mismatch");
  Local l{induced_subgraph(g, nodes), {}, 0};
  for (Node v : l.sub.to_global) {
    l.weight.push_back(weights[v]);
    l.total += weights[v];
  }
  return l;
}

// Max component weight of the local graph without `removed`.
long long max_component_weight(const Local& l, const std::vector<Node>& removed) {
  long long worst = 0;
  for (const auto& comp : connected_components(l.sub.graph, removed)) {
    long long w = 0;
    for (Node v : comp) w += l.weight[v];
    worst = std::max(worst, w);
  }
  return worst;
}

struct Candidate {
  std::vector<Path> paths;  // local ids
  std::vector<Node> nodes;
  long long worst = 0;
  bool valid = false;

  auto key() const { return std::make_tuple(!valid, nodes.size(), worst, paths); }
};

// Keeps the paths that are not prefixes of another, sorted.
std::vector<Path> distinct_paths(std::vector<Path> paths) {
  std::sort(paths.begin(), paths.end());
  paths.erase(std::unique(paths.begin(), paths.end()), paths.end());
  std::vector<Path> out;
  for (const Path& p : paths) {
    bool prefix = false;
    for (const Path& q : paths)
      if (q.size() > p.size() && std::equal(p.begin(), p.end(), q.begin())) prefix = true;
    if (!prefix) out.push_back(p);
  }
  return out;
}

Candidate evaluate(const Local& l, std::vector<Path> paths) {
  Candidate c;
  c.paths = distinct_paths(std::move(paths));
  for (const Path& p : c.paths) c.nodes.insert(c.nodes.end(), p.begin(), p.end());
  std::sort(c.nodes.begin(), c.nodes.end());
  c.nodes.erase(std::unique(c.nodes.begin(), c.nodes.end()), c.nodes.end());
  c.worst = max_component_weight(l, c.nodes);
  c.valid = 2 * c.worst <= l.total;
  return c;
}

// Best separator made of BFS-tree root paths to the corners of a single node,
// an edge, or a face of the triangulation.
Candidate tree_candidates(const Local& l, const Triangulation& tri, Node root, int& evaluated) {
  const Graph& h = l.sub.graph;
  const int n = h.node_count();
  const auto dist = bfs_distances(h, root);
  std::vector<Node> parent(n, -1);
  for (Node v = 0; v < n; ++v) {
    if (v == root) continue;
    for (Node w : h.neighbors(v))
      if (dist[w] == dist[v] - 1) {
        parent[v] = w;
        break;
      }
  }
  auto root_path = [&](Node x) {
    Path p;
    for (Node v = x; v >= 0; v = parent[v]) p.push_back(v);
    std::reverse(p.begin(), p.end());
    return p;
  };
  Candidate best;
  bool have = false;
  auto consider = [&](std::vector<Path> paths) {
    ++evaluated;
    Candidate c = evaluate(l, std::move(paths));
    if (!have || c.key() < best.key()) {
      best = std::move(c);
      have = true;
    }
  };
  for (Node x = 0; x < n; ++x) consider({root_path(x)});
  for (const Edge& e : tri.graph.edges()) consider({root_path(e.u), root_path(e.v)});
  for (const auto& f : tri.faces) consider({root_path(f[0]), root_path(f[1]), root_path(f[2])});
  return best;
}

Candidate exhaustive_candidates(const Local& l, int& evaluated) {
  const Graph& h = l.sub.graph;
  const int n = h.node_count();
  Candidate best;
  bool have = false;
  for (Node root = 0; root < n; ++root) {
    std::vector<Path> to(n);
    for (Node x = 0; x < n; ++x) to[x] = *shortest_path(h, root, x);
    for (Node a = 0; a < n; ++a)
      for (Node b = a; b < n; ++b)
        for (Node c = b; c < n; ++c) {
          ++evaluated;
          Candidate cand = evaluate(l, {to[a], to[b], to[c]});
          if (!have || cand.key() < best.key()) {
            best = std::move(cand);
            have = true;
          }
        }
    if (have && best.valid) break;
  }
  return best;
}

}  // namespace

PathSeparator find_3path_separator(const Graph& g, std::span<const long long> weights,
                                   std::span<const Node> component, SeparatorStats* stats) {
  const Local l = localize(g, weights, component);
  const int n = l.sub.graph.node_count();
  ensure(n >= 1, ErrorCode::InvalidInput, "empty component");
  ensure(is_connected(l.sub.graph), ErrorCode::InvalidInput, "component is not connected");

  SeparatorStats local;
  const Triangulation tri = triangulate(l.sub.graph);
  Candidate best;
  bool have = false;
  for (Node root = 0; root < n; ++root) {
    ++local.roots_tried;
    Candidate c = tree_candidates(l, tri, root, local.candidates);
    if (!have || c.key() < best.key()) {
      best = std::move(c);
      have = true;
    }
  }
  if (!best.valid && n <= 16) {
    local.used_fallback = true;
    best = exhaustive_candidates(l, local.candidates);
  }
  ensure(best.valid, ErrorCode::SeparatorNotFound,
         "no balanced 3-path separator among " + std::to_string(local.candidates) + " candidates");

  PathSeparator sep;
  sep.root = l.sub.to_global[best.paths.front().front()];
  for (const Path& p : best.paths) {
    Path global;
    for (Node v : p) global.push_back(l.sub.to_global[v]);
    sep.paths.push_back(std::move(global));
  }
  local.max_component_weight = best.worst;
  if (stats) *stats = local;
  return sep;
}

std::string separator_violation(const Graph& g, std::span<const long long> weights,
                                std::span<const Node> component, const PathSeparator& sep) {
  const Local l = localize(g, weights, component);
  if (sep.paths.empty() || sep.paths.size() > 3) return "separator needs one to three paths";
  if (sep.root < 0 || sep.root >= g.node_count() || l.sub.to_local[sep.root] < 0)
    return "root outside the component";
  const auto dist = bfs_distances(l.sub.graph, l.sub.to_local[sep.root]);
  std::vector<Node> removed;
  for (const Path& p : sep.paths) {
    if (p.empty() || p.front() != sep.root) return "path does not start at the root";
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (p[i] < 0 || p[i] >= g.node_count() || l.sub.to_local[p[i]] < 0)
        return "path leaves the component";
      const Node v = l.sub.to_local[p[i]];
      if (dist[v] != static_cast<int>(i)) return "path is not a shortest path from the root";
      if (i > 0 && !g.has_edge(p[i - 1], p[i])) return "path uses a non-edge";
      removed.push_back(v);
    }
  }
  if (2 * max_component_weight(l, removed) > l.total) return "a component exceeds half the weight";
  return {};
}

bool verify_separator(const Graph& g, std::span<const long long> weights,
                      std::span<const Node> component, const PathSeparator& sep) {
  return separator_violation(g, weights, component, sep).empty();
}

}  // namespace polycast
