#include "polycast/graph.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <string>

#include "polycast/error.hpp"

namespace polycast {

Graph::Graph(int node_count) {
  ensure(node_count >= 0, ErrorCode::InvalidInput, "negative node count");
  adj_.resize(node_count);
}

Graph::Graph(int node_count, std::span<const Edge> edges) : Graph(node_count) {
  for (const Edge& e : edges) add_edge(e.u, e.v);
}

int Graph::add_edge(Node a, Node b) {
  ensure(valid_node(a) && valid_node(b), ErrorCode::InvalidInput,
         "edge endpoint out of range: " + std::to_string(a) + " " + std::to_string(b));
  ensure(a != b, ErrorCode::InvalidInput, "self-loop at " + std::to_string(a));
  const auto key = edge_key(a, b);
  ensure(!index_.contains(key), ErrorCode::InvalidInput,
         "duplicate edge " + std::to_string(a) + " " + std::to_string(b));
  const int id = edge_count();
  edges_.push_back(make_edge(a, b));
  index_.emplace(key, id);
  auto insert_sorted = [](std::vector<Node>& list, Node x) {
    list.insert(std::upper_bound(list.begin(), list.end(), x), x);
  };
  insert_sorted(adj_[a], b);
  insert_sorted(adj_[b], a);
  return id;
}

int Graph::max_degree() const {
  int best = 0;
  for (const auto& list : adj_) best = std::max(best, static_cast<int>(list.size()));
  return best;
}

bool Graph::has_edge(Node a, Node b) const {
  if (!valid_node(a) || !valid_node(b)) return false;
  return index_.contains(edge_key(a, b));
}

std::optional<int> Graph::edge_index(Node a, Node b) const {
  if (!valid_node(a) || !valid_node(b)) return std::nullopt;
  auto it = index_.find(edge_key(a, b));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

void MultiGraph::add(Node a, Node b, long long multiplicity) {
  ensure(a >= 0 && b >= 0 && a < node_count_ && b < node_count_ && a != b,
         ErrorCode::InvalidInput, "bad multigraph edge");
  ensure(multiplicity >= 1, ErrorCode::InvalidInput, "multiplicity must be positive");
  const auto key = edge_key(a, b);
  auto it = index_.find(key);
  if (it == index_.end()) {
    const Edge e = make_edge(a, b);
    index_.emplace(key, static_cast<int>(links_.size()));
    links_.push_back({e.u, e.v, multiplicity});
  } else {
    links_[it->second].multiplicity += multiplicity;
  }
}

long long MultiGraph::total_edges() const {
  long long total = 0;
  for (const auto& l : links_) total += l.multiplicity;
  return total;
}

long long MultiGraph::degree(Node v) const {
  long long d = 0;
  for (const auto& l : links_)
    if (l.u == v || l.v == v) d += l.multiplicity;
  return d;
}

long long MultiGraph::multiplicity(Node a, Node b) const {
  auto it = index_.find(edge_key(a, b));
  return it == index_.end() ? 0 : links_[it->second].multiplicity;
}

Graph MultiGraph::support() const {
  Graph g(node_count_);
  for (const auto& l : links_) g.add_edge(l.u, l.v);
  return g;
}

DemandSet DemandSet::rooted(Node root, std::span<const Node> terminals) {
  DemandSet d;
  for (Node t : terminals)
    if (t != root) d.add(root, t);
  return d;
}

DemandSet DemandSet::gossip(int node_count) {
  DemandSet d;
  for (Node s = 0; s < node_count; ++s)
    for (Node t = 0; t < node_count; ++t)
      if (s != t) d.add(s, t);
  return d;
}

void DemandSet::validate(const Graph& g) const {
  for (const auto& p : pairs_) {
    ensure(g.valid_node(p.source) && g.valid_node(p.sink), ErrorCode::InvalidInput,
           "demand endpoint out of range");
    ensure(p.source != p.sink, ErrorCode::InvalidInput,
           "demand pair with equal endpoints " + std::to_string(p.source));
  }
}

std::vector<DemandPair> DemandSet::distinct() const {
  std::vector<DemandPair> out;
  std::set<DemandPair> seen;
  for (const auto& p : pairs_)
    if (seen.insert(p).second) out.push_back(p);
  return out;
}

std::vector<long long> node_weights(int node_count, const DemandSet& demands) {
  std::vector<long long> w(node_count, 0);
  for (const auto& p : demands.distinct()) {
    ++w[p.source];
    ++w[p.sink];
  }
  return w;
}

namespace {

bool allowed_node(NodeMask allowed, Node v) {
  return allowed.empty() || allowed[v] != 0;
}

}  // namespace

std::vector<int> bfs_distances(const Graph& g, Node src, NodeMask allowed) {
  std::vector<int> dist(g.node_count(), -1);
  if (!allowed_node(allowed, src)) return dist;
  std::deque<Node> queue{src};
  dist[src] = 0;
  while (!queue.empty()) {
    const Node u = queue.front();
    queue.pop_front();
    for (Node w : g.neighbors(u)) {
      if (dist[w] >= 0 || !allowed_node(allowed, w)) continue;
      dist[w] = dist[u] + 1;
      queue.push_back(w);
    }
  }
  return dist;
}

std::optional<Path> shortest_path(const Graph& g, Node u, Node v, NodeMask allowed) {
  if (!allowed_node(allowed, u) || !allowed_node(allowed, v)) return std::nullopt;
  const auto dist = bfs_distances(g, v, allowed);
  if (dist[u] < 0) return std::nullopt;
  Path path{u};
  Node cur = u;
  while (cur != v) {
    for (Node w : g.neighbors(cur)) {
      if (dist[w] == dist[cur] - 1) {
        cur = w;
        break;
      }
    }
    path.push_back(cur);
  }
  return path;
}

std::vector<std::vector<Node>> components_within(const Graph& g, NodeMask allowed) {
  const int n = g.node_count();
  std::vector<char> seen(n, 0);
  std::vector<std::vector<Node>> out;
  for (Node s = 0; s < n; ++s) {
    if (seen[s] || !allowed_node(allowed, s)) continue;
    std::vector<Node> comp{s};
    seen[s] = 1;
    for (std::size_t head = 0; head < comp.size(); ++head) {
      for (Node w : g.neighbors(comp[head])) {
        if (seen[w] || !allowed_node(allowed, w)) continue;
        seen[w] = 1;
        comp.push_back(w);
      }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

std::vector<std::vector<Node>> connected_components(const Graph& g,
                                                    std::span<const Node> removed) {
  std::vector<char> allowed(g.node_count(), 1);
  for (Node v : removed) {
    ensure(g.valid_node(v), ErrorCode::InvalidInput, "removed node out of range");
    allowed[v] = 0;
  }
  return components_within(g, allowed);
}

bool is_connected(const Graph& g) {
  if (g.node_count() == 0) return true;
  const auto dist = bfs_distances(g, 0);
  return std::all_of(dist.begin(), dist.end(), [](int d) { return d >= 0; });
}

Eccentricities eccentricity_and_diameter(const Graph& g) {
  Eccentricities out;
  out.eccentricity.assign(g.node_count(), 0);
  for (Node s = 0; s < g.node_count(); ++s) {
    const auto dist = bfs_distances(g, s);
    for (int d : dist) {
      ensure(d >= 0, ErrorCode::InvalidInput, "graph is disconnected");
      out.eccentricity[s] = std::max(out.eccentricity[s], d);
    }
    out.diameter = std::max(out.diameter, out.eccentricity[s]);
  }
  return out;
}

InducedSubgraph induced_subgraph(const Graph& g, std::span<const Node> nodes) {
  InducedSubgraph sub;
  sub.to_global.assign(nodes.begin(), nodes.end());
  sub.to_local.assign(g.node_count(), -1);
  for (int i = 0; i < static_cast<int>(nodes.size()); ++i) sub.to_local[nodes[i]] = i;
  sub.graph = Graph(static_cast<int>(nodes.size()));
  for (const Edge& e : g.edges()) {
    const int a = sub.to_local[e.u];
    const int b = sub.to_local[e.v];
    if (a >= 0 && b >= 0) sub.graph.add_edge(a, b);
  }
  return sub;
}

bool is_path_in(const Graph& g, std::span<const Node> path) {
  if (path.empty()) return false;
  std::set<Node> seen;
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (!g.valid_node(path[i]) || !seen.insert(path[i]).second) return false;
    if (i > 0 && !g.has_edge(path[i - 1], path[i])) return false;
  }
  return true;
}

}  // namespace polycast
