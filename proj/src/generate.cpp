#include "polycast/generate.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <random>
#include <set>

#include "polycast/error.hpp"
#include "polycast/planar.hpp"

namespace polycast {

Graph grid_graph(int rows, int cols) {
  ensure(rows >= 1 && cols >= 1, ErrorCode::BadParams, "grid needs positive dimensions");
  Graph g(rows * cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      if (c + 1 < cols) g.add_edge(r * cols + c, r * cols + c + 1);
      if (r + 1 < rows) g.add_edge(r * cols + c, (r + 1) * cols + c);
    }
  return g;
}

Graph path_graph(int n) {
  ensure(n >= 1, ErrorCode::BadParams, "path needs a node");
  Graph g(n);
  for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
  return g;
}

Graph star_graph(int leaves) {
  ensure(leaves >= 1, ErrorCode::BadParams, "star needs a leaf");
  Graph g(leaves + 1);
  for (int i = 1; i <= leaves; ++i) g.add_edge(0, i);
  return g;
}

Graph dary_tree(int d, int depth) {
  ensure(d >= 1 && depth >= 0, ErrorCode::BadParams, "bad d-ary tree parameters");
  long long n = 1, level = 1;
  for (int i = 0; i < depth; ++i) {
    level *= d;
    n += level;
    ensure(n <= 1'000'000, ErrorCode::BadParams, "d-ary tree too large");
  }
  Graph g(static_cast<int>(n));
  for (int v = 1; v < n; ++v) g.add_edge((v - 1) / d, v);
  return g;
}

namespace {

double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

struct Point {
  double x, y;
};

bool in_circumcircle(const Point& a, const Point& b, const Point& c, const Point& p) {
  const double ax = a.x - p.x, ay = a.y - p.y;
  const double bx = b.x - p.x, by = b.y - p.y;
  const double cx = c.x - p.x, cy = c.y - p.y;
  const double det = (ax * ax + ay * ay) * (bx * cy - cx * by) -
                     (bx * bx + by * by) * (ax * cy - cx * ay) +
                     (cx * cx + cy * cy) * (ax * by - bx * ay);
  const double orient = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
  return orient > 0 ? det > 0 : det < 0;
}

}  // namespace

Graph random_planar(int n, std::uint64_t seed) {
  ensure(n >= 1, ErrorCode::BadParams, "random planar graph needs a node");
  if (n <= 3) {
    Graph g(n);
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
    return g;
  }
  std::mt19937_64 rng(seed);
  const int side = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n)))) + 1;
  std::vector<int> cells(side * side);
  for (int i = 0; i < side * side; ++i) cells[i] = i;
  for (int i = side * side - 1; i > 0; --i)
    std::swap(cells[i], cells[static_cast<int>(rng() % static_cast<std::uint64_t>(i + 1))]);
  cells.resize(n);
  std::sort(cells.begin(), cells.end());
  std::vector<Point> pts;
  for (int c : cells)
    pts.push_back({c % side + 0.6 * (unit(rng) - 0.5), c / side + 0.6 * (unit(rng) - 0.5)});

  // Bowyer-Watson with a large enclosing triangle (ids n, n+1, n+2).
  const double big = 100.0 * side;
  pts.push_back({-big, -big});
  pts.push_back({3 * big, -big});
  pts.push_back({-big, 3 * big});
  std::vector<std::array<int, 3>> tris{{n, n + 1, n + 2}};
  for (int p = 0; p < n; ++p) {
    std::map<std::pair<int, int>, int> boundary;
    std::vector<std::array<int, 3>> keep;
    for (const auto& t : tris) {
      if (in_circumcircle(pts[t[0]], pts[t[1]], pts[t[2]], pts[p])) {
        for (int i = 0; i < 3; ++i) {
          const int a = std::min(t[i], t[(i + 1) % 3]), b = std::max(t[i], t[(i + 1) % 3]);
          ++boundary[{a, b}];
        }
      } else {
        keep.push_back(t);
      }
    }
    for (const auto& [edge, count] : boundary)
      if (count == 1) keep.push_back({edge.first, edge.second, p});
    tris = std::move(keep);
  }
  Graph g(n);
  for (const auto& t : tris)
    for (int i = 0; i < 3; ++i) {
      const int a = t[i], b = t[(i + 1) % 3];
      if (a < n && b < n && !g.has_edge(a, b)) g.add_edge(a, b);
    }
  ensure(is_connected(g) && is_planar(g), ErrorCode::Internal, "triangulation is not a connected planar graph");
  return g;
}

DemandSet random_demands(int node_count, int pairs, std::uint64_t seed) {
  ensure(node_count >= 2 || pairs == 0, ErrorCode::BadParams, "demands need two nodes");
  const long long possible = static_cast<long long>(node_count) * (node_count - 1);
  ensure(pairs >= 0 && pairs <= possible, ErrorCode::BadParams, "too many demand pairs");
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
  std::set<std::pair<int, int>> seen;
  DemandSet d;
  while (d.size() < pairs) {
    const Node s = static_cast<Node>(rng() % static_cast<std::uint64_t>(node_count));
    const Node t = static_cast<Node>(rng() % static_cast<std::uint64_t>(node_count));
    if (s == t || !seen.insert({s, t}).second) continue;
    d.add(s, t);
  }
  return d;
}

Instance generate_instance(const std::string& kind, const InstanceParams& p, std::uint64_t seed) {
  Instance inst;
  bool tree = false;
  if (kind == "grid") {
    inst.graph = grid_graph(p.rows, p.cols);
  } else if (kind == "path") {
    inst.graph = path_graph(p.n);
    tree = true;
  } else if (kind == "star") {
    inst.graph = star_graph(p.n);
    tree = true;
  } else if (kind == "dary-tree") {
    inst.graph = dary_tree(p.d, p.depth);
    tree = true;
  } else if (kind == "random-planar") {
    inst.graph = random_planar(p.n, seed);
  } else {
    fail(ErrorCode::BadParams, "unknown instance kind '" + kind + "'");
  }
  const int n = inst.graph.node_count();
  if (p.pairs < 0) {
    inst.demands = DemandSet::gossip(n);
  } else if (p.pairs > 0) {
    inst.demands = random_demands(n, p.pairs, seed);
  } else if (tree && n > 1) {
    std::vector<Node> rest;
    for (Node v = 1; v < n; ++v) rest.push_back(v);
    inst.demands = DemandSet::rooted(0, rest);
  }
  return inst;
}

}  // namespace polycast
