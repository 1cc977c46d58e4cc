#include <numeric>

#include "doctest.h"
#include "polycast/error.hpp"
#include "polycast/generate.hpp"
#include "polycast/planar.hpp"
#include "polycast/separator.hpp"

using namespace polycast;

namespace {

std::vector<long long> unit_weights(int n) { return std::vector<long long>(n, 1); }

}  // namespace

TEST_CASE("planarity") {
  CHECK(is_planar(grid_graph(4, 4)));
  Graph k5(5);
  for (int u = 0; u < 5; ++u)
    for (int v = u + 1; v < 5; ++v) k5.add_edge(u, v);
  CHECK_FALSE(is_planar(k5));
  CHECK_THROWS_AS(triangulate(k5), Error);
  Graph k33(6);
  for (int u = 0; u < 3; ++u)
    for (int v = 3; v < 6; ++v) k33.add_edge(u, v);
  CHECK_FALSE(is_planar(k33));
}

TEST_CASE("triangulation has 2n - 4 faces") {
  for (const Graph& g : {grid_graph(3, 3), path_graph(5), star_graph(4), random_planar(30, 2)}) {
    const auto tri = triangulate(g);
    const int n = g.node_count();
    CHECK(tri.graph.edge_count() == 3 * n - 6);
    CHECK(static_cast<int>(tri.faces.size()) == 2 * n - 4);
    CHECK(is_planar(tri.graph));
    for (const Edge& e : g.edges()) CHECK(tri.graph.has_edge(e.u, e.v));
    for (const auto& f : tri.faces) {
      CHECK(tri.graph.has_edge(f[0], f[1]));
      CHECK(tri.graph.has_edge(f[1], f[2]));
      CHECK(tri.graph.has_edge(f[0], f[2]));
    }
  }
}

TEST_CASE("separator examples") {
  SUBCASE("path: the middle vertex") {
    const Graph g = path_graph(7);
    const auto w = unit_weights(7);
    const auto sep = find_3path_separator(g, w);
    CHECK(verify_separator(g, w, {}, sep));
    CHECK(sep.nodes() == std::vector<Node>{3});
  }
  SUBCASE("star: the center") {
    const Graph g = star_graph(6);
    const auto w = unit_weights(7);
    const auto sep = find_3path_separator(g, w);
    CHECK(sep.nodes() == std::vector<Node>{0});
  }
  SUBCASE("4x4 grid") {
    const Graph g = grid_graph(4, 4);
    const auto w = unit_weights(16);
    const auto sep = find_3path_separator(g, w);
    CHECK(verify_separator(g, w, {}, sep));
    std::vector<Node> removed = sep.nodes();
    for (const auto& comp : connected_components(g, removed)) CHECK(comp.size() <= 8);
  }
}

TEST_CASE("verify_separator rejects bad separators") {
  const Graph g = grid_graph(3, 3);
  const auto w = unit_weights(9);
  PathSeparator detour{0, {{0, 1, 4, 3}}};
  CHECK_FALSE(verify_separator(g, w, {}, detour));
  CHECK(separator_violation(g, w, {}, detour) == "path is not a shortest path from the root");

  const Graph p = path_graph(5);
  const auto pw = unit_weights(5);
  PathSeparator end{0, {{0}}};
  CHECK_FALSE(verify_separator(p, pw, {}, end));
  PathSeparator middle{2, {{2}}};
  CHECK(verify_separator(p, pw, {}, middle));
}

TEST_CASE("separators on grids and random triangulations") {
  for (int rows = 1; rows <= 8; ++rows)
    for (int cols = 1; cols <= 8; ++cols) {
      const Graph g = grid_graph(rows, cols);
      const auto w = unit_weights(rows * cols);
      const auto sep = find_3path_separator(g, w);
      CHECK(sep.paths.size() <= 3);
      CHECK(separator_violation(g, w, {}, sep) == "");
    }
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const int n = 10 + static_cast<int>(seed) * 2;
    const Graph g = random_planar(n, seed);
    std::vector<long long> w(n);
    for (int v = 0; v < n; ++v) w[v] = (v * 7 + static_cast<int>(seed)) % 4;
    if (std::accumulate(w.begin(), w.end(), 0LL) == 0) w[0] = 1;
    SeparatorStats stats;
    const auto sep = find_3path_separator(g, w, {}, &stats);
    CHECK(separator_violation(g, w, {}, sep) == "");
    CHECK_FALSE(stats.used_fallback);
  }
}

TEST_CASE("separator inside a component") {
  const Graph g = grid_graph(4, 4);
  const auto w = unit_weights(16);
  const std::vector<Node> bottom{8, 9, 10, 11, 12, 13, 14, 15};
  const auto sep = find_3path_separator(g, w, bottom);
  CHECK(sep.root >= 8);
  CHECK(verify_separator(g, w, bottom, sep));
  for (Node v : sep.nodes()) CHECK(v >= 8);
}
