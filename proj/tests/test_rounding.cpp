#include <cmath>
#include <fstream>
#include <functional>

#include <nlohmann/json.hpp>

#include "doctest.h"
#include "exhaustive.hpp"
#include "fixtures.hpp"
#include "polycast/error.hpp"
#include "polycast/oracle.hpp"
#include "polycast/rounding.hpp"

using namespace polycast;
using namespace polycast::fixtures;

namespace {

std::vector<WeightedPath> weighted(std::initializer_list<double> weights) {
  std::vector<WeightedPath> out;
  for (double w : weights) out.push_back({{0, 1}, w});
  return out;
}

// Smallest achievable max node congestion over all selections.
int best_congestion(const std::vector<std::vector<CandidatePath>>& candidates, int n) {
  int best = 1 << 30;
  std::vector<int> load(n);
  std::function<void(std::size_t)> rec = [&](std::size_t t) {
    if (t == candidates.size()) {
      best = std::min(best, *std::max_element(load.begin(), load.end()));
      return;
    }
    for (const auto& c : candidates[t]) {
      for (Node v : c.path) ++load[v];
      rec(t + 1);
      for (Node v : c.path) --load[v];
    }
  };
  rec(0);
  return best;
}

bool spans(const PoiseTree& tree, int n, Node root, std::span<const Node> terminals) {
  const auto depth = tree_depths(n, root, tree.edges);
  for (Node t : terminals)
    if (depth[t] < 0) return false;
  return true;
}

}  // namespace

TEST_CASE("grid multiplicities") {
  CHECK(grid_multiplicities(weighted({1.0}), 4) == std::vector<long long>{4});
  CHECK(grid_multiplicities(weighted({0.5, 0.5}), 4) == std::vector<long long>{2, 2});
  CHECK(grid_multiplicities(weighted({0.5, 0.3, 0.2}), 10) == std::vector<long long>{5, 3, 2});
  // 1/3 each on a grid of 4: one path gets the extra copy.
  const auto thirds = grid_multiplicities(weighted({1.0 / 3, 1.0 / 3, 1.0 / 3}), 4);
  CHECK(thirds[0] + thirds[1] + thirds[2] == 4);
}

TEST_CASE("scale_to_multigraph doubles every path") {
  const Graph g = path_graph(3);
  const std::vector<Node> leaves{0, 2};
  const auto frac = solve_poise(g, DemandSet::rooted(1, leaves));
  const std::vector<Node> one{0};
  const auto multi = scale_to_multigraph(frac, one, 4);
  CHECK(multi.multiplicity(0, 1) == 8);
  CHECK(multi.total_edges() == 8);
  const auto both = scale_to_multigraph(frac, leaves, 4);
  CHECK(both.multiplicity(1, 2) == 8);
  CHECK(both.total_edges() == 16);
}

TEST_CASE("congestion_round_paths examples") {
  SUBCASE("single terminal") {
    std::vector<std::vector<CandidatePath>> c{{{{0, 1, 2}, 4}}};
    const auto r = congestion_round_paths(c, 3, 4.0, 1);
    CHECK(r.chosen == std::vector<int>{0});
    CHECK(r.congestion == 1);
  }
  SUBCASE("disjoint candidates") {
    std::vector<std::vector<CandidatePath>> c{{{{0, 1, 2}, 4}}, {{{3, 4, 5}, 4}}};
    const auto r = congestion_round_paths(c, 6, 4.0, 1);
    CHECK(r.chosen == std::vector<int>{0, 0});
    CHECK(r.congestion == 1);
  }
  SUBCASE("shared hub") {
    // Terminals 1..4 each reach 5..8 through hub 0 or directly through 9.
    std::vector<std::vector<CandidatePath>> c;
    for (Node t = 1; t <= 4; ++t) c.push_back({{{t, 0, t + 4}, 3}, {{t, 9, t + 4}, 1}});
    const int exact = best_congestion(c, 10);
    CHECK(exact <= 8);
    const auto r = congestion_round_paths(c, 10, 8.0, 5);
    CHECK(r.within_bound);
    CHECK(r.congestion <= 8);
    const auto tight = congestion_round_paths(c, 10, exact, 5);
    CHECK(tight.congestion >= exact);
  }
}

TEST_CASE("merge_centers on two centers") {
  const Graph g = path_graph(3);
  const std::vector<Node> leaves{0, 2};
  const auto frac = solve_poise(g, DemandSet::rooted(1, leaves));
  MergeStats stats;
  const auto paths = merge_centers(g, frac, 1, leaves, frac.value, 0, kDefaultGrid, &stats);
  REQUIRE(paths.size() == 1);
  CHECK(paths[0] == Path{2, 1, 0});
  CHECK(stats.pruned == 0);
  CHECK(stats.packed == 2 * kDefaultGrid);
}

TEST_CASE("merge_centers on a 4-cycle") {
  Graph g = cycle_graph(4);
  Graph h(5);
  for (const Edge& e : g.edges()) h.add_edge(e.u, e.v);
  h.add_edge(0, 4);
  const std::vector<Node> centers{0, 1, 2, 3};
  const auto frac = solve_poise(h, DemandSet::rooted(4, centers));
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const auto paths = merge_centers(h, frac, 4, centers, frac.value, seed);
    CHECK(paths.size() >= 1);
    for (const Path& p : paths) {
      CHECK(p.size() - 1 <= 4 * frac.value);
      CHECK(is_path_in(h, p));
      CHECK(p.front() != p.back());
    }
  }
}

TEST_CASE("round_poise_tree forced cases") {
  SUBCASE("single edge") {
    const Graph g = path_graph(2);
    const std::vector<Node> R{1};
    const auto frac = solve_poise(g, DemandSet::rooted(0, R));
    const auto tree = round_poise_tree(g, 0, R, frac);
    CHECK(tree.edges == std::vector<Edge>{{0, 1}});
    CHECK(tree.poise == 2);
  }
  SUBCASE("star from its center") {
    const int k = 5;
    const Graph g = star_graph(k);
    std::vector<Node> R;
    for (Node v = 1; v <= k; ++v) R.push_back(v);
    const auto frac = solve_poise(g, DemandSet::rooted(0, R));
    const auto tree = round_poise_tree(g, 0, R, frac);
    CHECK(tree.edges.size() == static_cast<std::size_t>(k));
    CHECK(tree.max_degree == k);
    CHECK(tree.diameter == 2);
    CHECK(tree.poise == k + 2);
  }
}

TEST_CASE("round_poise_tree on grids") {
  for (auto [rows, cols] : {std::pair{2, 4}, std::pair{3, 3}, std::pair{3, 4}}) {
    const Graph g = grid_graph(rows, cols);
    const int n = rows * cols;
    const std::vector<Node> R{cols - 1, n - cols, n - 1};
    const auto frac = solve_poise(g, DemandSet::rooted(0, R));
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
      const auto tree = round_poise_tree(g, 0, R, frac, {kDefaultGrid, seed});
      CHECK(spans(tree, n, 0, R));
      for (const Edge& e : tree.edges) CHECK(g.has_edge(e.u, e.v));
      CHECK(tree.longest_merge_path <= 4 * frac.value + 1e-9);
      CHECK(tree.poise <= 48 * frac.value * std::log2(3.0));
      CHECK(tree.iterations <= static_cast<int>(std::ceil(std::log(3.0) / std::log(4.0 / 3))) + 3);
    }
  }
}

TEST_CASE("round_poise_tree is deterministic per seed") {
  const Graph g = grid_graph(4, 4);
  const std::vector<Node> R{3, 5, 10, 12, 15};
  const auto frac = solve_poise(g, DemandSet::rooted(0, R));
  const auto a = round_poise_tree(g, 0, R, frac, {kDefaultGrid, 7});
  const auto b = round_poise_tree(g, 0, R, frac, {kDefaultGrid, 7});
  CHECK(a.edges == b.edges);
  CHECK(spans(a, 16, 0, R));
}

TEST_CASE("measure_tree rejects cycles") {
  PoiseTree t;
  t.edges = {{0, 1}, {1, 2}, {0, 2}};
  CHECK_THROWS_AS(measure_tree(3, t), Error);
}

TEST_CASE("rounding suite stays within the recorded constant of the optimum") {
  std::ifstream in(std::string(POLYCAST_GOLDEN_DIR) + "/rounding.json");
  const double c = nlohmann::json::parse(in)["optimal_poise_constant"].get<double>();
  for (const auto& rc : exhaustive::rounding_suite()) {
    const int n = rc.graph.node_count();
    const int k = static_cast<int>(rc.terminals.size());
    const auto frac = solve_poise(rc.graph, DemandSet::rooted(rc.root, rc.terminals));
    const auto tree = round_poise_tree(rc.graph, rc.root, rc.terminals, frac, {kDefaultGrid, 1});
    CHECK(spans(tree, n, rc.root, rc.terminals));
    CHECK(tree.longest_merge_path <= 4 * frac.value + 1e-9);
    CHECK(tree.poise <= 48 * frac.value * std::log2(static_cast<double>(k)));
    if (n <= 9) {
      const auto opt = exhaustive_min_poise(rc.graph, rc.root, rc.terminals);
      CHECK(opt.poise <= tree.poise);
      CHECK(tree.poise <= c * std::log2(static_cast<double>(k)) * opt.poise + 1e-9);
    }
  }
}
