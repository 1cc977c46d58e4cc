#include <cmath>
#include <limits>
#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "polycast/error.hpp"
#include "polycast/poise_lp.hpp"

using namespace polycast;
using namespace polycast::fixtures;

namespace {

// Minimum over edge subsets of (max degree + max pair distance) among
// subgraphs connecting every pair. Exhaustive; tiny graphs only.
double integral_poise(const Graph& g, const DemandSet& d) {
  const int m = g.edge_count();
  double best = std::numeric_limits<double>::infinity();
  for (unsigned mask = 1; mask < (1u << m); ++mask) {
    Graph sub(g.node_count());
    for (int e = 0; e < m; ++e)
      if (mask >> e & 1u) sub.add_edge(g.edge(e).u, g.edge(e).v);
    int length = 0;
    bool ok = true;
    for (const auto& p : d.pairs()) {
      const int dist = bfs_distances(sub, p.source)[p.sink];
      if (dist < 0) {
        ok = false;
        break;
      }
      length = std::max(length, dist);
    }
    if (ok) best = std::min(best, static_cast<double>(length + sub.max_degree()));
  }
  return best;
}

}  // namespace

// Expected optima below were computed with tests/oracles/poise_lp_oracle.py.
TEST_CASE("LP optimum on forced instances") {
  CHECK(solve_poise(path_graph(2), DemandSet({{0, 1}})).value == doctest::Approx(2.0).epsilon(1e-9));

  const auto path = solve_poise(path_graph(3), DemandSet({{0, 2}}));
  CHECK(path.value == doctest::Approx(4.0));
  CHECK(path.l1 == doctest::Approx(2.0));
  CHECK(path.l2 == doctest::Approx(2.0));

  const std::vector<Node> leaves{1, 2, 3};
  const auto star = solve_poise(star_graph(3), DemandSet::rooted(0, leaves));
  CHECK(star.value == doctest::Approx(4.0));
  CHECK(star.l1 == doctest::Approx(3.0));
  CHECK(star.l2 == doctest::Approx(1.0));
}

TEST_CASE("LP on the crossed 4-cycle is fractional") {
  const Graph g = cycle_graph(4);
  const DemandSet d({{0, 2}, {1, 3}});
  const auto frac = solve_poise(g, d);
  CHECK(frac.value == doctest::Approx(3.0).epsilon(1e-7));
  CHECK(integral_poise(g, d) == 4.0);
  CHECK(frac.value <= integral_poise(g, d) + 1e-7);
  CHECK(check_fractional(g, frac).empty());
}

TEST_CASE("LP on grid instances") {
  const Graph g23 = grid_graph(2, 3);
  const std::vector<Node> corners{2, 3, 5};
  const auto frac = solve_poise(g23, DemandSet::rooted(0, corners));
  CHECK(frac.value == doctest::Approx(4.0).epsilon(1e-7));
  CHECK(check_fractional(g23, frac).empty());
  for (const auto& list : frac.paths) {
    double total = 0;
    for (const auto& wp : list) total += wp.weight;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
  }

  const Graph g33 = grid_graph(3, 3);
  const DemandSet mixed({{0, 8}, {2, 6}, {1, 7}, {3, 5}});
  const auto f33 = solve_poise(g33, mixed);
  CHECK(f33.value == doctest::Approx(5.0).epsilon(1e-7));
  CHECK(check_fractional(g33, f33).empty());
}

TEST_CASE("LP never exceeds the best integral subgraph") {
  const Graph g = grid_graph(2, 3);
  for (const DemandSet& d : {DemandSet({{0, 5}}), DemandSet({{0, 5}, {2, 3}}),
                             DemandSet({{1, 4}, {0, 2}, {3, 5}})}) {
    CHECK(solve_poise(g, d).value <= integral_poise(g, d) + 1e-7);
  }
}

TEST_CASE("path generation matches the compact LP") {
  std::mt19937_64 rng(3);
  const std::vector<Graph> graphs{grid_graph(3, 3), grid_graph(2, 5), cycle_graph(7), dary_tree(2, 3),
                                  complete_graph(5)};
  for (int trial = 0; trial < 25; ++trial) {
    const Graph& g = graphs[trial % graphs.size()];
    std::uniform_int_distribution<Node> pick(0, g.node_count() - 1);
    std::vector<DemandPair> pairs;
    const int k = 1 + trial % 4;
    while (static_cast<int>(pairs.size()) < k) {
      const Node s = pick(rng), t = pick(rng);
      if (s != t) pairs.push_back({s, t});
    }
    const DemandSet d(pairs);
    const auto by_paths = solve_poise(g, d, LpMethod::PathGeneration);
    const auto compact = solve_poise(g, d, LpMethod::Compact);
    CHECK(by_paths.value == doctest::Approx(compact.value).epsilon(1e-7));
    CHECK(check_fractional(g, by_paths).empty());
    CHECK(check_fractional(g, compact).empty());
  }
}

TEST_CASE("decompose_flows") {
  SUBCASE("unit flow on a single path") {
    const Graph g = path_graph(3);
    // arcs: 0 = 0->1, 1 = 1->0, 2 = 1->2, 3 = 2->1
    const std::vector<double> f{1, 0, 1, 0};
    const auto paths = decompose_flows(g, 0, 2, f);
    REQUIRE(paths.size() == 1);
    CHECK(paths[0].path == Path{0, 1, 2});
    CHECK(paths[0].weight == doctest::Approx(1.0));
  }
  SUBCASE("half and half around a 4-cycle") {
    const Graph g = cycle_graph(4);  // edges 0:(0,1) 1:(1,2) 2:(2,3) 3:(0,3)
    const std::vector<double> f{0.5, 0, 0.5, 0, 0, 0.5, 0.5, 0};
    auto paths = decompose_flows(g, 0, 2, f);
    REQUIRE(paths.size() == 2);
    std::sort(paths.begin(), paths.end(),
              [](const auto& a, const auto& b) { return a.path < b.path; });
    CHECK(paths[0].path == Path{0, 1, 2});
    CHECK(paths[1].path == Path{0, 3, 2});
    CHECK(paths[0].weight == doctest::Approx(0.5));
    CHECK(paths[1].weight == doctest::Approx(0.5));
  }
  SUBCASE("cycles are dropped") {
    const Graph g = cycle_graph(4);
    // 0->1->2 carries the unit; 2->3->0 plus 0->1... forms a circulation
    // 0->1->2->3->0 of 0.25 on top.
    const std::vector<double> f{1.25, 0, 1.25, 0, 0.25, 0, 0, 0.25};
    const auto paths = decompose_flows(g, 0, 2, f);
    REQUIRE(paths.size() == 1);
    CHECK(paths[0].path == Path{0, 1, 2});
  }
  SUBCASE("residue is reported") {
    const Graph g = path_graph(3);
    const std::vector<double> f{0.5, 0, 0.5, 0};
    CHECK_THROWS_AS(decompose_flows(g, 0, 2, f), Error);
  }
}

TEST_CASE("disconnected pairs are infeasible") {
  Graph g(4);
  g.add_edge(0, 1);
  g.add_edge(2, 3);
  try {
    build_poise_lp(g, DemandSet({{0, 3}}));
    FAIL("expected InfeasiblePair");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InfeasiblePair);
  }
}

TEST_CASE("LP dump uses deterministic names") {
  const auto lp = build_poise_lp(path_graph(3), DemandSet({{0, 2}}));
  const auto text = lp_dump(lp);
  CHECK(text.find("x_e_0_1") != std::string::npos);
  CHECK(text.find("f_0_1_0") != std::string::npos);
  CHECK(text.find("Minimize") != std::string::npos);
  CHECK(text.find("obj: L1 + L2") != std::string::npos);
  CHECK(text == lp_dump(build_poise_lp(path_graph(3), DemandSet({{0, 2}}))));
}

TEST_CASE("fractional_from_paths recomputes budgets") {
  const Graph g = cycle_graph(4);
  std::vector<std::vector<WeightedPath>> paths{{{{0, 1, 2}, 0.5}, {{0, 3, 2}, 0.5}}};
  const auto frac = fractional_from_paths(g, {{0, 2}}, paths);
  CHECK(frac.l2 == doctest::Approx(2.0));
  CHECK(frac.l1 == doctest::Approx(1.0));
  CHECK(frac.value == doctest::Approx(3.0));
  CHECK(check_fractional(g, frac).empty());
}
