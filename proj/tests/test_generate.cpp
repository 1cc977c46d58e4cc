#include "doctest.h"
#include "polycast/error.hpp"
#include "polycast/generate.hpp"
#include "polycast/graph_io.hpp"
#include "polycast/planar.hpp"

using namespace polycast;

TEST_CASE("generator sizes") {
  const auto grid = generate_instance("grid", {.rows = 3, .cols = 3}, 0);
  CHECK(grid.graph.node_count() == 9);
  CHECK(grid.graph.edge_count() == 12);
  const auto tree = generate_instance("dary-tree", {.d = 3, .depth = 3}, 0);
  CHECK(tree.graph.node_count() == 40);
  CHECK(tree.graph.edge_count() == 39);
  CHECK(tree.demands.size() == 39);
  CHECK(generate_instance("star", {.n = 4}, 0).graph.max_degree() == 4);
  CHECK(generate_instance("path", {.n = 5}, 0).graph.edge_count() == 4);
}

TEST_CASE("random planar graphs") {
  const auto g = random_planar(20, 1);
  CHECK(g.node_count() == 20);
  CHECK(is_planar(g));
  CHECK(is_connected(g));
  CHECK(g.edge_count() <= 3 * 20 - 6);
  CHECK(g.edge_count() >= 20);
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto h = random_planar(5 + static_cast<int>(seed) * 3, seed);
    CHECK(is_planar(h));
    CHECK(is_connected(h));
  }
}

TEST_CASE("generators are seed deterministic") {
  const InstanceParams p{.n = 25, .pairs = 6};
  const auto a = generate_instance("random-planar", p, 9);
  const auto b = generate_instance("random-planar", p, 9);
  CHECK(graph_to_string(a.graph) == graph_to_string(b.graph));
  CHECK(demands_to_string(a.demands) == demands_to_string(b.demands));
  const auto c = generate_instance("random-planar", p, 10);
  CHECK(graph_to_string(a.graph) != graph_to_string(c.graph));
}

TEST_CASE("random demands") {
  const auto d = random_demands(6, 10, 3);
  CHECK(d.size() == 10);
  CHECK(d.distinct().size() == 10);
  for (const auto& p : d.pairs()) CHECK(p.source != p.sink);
  CHECK_THROWS_AS(random_demands(3, 7, 0), Error);
  CHECK(generate_instance("grid", {.rows = 2, .cols = 2, .pairs = -1}, 0).demands.size() == 12);
}

TEST_CASE("unknown kinds are rejected") {
  try {
    generate_instance("hypercube", {}, 0);
    FAIL("expected BadParams");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BadParams);
  }
  CHECK_THROWS_AS(generate_instance("grid", {.rows = 0, .cols = 3}, 0), Error);
}
