#include "doctest.h"
#include "fixtures.hpp"
#include "polycast/error.hpp"
#include "polycast/oracle.hpp"
#include "polycast/tree_schedule.hpp"

using namespace polycast;
using namespace polycast::fixtures;

namespace {

TelephoneSchedule broadcast(const Graph& tree, Node root) {
  return tree_broadcast_schedule(tree.node_count(), tree.edges(), root);
}

std::vector<Node> everyone_but(int n, Node root) {
  std::vector<Node> out;
  for (Node v = 0; v < n; ++v)
    if (v != root) out.push_back(v);
  return out;
}

}  // namespace

TEST_CASE("tree broadcast examples") {
  CHECK(broadcast(path_graph(4), 0).length() == 3);
  CHECK(broadcast(star_graph(5), 0).length() == 5);
  const Graph bin = dary_tree(2, 2);
  const auto s = broadcast(bin, 0);
  CHECK(s.length() == 4);
  const auto others = everyone_but(7, 0);
  CHECK(brute_force_telephone(bin, DemandSet::rooted(0, others), 8).length == 4);
  validate_telephone(bin, s);
  const auto final = simulate_telephone(bin, PossessionState::sources_only(7, std::vector<Node>{0}), s);
  CHECK(check_demands_met(final, DemandSet::rooted(0, others)).met);
}

TEST_CASE("tree gather examples") {
  for (const auto& [g, root] : {std::pair{path_graph(4), 0}, std::pair{star_graph(5), 0},
                                std::pair{dary_tree(2, 2), 0}}) {
    CHECK(tree_gather_schedule(g.node_count(), g.edges(), root).length() ==
          broadcast(g, root).length());
  }
  const Graph p4 = path_graph(4);
  auto both = tree_gather_schedule(4, p4.edges(), 0);
  both.append(broadcast(p4, 0));
  CHECK(both.length() == 6);
  CHECK(all_pairs_possession(simulate_telephone(p4, PossessionState::own_messages(4), both)));

  const Graph bin = dary_tree(2, 2);
  const auto gather = tree_gather_schedule(7, bin.edges(), 0);
  CHECK(gather.length() == 4);
  const auto final = simulate_telephone(bin, PossessionState::own_messages(7), gather);
  CHECK(final.holds[0].count() == 7);
}

TEST_CASE("tree broadcast is optimal on small trees") {
  int checked = 0;
  for (const auto& entry : rooted_tree_catalog(7)) {
    const int n = entry.tree.node_count();
    const auto s = broadcast(entry.tree, entry.root);
    const DemandSet d = DemandSet::rooted(entry.root, everyone_but(n, entry.root));
    validate_telephone(entry.tree, s);
    CHECK(check_demands_met(simulate_telephone(entry.tree,
                                               PossessionState::sources_only(n, std::vector<Node>{entry.root}), s),
                            d)
              .met);
    if (n > 1) CHECK(s.length() == brute_force_telephone(entry.tree, d, 2 * n).length);
    ++checked;
  }
  CHECK(checked == 1 + 1 + 2 + 4 + 9 + 20 + 48);
}

TEST_CASE("complete 3-ary tree of depth 3 needs 9 rounds") {
  const Graph t = dary_tree(3, 3);
  CHECK(t.node_count() == 40);
  CHECK(broadcast(t, 0).length() == 9);
}

TEST_CASE("tree schedules reject non-trees") {
  const Graph c = cycle_graph(4);
  CHECK_THROWS_AS(tree_broadcast_schedule(4, c.edges(), 0), Error);
  Graph forest(4);
  forest.add_edge(0, 1);
  forest.add_edge(2, 3);
  CHECK_THROWS_AS(tree_gather_schedule(4, forest.edges(), 0), Error);
}

TEST_CASE("path shuttle") {
  SUBCASE("three nodes") {
    const std::vector<Node> p{0, 1, 2};
    const auto s = path_shuttle_schedule(p, 4);
    CHECK(s.rounds[0] == TelephoneRound{{0, 1}});
    CHECK(s.rounds[1] == TelephoneRound{{1, 2}});
    const auto final = simulate_telephone(path_graph(3), PossessionState::own_messages(3), s);
    CHECK(final.holds[0].test(2));
    CHECK(final.holds[2].test(0));
  }
  SUBCASE("two nodes") {
    const std::vector<Node> p{4, 2};
    const auto s = path_shuttle_schedule(p, 3);
    for (const auto& r : s.rounds) CHECK(r == TelephoneRound{{2, 4}});
  }
  SUBCASE("six nodes saturate") {
    const std::vector<Node> p{0, 1, 2, 3, 4, 5};
    const Graph g = path_graph(6);
    const std::vector<Node> ends{0, 5};
    auto state = PossessionState::sources_only(6, ends);
    std::size_t prev = 0;
    for (int r = 1; r <= 12; ++r) {
      state = simulate_telephone(g, PossessionState::sources_only(6, ends), path_shuttle_schedule(p, r));
      std::size_t total = 0;
      for (const auto& h : state.holds) total += h.count();
      CHECK(total >= prev);
      prev = total;
    }
    for (const auto& h : state.holds) CHECK(h.count() == 2);
  }
}
