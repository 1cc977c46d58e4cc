#include <cmath>
#include <fstream>

#include <nlohmann/json.hpp>

#include "doctest.h"
#include "fixtures.hpp"
#include "polycast/error.hpp"
#include "polycast/generate.hpp"
#include "polycast/gossip.hpp"
#include "polycast/oracle.hpp"

using namespace polycast;

namespace {

nlohmann::json golden() {
  std::ifstream in(std::string(POLYCAST_GOLDEN_DIR) + "/gossip.json");
  return nlohmann::json::parse(in);
}

// Decomposition with hand-picked separator paths; classes are numbered per
// component in the order given.
GossipDecomposition manual(const Graph& g, int L, const std::vector<std::vector<Path>>& levels) {
  const int n = g.node_count();
  GossipDecomposition d;
  d.L = L;
  d.root = levels.front().front().front();
  d.level_of.assign(n, -1);
  std::vector<char> remaining(n, 1);
  for (int li = 0; li < static_cast<int>(levels.size()); ++li) {
    GossipLevel lv;
    lv.components = components_within(g, remaining);
    lv.path_of.assign(n, -1);
    lv.position.assign(n, -1);
    lv.component_of.assign(n, -1);
    for (int c = 0; c < static_cast<int>(lv.components.size()); ++c)
      for (Node v : lv.components[c]) lv.component_of[v] = c;
    std::vector<int> per_component(lv.components.size(), 0);
    for (const Path& p : levels[li]) {
      const int c = lv.component_of[p.front()];
      const int index = static_cast<int>(lv.paths.size());
      lv.paths.push_back({c, per_component[c]++, p});
      for (int pos = 0; pos < static_cast<int>(p.size()); ++pos) {
        if (lv.path_of[p[pos]] >= 0) continue;
        lv.path_of[p[pos]] = index;
        lv.position[p[pos]] = pos;
      }
    }
    for (int i = 0; i < static_cast<int>(lv.paths.size()); ++i) {
      const Path& p = lv.paths[i].nodes;
      for (int pos = 0; pos < static_cast<int>(p.size()); pos += 2 * L + 1)
        if (lv.path_of[p[pos]] == i) lv.landmarks.push_back(p[pos]);
    }
    for (Node v = 0; v < n; ++v)
      if (lv.path_of[v] >= 0) {
        remaining[v] = 0;
        d.level_of[v] = li;
      }
    lv.remaining = remaining;
    d.levels.push_back(std::move(lv));
  }
  return d;
}

// Nearest landmark by scanning the path: the closer of the two neighbours,
// or the left one when nothing lies to the right.
int nearest_landmark(int pos, int len, int L) {
  const int D = 2 * L + 1;
  int left = -1, right = -1;
  for (int q = 0; q < len; q += D) {
    if (q <= pos) left = q;
    if (q > pos && right < 0) right = q;
  }
  if (right < 0 || pos - left < right - pos) return left;
  return right;
}

bool holds_all(const PossessionState& s, Node v, const std::vector<Node>& messages) {
  for (Node m : messages)
    if (!s.has(v, m)) return false;
  return true;
}

int floor_log2(int n) {
  int k = 0;
  while ((1 << (k + 1)) <= n) ++k;
  return k;
}

}  // namespace

TEST_CASE("landmark_position picks the nearest landmark, left in the tail") {
  for (int L = 1; L <= 4; ++L)
    for (int len = 1; len <= 30; ++len)
      for (int pos = 0; pos < len; ++pos)
        CHECK(landmark_position(pos, len, L) == nearest_landmark(pos, len, L));
}

TEST_CASE("decompose invariants") {
  std::vector<Graph> graphs = {path_graph(9), star_graph(6), grid_graph(4, 4), grid_graph(5, 6),
                               random_planar(30, 3), random_planar(45, 8)};
  for (const Graph& g : graphs) {
    const int n = g.node_count();
    for (int L : {1, 3, 6}) {
      const GossipDecomposition d = decompose(g, L);
      CHECK(d.depth() <= floor_log2(n) + 1);
      std::vector<char> prev(n, 1);
      for (int li = 0; li < d.depth(); ++li) {
        const GossipLevel& lv = d.levels[li];
        for (const GossipPath& gp : lv.paths) {
          const auto& comp = lv.components[gp.component];
          std::vector<char> mask(n, 0);
          for (Node v : comp) mask[v] = 1;
          const auto dist = bfs_distances(g, gp.nodes.front(), mask);
          for (int pos = 0; pos < static_cast<int>(gp.nodes.size()); ++pos) {
            CHECK(prev[gp.nodes[pos]]);
            CHECK(dist[gp.nodes[pos]] == pos);
          }
          CHECK(gp.cls < 3);
        }
        for (Node v : lv.landmarks) CHECK(lv.position[v] % (2 * L + 1) == 0);
        for (Node v = 0; v < n; ++v) {
          CHECK(lv.remaining[v] == (prev[v] && lv.path_of[v] < 0));
          if (lv.path_of[v] >= 0) CHECK(d.level_of[v] == li);
        }
        // No component of the remainder exceeds half of its parent.
        for (const auto& c : components_within(g, lv.remaining))
          CHECK(2 * static_cast<int>(c.size()) <=
                static_cast<int>(lv.components[lv.component_of[c.front()]].size()));
        prev = lv.remaining;
      }
      for (Node v = 0; v < n; ++v) CHECK(d.level_of[v] >= 0);
    }
  }
  // Smallest separators cut a path at its middle vertex: 7 -> 3 + 3 -> 1 + 1.
  CHECK(decompose(path_graph(7), 2).depth() == 3);
  CHECK(decompose(star_graph(5), 2).depth() <= 2);
}

TEST_CASE("grid 4x4 with L = 6 has landmarks only at path starts") {
  const Graph g = grid_graph(4, 4);
  const GossipDecomposition d = decompose(g, 6);
  for (const GossipLevel& lv : d.levels) {
    for (const GossipPath& gp : lv.paths) CHECK(gp.nodes.size() < 13);
    for (Node v : lv.landmarks) CHECK(lv.position[v] == 0);
  }
}

TEST_CASE("gather_on_paths") {
  SUBCASE("path of 5 with L = 2 pipelines to the start in 4 rounds") {
    const Graph g = path_graph(5);
    const auto d = manual(g, 2, {{{0, 1, 2, 3, 4}}});
    REQUIRE(d.levels[0].landmarks == std::vector<Node>{0});
    const RadioSchedule s = gather_on_paths(g, d, 0);
    CHECK(s.length() == 4);
    const auto st = simulate_radio(g, PossessionState::own_messages(5), s);
    CHECK(holds_all(st, 0, {0, 1, 2, 3, 4}));
  }
  SUBCASE("single node path needs no rounds") {
    const Graph g(1);
    CHECK(gather_on_paths(g, manual(g, 1, {{{0}}}), 0).length() == 0);
  }
}

TEST_CASE("gather_on_paths runs components in parallel") {
  Graph g(15);
  for (int i = 0; i < 8; ++i) g.add_edge(i, i + 1);
  for (int i = 9; i < 14; ++i) g.add_edge(i, i + 1);
  g.add_edge(0, 14);  // joins the two paths through node 14
  const int L = 1;
  const auto d = manual(g, L, {{{14}}, {{0, 1, 2, 3, 4, 5, 6, 7, 8}, {9, 10, 11, 12, 13}}});
  REQUIRE(d.levels[1].components.size() == 2);
  const RadioSchedule s = gather_on_paths(g, d, 1);
  // Longest chain: right-going distance 1 one step behind left-going 2 in the tail.
  CHECK(s.length() == 2);
  const auto st = simulate_radio(g, PossessionState::own_messages(15), s);
  for (const GossipPath& gp : d.levels[1].paths) {
    const int len = static_cast<int>(gp.nodes.size());
    for (int pos = 0; pos < len; ++pos)
      CHECK(st.has(gp.nodes[nearest_landmark(pos, len, L)], gp.nodes[pos]));
  }
}

TEST_CASE("a chord on a gathering path is reported") {
  Graph g = path_graph(7);
  g.add_edge(1, 3);
  const auto d = manual(g, 1, {{{0, 1, 2, 3, 4, 5, 6}}});
  CHECK_THROWS_AS(gather_on_paths(g, d, 0), Error);
  try {
    gather_on_paths(g, d, 0);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InterferenceDetected);
  }
}

TEST_CASE("landmark matching") {
  SUBCASE("adjacent landmark hands over in one round") {
    const Graph g = path_graph(2);
    const auto d = manual(g, 1, {{{0}}, {{1}}});
    const auto m = find_landmark_matching(g, d, 1);
    CHECK(m.target == std::vector<Node>{0});
    CHECK(m.witness[0] == Path{1, 0});
    const RadioSchedule s = move_to_prefix(g, d, 1, m);
    REQUIRE(s.length() == 1);
    CHECK(s.rounds[0] == RadioRound{1});
  }
  SUBCASE("3L + 1 landmarks on one prefix node exceed its capacity") {
    const int L = 1;
    const Graph g = star_graph(3 * L + 1);
    const auto d = manual(g, L, {{{0}}, {{1}, {2}, {3}, {4}}});
    try {
      find_landmark_matching(g, d, 1);
      FAIL("expected MatchingInfeasible");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::MatchingInfeasible);
    }
  }
  SUBCASE("3L landmarks fit; the centre hears each in turn") {
    const Graph g = star_graph(3);
    const auto d = manual(g, 1, {{{0}}, {{1}, {2}, {3}}});
    const auto m = find_landmark_matching(g, d, 1);
    const RadioSchedule s = move_to_prefix(g, d, 1, m);
    CHECK(s.length() == 3);
    CHECK(holds_all(simulate_radio(g, PossessionState::own_messages(4), s), 0, {1, 2, 3}));
  }
  SUBCASE("targets next to each other on one path land in different shift classes") {
    Graph g(5);
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    g.add_edge(3, 1);
    g.add_edge(4, 2);
    const auto d = manual(g, 1, {{{0, 1, 2}}, {{3}, {4}}});
    const auto m = find_landmark_matching(g, d, 1);
    CHECK(m.target == std::vector<Node>{1, 2});
    const RadioSchedule s = move_to_prefix(g, d, 1, m);
    REQUIRE(s.length() == 2);
    CHECK(s.rounds[0] == RadioRound{3});
    CHECK(s.rounds[1] == RadioRound{4});
    const auto st = simulate_radio(g, PossessionState::own_messages(5), s);
    CHECK(st.has(1, 3));
    CHECK(st.has(2, 4));
  }
  SUBCASE("witness walks stop one hop short of the target") {
    const Graph g = path_graph(4);
    const auto d = manual(g, 3, {{{0}}, {{3, 2, 1}}});
    const auto m = find_landmark_matching(g, d, 1);
    CHECK(m.witness[0] == Path{3, 2, 1, 0});
    const RadioSchedule s = move_to_prefix(g, d, 1, m);
    CHECK(s.length() == 3);
    CHECK(simulate_radio(g, PossessionState::own_messages(4), s).has(0, 3));
  }
  SUBCASE("landmark beyond L hops has no partner") {
    const Graph g = path_graph(4);
    const auto d = manual(g, 2, {{{0}}, {{3, 2, 1}}});
    CHECK_THROWS_AS(find_landmark_matching(g, d, 1), Error);
  }
}

TEST_CASE("levels move every message into the earlier separators") {
  std::vector<Graph> graphs = {grid_graph(5, 5), random_planar(24, 5), random_planar(40, 11)};
  for (const Graph& g : graphs) {
    const int n = g.node_count();
    const int L = std::max(3, eccentricity_and_diameter(g).diameter);
    const GossipDecomposition d = decompose(g, L);
    REQUIRE(d.depth() >= 2);
    PossessionState st = PossessionState::own_messages(n);
    for (int li = d.depth() - 1; li >= 1; --li) {
      const RadioSchedule gather = gather_on_paths(g, d, li);
      CHECK(gather.length() <= 6 * L);
      const auto m = find_landmark_matching(g, d, li);
      for (const Path& q : m.witness) CHECK(static_cast<int>(q.size()) - 1 <= L);
      const RadioSchedule move = move_to_prefix(g, d, li, m);
      CHECK(move.length() <= 3 * (L - 1) + 27 * L * li);
      st = simulate_radio(g, st, gather);
      st = simulate_radio(g, st, move);
      for (Node x = 0; x < n; ++x) {
        if (d.level_of[x] < li) continue;
        bool placed = false;
        for (Node u = 0; u < n && !placed; ++u) placed = d.level_of[u] < li && st.has(u, x);
        CHECK(placed);
      }
    }
    st = simulate_radio(g, st, gather_on_paths(g, d, 0));
    st = simulate_radio(g, st, collect_at_root(g, d));
    CHECK(st.holds[d.root].count() == static_cast<std::size_t>(n));
  }
}

TEST_CASE("layered broadcast reaches every node") {
  for (const Graph& g : {grid_graph(4, 5), star_graph(5), random_planar(35, 2)}) {
    const int n = g.node_count();
    const RadioSchedule s = layered_broadcast(g, 0);
    const auto st = simulate_radio(g, PossessionState::sources_only(n, std::vector<Node>{0}), s);
    for (Node v = 0; v < n; ++v) CHECK(st.has(v, 0));
    CHECK(s.length() <= n - 1);
  }
  // Star: the centre reaches every leaf at once.
  CHECK(layered_broadcast(star_graph(5), 0).length() == 1);
}

TEST_CASE("radio_gossip small cases") {
  CHECK(radio_gossip(Graph(1)).schedule.length() == 0);

  const auto two = radio_gossip(path_graph(2));
  CHECK(two.schedule.length() == 2);
  for (const RadioRound& r : two.schedule.rounds) CHECK(r.size() == 1);

  const auto frozen = golden();
  const Graph p5 = path_graph(5);
  const auto r = radio_gossip(p5);
  CHECK(all_pairs_possession(simulate_radio(p5, PossessionState::own_messages(5), r.schedule)));
  const auto opt = brute_force_radio(p5, DemandSet::gossip(5), 10);
  CHECK(opt.length == frozen["path5_oracle"].get<int>());
  CHECK(r.schedule.length() == frozen["path5_length"].get<int>());
  const double l2 = std::log2(5.0);
  CHECK(r.gather_rounds <= frozen["gather_constant"].get<double>() * r.L * l2 * l2);

  CHECK_THROWS_AS(radio_gossip(fixtures::complete_graph(5)), Error);
  Graph split(4);
  split.add_edge(0, 1);
  split.add_edge(2, 3);
  CHECK_THROWS_AS(radio_gossip(split), Error);
}

TEST_CASE("radio_gossip on random planar graphs") {
  const double c = golden()["gather_constant"].get<double>();
  for (int i = 0; i < 8; ++i) {
    const Graph g = random_planar(10 + 6 * i, 200 + i);
    const int n = g.node_count();
    const auto r = radio_gossip(g, i);
    validate_radio(g, r.schedule);
    CHECK(all_pairs_possession(simulate_radio(g, PossessionState::own_messages(n), r.schedule)));
    // The construction never needs a transmitter to listen.
    CHECK(all_pairs_possession(
        simulate_radio(g, PossessionState::own_messages(n), r.schedule, RadioSemantics{false})));
    REQUIRE(!r.attempts.empty());
    CHECK(r.attempts.front().L == std::max(3, eccentricity_and_diameter(g).diameter));
    CHECK(r.L <= 2 * n);
    CHECK(r.schedule.length() == r.gather_rounds + r.broadcast_rounds);
    const double l2 = std::log2(static_cast<double>(n));
    CHECK(r.gather_rounds <= c * r.L * l2 * l2);
  }
}

TEST_CASE("radio_gossip is deterministic") {
  const Graph g = random_planar(30, 9);
  CHECK(radio_gossip(g).schedule.rounds == radio_gossip(g).schedule.rounds);
}

TEST_CASE("matching exists at the optimal length on tiny instances") {
  std::vector<Graph> graphs = {path_graph(5), star_graph(4), grid_graph(2, 3), random_planar(5, 1),
                               random_planar(6, 2)};
  for (const Graph& g : graphs) {
    const int n = g.node_count();
    const auto opt = brute_force_radio(g, DemandSet::gossip(n), 2 * n);
    const auto d = decompose(g, opt.length);
    for (int li = 1; li < d.depth(); ++li) CHECK_NOTHROW(find_landmark_matching(g, d, li));
    const auto r = radio_gossip(g);
    CHECK(r.schedule.length() >= opt.length);
    CHECK(r.schedule.length() <= 60 * opt.length);
  }
}
