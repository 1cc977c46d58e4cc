#include "polycast/gossip.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <string>
#include <tuple>
#include <utility>

#include "polycast/error.hpp"
#include "polycast/maxflow.hpp"
#include "polycast/planar.hpp"
#include "polycast/separator.hpp"

namespace polycast {

namespace {

using Reception = std::pair<Node, Node>;  // receiver, sender

void check_receptions(const Graph& g, const RadioRound& round,
                      const std::vector<Reception>& planned) {
  const auto heard = radio_receptions(g, round);
  for (auto [to, from] : planned) {
    if (heard[to] != from)
      fail(ErrorCode::InterferenceDetected,
           "node " + std::to_string(to) + " does not hear " + std::to_string(from));
  }
}

void emit(const Graph& g, RadioSchedule& out, RadioRound round, std::vector<Reception> planned) {
  if (round.empty()) return;
  std::sort(round.begin(), round.end());
  round.erase(std::unique(round.begin(), round.end()), round.end());
  check_receptions(g, round, planned);
  out.rounds.push_back(std::move(round));
}

int spacing(int L) { return 2 * L + 1; }

}  // namespace

int landmark_position(int position, int path_length, int L) {
  const int D = spacing(L);
  const int a = position % D;
  const int left = position - a;
  if (a == 0) return position;
  if (a <= L || left + D >= path_length) return left;
  return left + D;
}

GossipDecomposition decompose(const Graph& g, int L) {
  const int n = g.node_count();
  ensure(L >= 1, ErrorCode::InvalidInput, "L must be positive");
  ensure(n >= 1 && is_connected(g), ErrorCode::InvalidInput, "graph must be connected");

  GossipDecomposition d;
  d.L = L;
  d.level_of.assign(n, -1);
  const std::vector<long long> unit(n, 1);
  std::vector<char> remaining(n, 1);
  int left = n;

  while (left > 0) {
    const int li = d.depth();
    GossipLevel level;
    level.components = components_within(g, remaining);
    level.path_of.assign(n, -1);
    level.position.assign(n, -1);
    level.component_of.assign(n, -1);
    for (int c = 0; c < static_cast<int>(level.components.size()); ++c) {
      for (Node v : level.components[c]) level.component_of[v] = c;
      const PathSeparator sep = find_3path_separator(g, unit, level.components[c]);
      if (li == 0) d.root = sep.root;
      for (int k = 0; k < static_cast<int>(sep.paths.size()); ++k) {
        const Path& p = sep.paths[k];
        const int index = static_cast<int>(level.paths.size());
        for (int pos = 0; pos < static_cast<int>(p.size()); ++pos) {
          if (level.path_of[p[pos]] >= 0) continue;
          level.path_of[p[pos]] = index;
          level.position[p[pos]] = pos;
        }
        level.paths.push_back({c, k, p});
      }
    }
    const int D = spacing(L);
    for (int i = 0; i < static_cast<int>(level.paths.size()); ++i) {
      const Path& p = level.paths[i].nodes;
      for (int pos = 0; pos < static_cast<int>(p.size()); pos += D)
        if (level.path_of[p[pos]] == i) level.landmarks.push_back(p[pos]);
    }
    for (Node v = 0; v < n; ++v) {
      if (level.path_of[v] < 0) continue;
      ensure(remaining[v], ErrorCode::Internal, "separator path leaves the remainder");
      remaining[v] = 0;
      d.level_of[v] = li;
      --left;
    }
    level.remaining = remaining;
    d.levels.push_back(std::move(level));
  }
  return d;
}

RadioSchedule gather_on_paths(const Graph& g, const GossipDecomposition& d, int level) {
  const GossipLevel& lv = d.levels.at(level);
  const int L = d.L;
  RadioSchedule out;

  for (int cls = 0; cls < 3; ++cls) {
    // Per path: farthest own node towards each landmark, by side.
    struct Reach {
      int path;
      std::map<int, int> left_going;   // landmark position -> distance
      std::map<int, int> right_going;
    };
    std::vector<Reach> reach;
    int rounds = 0;
    for (int i = 0; i < static_cast<int>(lv.paths.size()); ++i) {
      const GossipPath& gp = lv.paths[i];
      if (gp.cls != cls) continue;
      const int len = static_cast<int>(gp.nodes.size());
      Reach r{i, {}, {}};
      for (int pos = 0; pos < len; ++pos) {
        if (lv.path_of[gp.nodes[pos]] != i) continue;
        const int t = landmark_position(pos, len, L);
        if (t == pos) continue;
        auto& side = pos > t ? r.left_going : r.right_going;
        side[t] = std::max(side[t], std::abs(pos - t));
      }
      for (auto [t, m] : r.left_going) rounds = std::max(rounds, m);
      for (auto [t, m] : r.right_going) rounds = std::max(rounds, m + 1);
      reach.push_back(std::move(r));
    }
    // Left-going chains move at distance R-r+1, right-going ones one step
    // behind, so a landmark never hears both sides at once.
    for (int r = 1; r <= rounds; ++r) {
      RadioRound round;
      std::vector<Reception> planned;
      const int dl = rounds - r + 1;
      const int dr = rounds - r;
      for (const Reach& re : reach) {
        const Path& p = lv.paths[re.path].nodes;
        for (auto [t, m] : re.left_going) {
          if (dl > m) continue;
          round.push_back(p[t + dl]);
          planned.push_back({p[t + dl - 1], p[t + dl]});
        }
        for (auto [t, m] : re.right_going) {
          if (dr < 1 || dr > m) continue;
          round.push_back(p[t - dr]);
          planned.push_back({p[t - dr + 1], p[t - dr]});
        }
      }
      emit(g, out, std::move(round), std::move(planned));
    }
  }
  return out;
}

LandmarkMatching find_landmark_matching(const Graph& g, const GossipDecomposition& d, int level) {
  ensure(level >= 1 && level < d.depth(), ErrorCode::InvalidInput, "matching needs an earlier level");
  const GossipLevel& lv = d.levels[level];
  const int n = g.node_count();
  const int L = d.L;
  const auto& landmarks = lv.landmarks;
  const int k = static_cast<int>(landmarks.size());

  std::vector<int> u_index(n, -1);
  std::vector<Node> us;
  for (Node v = 0; v < n; ++v) {
    if (d.level_of[v] >= 0 && d.level_of[v] < level) {
      u_index[v] = static_cast<int>(us.size());
      us.push_back(v);
    }
  }

  struct Option {
    int landmark;
    Node target;
    Path witness;
    int arc = -1;
  };
  std::vector<Option> options;
  std::vector<char> mask(n, 0);
  for (int i = 0; i < k; ++i) {
    const Node v = landmarks[i];
    const auto& comp = lv.components[lv.component_of[v]];
    std::fill(mask.begin(), mask.end(), 0);
    for (Node x : comp) mask[x] = 1;
    const auto dist = bfs_distances(g, v, mask);
    // Closest component node next to each target; smallest id on ties.
    std::map<Node, Node> via;
    for (Node x : comp) {
      if (dist[x] < 0 || dist[x] > L - 1) continue;
      for (Node u : g.neighbors(x)) {
        if (u_index[u] < 0) continue;
        auto it = via.find(u);
        if (it == via.end() || dist[x] < dist[it->second] ||
            (dist[x] == dist[it->second] && x < it->second))
          via[u] = x;
      }
    }
    for (auto [u, x] : via) {
      Path q = *shortest_path(g, v, x, mask);
      q.push_back(u);
      options.push_back({i, u, std::move(q)});
    }
  }

  const int source = k + static_cast<int>(us.size());
  const int sink = source + 1;
  MaxFlow flow(sink + 1);
  for (int i = 0; i < k; ++i) flow.add_arc(source, i, 1);
  for (Option& o : options) o.arc = flow.add_arc(o.landmark, k + u_index[o.target], 1);
  for (int j = 0; j < static_cast<int>(us.size()); ++j) flow.add_arc(k + j, sink, 3LL * L);
  const long long matched = flow.run(source, sink);
  if (matched < k)
    fail(ErrorCode::MatchingInfeasible, "matched " + std::to_string(matched) + " of " +
                                            std::to_string(k) + " landmarks at L=" +
                                            std::to_string(L));

  LandmarkMatching m;
  m.landmark = landmarks;
  m.target.assign(k, -1);
  m.witness.assign(k, {});
  for (const Option& o : options) {
    if (flow.flow(o.arc) <= 0) continue;
    m.target[o.landmark] = o.target;
    m.witness[o.landmark] = o.witness;
  }
  return m;
}

RadioSchedule move_to_prefix(const Graph& g, const GossipDecomposition& d, int level,
                             const LandmarkMatching& matching) {
  const GossipLevel& lv = d.levels.at(level);
  const int k = static_cast<int>(matching.landmark.size());
  RadioSchedule out;

  // Walk each witness up to the node before its target, one class at a time.
  for (int cls = 0; cls < 3; ++cls) {
    int hops = 0;
    std::vector<int> members;
    for (int i = 0; i < k; ++i) {
      if (lv.paths[lv.path_of[matching.landmark[i]]].cls != cls) continue;
      members.push_back(i);
      hops = std::max(hops, static_cast<int>(matching.witness[i].size()) - 2);
    }
    for (int r = 0; r < hops; ++r) {
      RadioRound round;
      std::vector<Reception> planned;
      for (int i : members) {
        const Path& q = matching.witness[i];
        if (r + 2 >= static_cast<int>(q.size())) continue;
        round.push_back(q[r]);
        planned.push_back({q[r + 1], q[r]});
      }
      emit(g, out, std::move(round), std::move(planned));
    }
  }

  // Hand over into every third node of one earlier path class at a time.
  using Key = std::tuple<int, int, int>;  // level, class, position mod 3
  std::map<Key, std::map<Node, std::vector<Node>>> groups;
  for (int i = 0; i < k; ++i) {
    const Path& q = matching.witness[i];
    const Node u = q.back();
    const Node w = q[q.size() - 2];
    const GossipLevel& tl = d.levels[d.level_of[u]];
    const Key key{d.level_of[u], tl.paths[tl.path_of[u]].cls, tl.position[u] % 3};
    auto& senders = groups[key][u];
    if (std::find(senders.begin(), senders.end(), w) == senders.end()) senders.push_back(w);
  }
  for (const auto& [key, targets] : groups) {
    std::size_t rounds = 0;
    for (const auto& [u, senders] : targets) rounds = std::max(rounds, senders.size());
    for (std::size_t r = 0; r < rounds; ++r) {
      RadioRound round;
      std::vector<Reception> planned;
      for (const auto& [u, senders] : targets) {
        if (r >= senders.size()) continue;
        round.push_back(senders[r]);
        planned.push_back({u, senders[r]});
      }
      emit(g, out, std::move(round), std::move(planned));
    }
  }
  return out;
}

RadioSchedule collect_at_root(const Graph& g, const GossipDecomposition& d) {
  const GossipLevel& lv = d.levels.at(0);
  const int D = spacing(d.L);
  RadioSchedule out;
  for (const GossipPath& gp : lv.paths) {
    const int len = static_cast<int>(gp.nodes.size());
    const int far = len == 0 ? 0 : ((len - 1) / D) * D;
    for (int pos = far; pos > 0; --pos)
      emit(g, out, {gp.nodes[pos]}, {{gp.nodes[pos - 1], gp.nodes[pos]}});
  }
  return out;
}

RadioSchedule layered_broadcast(const Graph& g, Node root) {
  const int n = g.node_count();
  const auto dist = bfs_distances(g, root);
  int depth = 0;
  for (int x : dist) depth = std::max(depth, x);
  std::vector<std::vector<Node>> layers(depth + 1);
  for (Node v = 0; v < n; ++v)
    if (dist[v] >= 0) layers[dist[v]].push_back(v);

  RadioSchedule out;
  std::vector<char> covered(n, 0);
  std::vector<char> claimed(n, 0);
  for (int l = 0; l < depth; ++l) {
    int open = static_cast<int>(layers[l + 1].size());
    while (open > 0) {
      RadioRound round;
      std::vector<Reception> planned;
      std::fill(claimed.begin(), claimed.end(), 0);
      for (Node x : layers[l]) {
        std::vector<Node> fresh;
        bool clash = false;
        for (Node y : g.neighbors(x)) {
          if (dist[y] != l + 1 || covered[y]) continue;
          if (claimed[y]) clash = true;
          fresh.push_back(y);
        }
        if (fresh.empty() || clash) continue;
        round.push_back(x);
        for (Node y : fresh) {
          claimed[y] = 1;
          planned.push_back({y, x});
        }
      }
      for (auto [y, x] : planned) covered[y] = 1;
      open -= static_cast<int>(planned.size());
      emit(g, out, std::move(round), std::move(planned));
    }
  }
  return out;
}

namespace {

RadioSchedule gather_all(const Graph& g, const GossipDecomposition& d) {
  RadioSchedule out;
  for (int level = d.depth() - 1; level >= 1; --level) {
    out.append(gather_on_paths(g, d, level));
    out.append(move_to_prefix(g, d, level, find_landmark_matching(g, d, level)));
  }
  out.append(gather_on_paths(g, d, 0));
  out.append(collect_at_root(g, d));
  return out;
}

}  // namespace

GossipResult radio_gossip(const Graph& g, std::uint64_t /*seed*/) {
  const int n = g.node_count();
  ensure(n >= 1, ErrorCode::InvalidInput, "empty graph");
  ensure(is_connected(g), ErrorCode::InvalidInput, "graph must be connected");
  ensure(is_planar(g), ErrorCode::NotPlanar, "gossip needs a planar graph");

  GossipResult result;
  if (n == 1) {
    result.depth = 1;
    return result;
  }
  const int diameter = eccentricity_and_diameter(g).diameter;
  std::vector<int> candidates;
  for (int L = std::max(3, diameter); L < 2 * n; L *= 2) candidates.push_back(L);
  candidates.push_back(2 * n);

  for (int L : candidates) {
    const GossipDecomposition d = decompose(g, L);
    RadioSchedule gather;
    try {
      gather = gather_all(g, d);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::MatchingInfeasible) throw;
      result.attempts.push_back({L, false, 0});
      continue;
    }
    RadioSchedule back = layered_broadcast(g, d.root);
    RadioSchedule full = gather;
    full.append(back);
    const bool ok = all_pairs_possession(simulate_radio(g, PossessionState::own_messages(n), full));
    result.attempts.push_back({L, ok, full.length()});
    if (!ok) continue;
    result.schedule = std::move(full);
    result.L = L;
    result.depth = d.depth();
    result.gather_rounds = gather.length();
    result.broadcast_rounds = back.length();
    return result;
  }
  fail(ErrorCode::Internal, "no candidate L produced a gossip schedule");
}

}  // namespace polycast
