#include "polycast/oracle.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <unordered_map>

#include "polycast/error.hpp"

namespace polycast {

namespace {

using State = std::vector<std::uint32_t>;  // per node: bitmask over message index

struct StateHash {
  std::size_t operator()(const State& s) const {
    std::size_t h = 1469598103934665603ull;
    for (std::uint32_t x : s) h = (h ^ x) * 1099511628211ull;
    return h;
  }
};

bool dominates(const State& a, const State& b) {
  for (std::size_t v = 0; v < a.size(); ++v)
    if ((b[v] & ~a[v]) != 0) return false;
  return true;
}

struct Goal {
  std::vector<Node> sources;
  State initial;
  State required;  // required[v]: messages v must end up with

  bool met(const State& s) const {
    for (std::size_t v = 0; v < s.size(); ++v)
      if ((required[v] & ~s[v]) != 0) return false;
    return true;
  }
};

Goal make_goal(const Graph& g, const DemandSet& demands) {
  demands.validate(g);
  Goal goal;
  for (const auto& p : demands.distinct())
    if (std::find(goal.sources.begin(), goal.sources.end(), p.source) == goal.sources.end())
      goal.sources.push_back(p.source);
  std::sort(goal.sources.begin(), goal.sources.end());
  ensure(goal.sources.size() <= 32, ErrorCode::Exceeded, "too many sources for the oracle");
  goal.initial.assign(g.node_count(), 0);
  goal.required.assign(g.node_count(), 0);
  auto bit = [&](Node s) {
    const auto it = std::lower_bound(goal.sources.begin(), goal.sources.end(), s);
    return std::uint32_t{1} << (it - goal.sources.begin());
  };
  for (Node s : goal.sources) goal.initial[s] |= bit(s);
  for (const auto& p : demands.pairs()) goal.required[p.sink] |= bit(p.source);
  return goal;
}

// Breadth-first search shared by both models. expand(state, emit) calls
// emit(next_state, move_index) for every move; moves are recorded by index.
template <typename Move>
struct Search {
  struct Entry {
    State state;
    int parent;
    Move move;
  };
  std::vector<Entry> entries;

  template <typename Expand>
  int run(const Goal& goal, int max_rounds, Expand expand, int& length) {
    entries.push_back({goal.initial, -1, Move{}});
    if (goal.met(goal.initial)) {
      length = 0;
      return 0;
    }
    std::vector<int> frontier{0};
    std::unordered_map<State, int, StateHash> seen;
    seen.emplace(goal.initial, 0);
    for (int round = 1; round <= max_rounds; ++round) {
      std::vector<int> next;
      for (int id : frontier) {
        const State current = entries[id].state;
        bool done = false;
        expand(current, [&](State s, const Move& move) {
          if (done || seen.count(s)) return;
          for (int other : next)
            if (dominates(entries[other].state, s)) return;
          std::erase_if(next, [&](int other) { return dominates(s, entries[other].state); });
          const int nid = static_cast<int>(entries.size());
          seen.emplace(s, nid);
          entries.push_back({std::move(s), id, move});
          next.push_back(nid);
          if (goal.met(entries[nid].state)) done = true;
        });
        if (done) {
          length = round;
          return entries.back().parent >= 0 ? static_cast<int>(entries.size()) - 1 : 0;
        }
      }
      if (next.empty()) break;
      frontier = std::move(next);
    }
    fail(ErrorCode::Exceeded, "no schedule within " + std::to_string(max_rounds) + " rounds");
  }

  std::vector<Move> trace(int id) const {
    std::vector<Move> moves;
    for (; entries[id].parent >= 0; id = entries[id].parent) moves.push_back(entries[id].move);
    std::reverse(moves.begin(), moves.end());
    return moves;
  }
};

}  // namespace

TelephoneOracleResult brute_force_telephone(const Graph& g, const DemandSet& demands,
                                            int max_rounds) {
  ensure(g.node_count() <= 16, ErrorCode::Exceeded, "telephone oracle limited to 16 nodes");
  const Goal goal = make_goal(g, demands);
  const auto& edges = g.edges();
  Search<TelephoneRound> search;

  auto expand = [&](const State& s, const auto& emit) {
    std::vector<int> useful;
    for (int e = 0; e < static_cast<int>(edges.size()); ++e)
      if (s[edges[e].u] != s[edges[e].v]) useful.push_back(e);
    std::vector<char> busy(g.node_count(), 0);
    std::vector<int> picked;
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
      if (i == useful.size()) {
        for (int e : useful)
          if (!busy[edges[e].u] && !busy[edges[e].v]) return;  // not maximal
        if (picked.empty()) return;
        State next = s;
        TelephoneRound round;
        for (int e : picked) {
          const auto merged = s[edges[e].u] | s[edges[e].v];
          next[edges[e].u] = next[edges[e].v] = merged;
          round.push_back(edges[e]);
        }
        emit(std::move(next), round);
        return;
      }
      const Edge& e = edges[useful[i]];
      if (!busy[e.u] && !busy[e.v]) {
        busy[e.u] = busy[e.v] = 1;
        picked.push_back(useful[i]);
        rec(i + 1);
        picked.pop_back();
        busy[e.u] = busy[e.v] = 0;
      }
      rec(i + 1);
    };
    rec(0);
  };

  TelephoneOracleResult result;
  const int last = search.run(goal, max_rounds, expand, result.length);
  result.witness.rounds = search.trace(last);
  result.states = static_cast<long long>(search.entries.size());
  return result;
}

RadioOracleResult brute_force_radio(const Graph& g, const DemandSet& demands, int max_rounds,
                                    RadioSemantics semantics) {
  const int n = g.node_count();
  ensure(n <= 7, ErrorCode::Exceeded, "radio oracle limited to 7 nodes");
  const Goal goal = make_goal(g, demands);
  Search<RadioRound> search;

  auto expand = [&](const State& s, const auto& emit) {
    std::vector<Node> useful;
    for (Node v = 0; v < n; ++v)
      for (Node w : g.neighbors(v))
        if ((s[v] & ~s[w]) != 0) {
          useful.push_back(v);
          break;
        }
    const unsigned limit = 1u << useful.size();
    std::vector<char> transmitting(n);
    for (unsigned mask = 1; mask < limit; ++mask) {
      std::fill(transmitting.begin(), transmitting.end(), 0);
      RadioRound round;
      for (std::size_t i = 0; i < useful.size(); ++i)
        if (mask >> i & 1u) {
          transmitting[useful[i]] = 1;
          round.push_back(useful[i]);
        }
      State next = s;
      bool changed = false;
      for (Node v = 0; v < n; ++v) {
        if (transmitting[v] && !semantics.receive_while_transmitting) continue;
        Node sender = -1;
        int count = 0;
        for (Node w : g.neighbors(v))
          if (transmitting[w]) {
            sender = w;
            ++count;
          }
        if (count == 1 && (s[sender] & ~s[v]) != 0) {
          next[v] |= s[sender];
          changed = true;
        }
      }
      if (changed) emit(std::move(next), round);
    }
  };

  RadioOracleResult result;
  const int last = search.run(goal, max_rounds, expand, result.length);
  result.witness.rounds = search.trace(last);
  result.states = static_cast<long long>(search.entries.size());
  return result;
}

PoiseOptimum exhaustive_min_poise(const Graph& g, Node root, std::span<const Node> terminals) {
  const int n = g.node_count();
  const int m = g.edge_count();
  ensure(m <= 24, ErrorCode::Exceeded, "exhaustive poise limited to 24 edges");
  std::vector<char> required(n, 0);
  required[root] = 1;
  for (Node t : terminals) required[t] = 1;

  PoiseOptimum best;
  best.poise = std::numeric_limits<int>::max();
  std::vector<int> uf(n);
  std::vector<int> degree(n, 0);
  std::vector<Edge> chosen;

  std::function<int(int)> find = [&](int x) { return uf[x] == x ? x : find(uf[x]); };

  auto evaluate = [&]() {
    // Keep the root's component, then strip non-required leaves.
    std::vector<std::vector<Node>> adj(n);
    for (const Edge& e : chosen)
      if (find(e.u) == find(root)) {
        adj[e.u].push_back(e.v);
        adj[e.v].push_back(e.u);
      }
    for (Node v = 0; v < n; ++v)
      if (required[v] && find(v) != find(root)) return;
    std::vector<int> deg(n);
    std::vector<char> alive(n, 0);
    std::vector<Node> leaves;
    for (Node v = 0; v < n; ++v) {
      deg[v] = static_cast<int>(adj[v].size());
      alive[v] = find(v) == find(root);
      if (alive[v] && deg[v] <= 1 && !required[v]) leaves.push_back(v);
    }
    while (!leaves.empty()) {
      const Node v = leaves.back();
      leaves.pop_back();
      if (!alive[v]) continue;
      alive[v] = 0;
      for (Node w : adj[v])
        if (alive[w] && --deg[w] <= 1 && !required[w]) leaves.push_back(w);
    }
    std::vector<Edge> tree;
    int max_degree = 0;
    for (const Edge& e : chosen)
      if (alive[e.u] && alive[e.v] && find(e.u) == find(root)) tree.push_back(e);
    for (Node v = 0; v < n; ++v)
      if (alive[v]) max_degree = std::max(max_degree, deg[v]);
    // Diameter by BFS from every alive node.
    int diameter = 0;
    std::vector<int> dist(n);
    for (Node s = 0; s < n; ++s) {
      if (!alive[s]) continue;
      std::fill(dist.begin(), dist.end(), -1);
      std::vector<Node> queue{s};
      dist[s] = 0;
      for (std::size_t i = 0; i < queue.size(); ++i)
        for (Node w : adj[queue[i]])
          if (alive[w] && dist[w] < 0) {
            dist[w] = dist[queue[i]] + 1;
            diameter = std::max(diameter, dist[w]);
            queue.push_back(w);
          }
    }
    const int poise = diameter + max_degree;
    if (poise < best.poise) {
      best.poise = poise;
      best.edges = tree;
      std::sort(best.edges.begin(), best.edges.end());
    }
  };

  std::function<void(int)> rec = [&](int e) {
    if (e == m) {
      evaluate();
      return;
    }
    const Edge& edge = g.edge(e);
    const int a = find(edge.u), b = find(edge.v);
    if (a != b && std::max(degree[edge.u], degree[edge.v]) + 1 < best.poise) {
      const std::vector<int> saved = uf;
      uf[a] = b;
      ++degree[edge.u];
      ++degree[edge.v];
      chosen.push_back(edge);
      rec(e + 1);
      chosen.pop_back();
      --degree[edge.u];
      --degree[edge.v];
      uf = saved;
    }
    rec(e + 1);
  };
  for (int i = 0; i < n; ++i) uf[i] = i;
  rec(0);
  ensure(best.poise != std::numeric_limits<int>::max(), ErrorCode::InfeasiblePair,
         "terminals are not connected to the root");
  return best;
}

}  // namespace polycast
