#include "polycast/tree_schedule.hpp"

#include <algorithm>

#include "polycast/error.hpp"

namespace polycast {

RootedTree root_tree(int node_count, std::span<const Edge> edges, Node root) {
  ensure(root >= 0 && root < node_count, ErrorCode::InvalidInput, "root out of range");
  std::vector<std::vector<Node>> adj(node_count);
  for (const Edge& e : edges) {
    ensure(e.u >= 0 && e.v >= 0 && e.u < node_count && e.v < node_count && e.u != e.v,
           ErrorCode::NotATree, "bad tree edge");
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  RootedTree t;
  t.root = root;
  t.parent.assign(node_count, -1);
  t.children.assign(node_count, {});
  t.in_tree.assign(node_count, 0);
  std::vector<Node> stack{root};
  t.in_tree[root] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const Node v = stack.back();
    stack.pop_back();
    for (Node w : adj[v]) {
      if (w == t.parent[v]) continue;
      ensure(!t.in_tree[w], ErrorCode::NotATree, "edge set has a cycle");
      t.in_tree[w] = 1;
      t.parent[w] = v;
      t.children[v].push_back(w);
      stack.push_back(w);
      ++reached;
    }
  }
  ensure(reached == edges.size() + 1, ErrorCode::NotATree, "edge set is not connected");
  for (auto& c : t.children) std::sort(c.begin(), c.end());
  return t;
}

namespace {

std::vector<Node> preorder(const RootedTree& t) {
  std::vector<Node> order{t.root};
  for (std::size_t i = 0; i < order.size(); ++i)
    for (Node c : t.children[order[i]]) order.push_back(c);
  return order;
}

// Children in calling order: decreasing completion time, then id.
std::vector<Node> call_order(const RootedTree& t, const std::vector<int>& time, Node v) {
  std::vector<Node> kids = t.children[v];
  std::stable_sort(kids.begin(), kids.end(), [&](Node a, Node b) { return time[a] > time[b]; });
  return kids;
}

}  // namespace

std::vector<int> broadcast_times(const RootedTree& t) {
  std::vector<int> time(t.parent.size(), 0);
  const auto order = preorder(t);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const auto kids = call_order(t, time, *it);
    int best = 0;
    for (std::size_t i = 0; i < kids.size(); ++i)
      best = std::max(best, static_cast<int>(i) + 1 + time[kids[i]]);
    time[*it] = best;
  }
  return time;
}

TelephoneSchedule tree_broadcast_schedule(const RootedTree& t) {
  const auto time = broadcast_times(t);
  TelephoneSchedule s;
  s.rounds.resize(time[t.root]);
  std::vector<int> informed_at(t.parent.size(), 0);
  for (Node v : preorder(t)) {
    const auto kids = call_order(t, time, v);
    for (std::size_t i = 0; i < kids.size(); ++i) {
      const int round = informed_at[v] + static_cast<int>(i);
      s.rounds[round].push_back(make_edge(v, kids[i]));
      informed_at[kids[i]] = round + 1;
    }
  }
  for (auto& r : s.rounds) std::sort(r.begin(), r.end());
  return s;
}

TelephoneSchedule tree_broadcast_schedule(int node_count, std::span<const Edge> edges, Node root) {
  return tree_broadcast_schedule(root_tree(node_count, edges, root));
}

TelephoneSchedule tree_gather_schedule(const RootedTree& t) {
  return tree_broadcast_schedule(t).reversed();
}

TelephoneSchedule tree_gather_schedule(int node_count, std::span<const Edge> edges, Node root) {
  return tree_gather_schedule(root_tree(node_count, edges, root));
}

TelephoneSchedule path_shuttle_schedule(std::span<const Node> path, int rounds) {
  TelephoneRound even, odd;
  for (std::size_t i = 0; i + 1 < path.size(); ++i)
    (i % 2 == 0 ? even : odd).push_back(make_edge(path[i], path[i + 1]));
  std::sort(even.begin(), even.end());
  std::sort(odd.begin(), odd.end());
  if (odd.empty()) odd = even;
  TelephoneSchedule s;
  for (int r = 0; r < rounds; ++r) s.rounds.push_back(r % 2 == 0 ? even : odd);
  return s;
}

}  // namespace polycast
