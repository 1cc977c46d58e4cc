#include "polycast/maxflow.hpp"

#include <algorithm>
#include <deque>

namespace polycast {

MaxFlow::MaxFlow(int node_count) : out_(node_count), level_(node_count), next_(node_count) {}

int MaxFlow::add_arc(int from, int to, long long capacity) {
  const int id = static_cast<int>(arcs_.size());
  arcs_.push_back({to, capacity, capacity});
  arcs_.push_back({from, 0, 0});
  out_[from].push_back(id);
  out_[to].push_back(id + 1);
  return id;
}

int MaxFlow::add_edge(int a, int b, long long capacity) {
  const int id = static_cast<int>(arcs_.size());
  arcs_.push_back({b, capacity, capacity});
  arcs_.push_back({a, capacity, capacity});
  out_[a].push_back(id);
  out_[b].push_back(id + 1);
  return id;
}

bool MaxFlow::build_levels(int s, int t) {
  std::fill(level_.begin(), level_.end(), -1);
  std::deque<int> queue{s};
  level_[s] = 0;
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    for (int id : out_[v]) {
      const Arc& a = arcs_[id];
      if (a.capacity > 0 && level_[a.to] < 0) {
        level_[a.to] = level_[v] + 1;
        queue.push_back(a.to);
      }
    }
  }
  return level_[t] >= 0;
}

long long MaxFlow::augment(int v, int t, long long pushed) {
  if (v == t) return pushed;
  for (auto& i = next_[v]; i < out_[v].size(); ++i) {
    const int id = out_[v][i];
    Arc& a = arcs_[id];
    if (a.capacity <= 0 || level_[a.to] != level_[v] + 1) continue;
    const long long got = augment(a.to, t, std::min(pushed, a.capacity));
    if (got > 0) {
      a.capacity -= got;
      arcs_[id ^ 1].capacity += got;
      return got;
    }
  }
  return 0;
}

long long MaxFlow::run(int s, int t, long long limit) {
  if (s == t) return 0;
  long long total = 0;
  while (total < limit && build_levels(s, t)) {
    std::fill(next_.begin(), next_.end(), 0);
    while (total < limit) {
      const long long got = augment(s, t, limit - total);
      if (got == 0) break;
      total += got;
    }
  }
  return total;
}

}  // namespace polycast
