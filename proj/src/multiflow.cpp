#include "polycast/multiflow.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <set>

#include "polycast/error.hpp"
#include "polycast/maxflow.hpp"

namespace polycast {

namespace {

std::vector<char> terminal_mask(int n, std::span<const Node> terminals) {
  std::vector<char> mask(n, 0);
  for (Node t : terminals) {
    ensure(t >= 0 && t < n, ErrorCode::InvalidInput, "terminal out of range");
    mask[t] = 1;
  }
  return mask;
}

// Removes repeated vertices from a walk by cutting out closed sub-walks.
Path shortcut(const Path& walk) {
  Path out;
  std::map<Node, std::size_t> at;
  for (Node v : walk) {
    auto it = at.find(v);
    if (it != at.end()) {
      for (std::size_t j = it->second + 1; j < out.size(); ++j) at.erase(out[j]);
      out.resize(it->second + 1);
      continue;
    }
    at[v] = out.size();
    out.push_back(v);
  }
  return out;
}

struct Bundle {
  Path walk;
  long long count = 0;
};

class SplittingState {
 public:
  SplittingState(const MultiGraph& g, std::span<const Node> terminals)
      : n_(g.node_count()), cap_(n_), terminals_(terminals.begin(), terminals.end()) {
    for (const auto& l : g.links()) {
      cap_[l.u][l.v] += l.multiplicity;
      cap_[l.v][l.u] += l.multiplicity;
      bundles_[edge_key(l.u, l.v)].push_back({{l.u, l.v}, l.multiplicity});
    }
  }

  long long degree(Node v) const {
    long long d = 0;
    for (const auto& [w, c] : cap_[v]) d += c;
    return d;
  }

  long long lambda(Node t, long long limit = MaxFlow::kInfinite) {
    ++checks;
    MaxFlow flow(n_ + 1);
    for (Node a = 0; a < n_; ++a)
      for (const auto& [b, c] : cap_[a])
        if (a < b && c > 0) flow.add_edge(a, b, c);
    for (Node s : terminals_)
      if (s != t) flow.add_arc(s, n_, MaxFlow::kInfinite);
    return flow.run(t, n_, limit);
  }

  bool preserves(const std::vector<long long>& required) {
    for (std::size_t i = 0; i < terminals_.size(); ++i)
      if (lambda(terminals_[i], required[i]) < required[i]) return false;
    return true;
  }

  void adjust(Node v, Node u, Node w, long long amount) {
    cap_[v][u] -= amount;
    cap_[u][v] -= amount;
    cap_[v][w] -= amount;
    cap_[w][v] -= amount;
    if (u != w) {
      cap_[u][w] += amount;
      cap_[w][u] += amount;
    }
  }

  void cleanup(Node v) {
    for (auto it = cap_[v].begin(); it != cap_[v].end();) {
      if (it->second == 0) {
        cap_[it->first].erase(v);
        it = cap_[v].erase(it);
      } else {
        ++it;
      }
    }
  }

  // Pops `amount` units of walks on link {from, to}, oriented from -> to.
  std::vector<Bundle> take(Node from, Node to, long long amount) {
    auto& queue = bundles_[edge_key(from, to)];
    std::vector<Bundle> out;
    while (amount > 0) {
      ensure(!queue.empty(), ErrorCode::Internal, "bundle bookkeeping out of sync");
      Bundle& front = queue.front();
      const long long used = std::min(amount, front.count);
      Bundle piece{front.walk, used};
      if (piece.walk.front() != from) std::reverse(piece.walk.begin(), piece.walk.end());
      out.push_back(std::move(piece));
      front.count -= used;
      amount -= used;
      if (front.count == 0) queue.pop_front();
    }
    return out;
  }

  void split_walks(Node v, Node u, Node w, long long amount) {
    if (u == w) {
      take(u, v, 2 * amount);
      return;
    }
    auto left = take(u, v, amount);   // u ... v
    auto right = take(v, w, amount);  // v ... w
    auto& target = bundles_[edge_key(u, w)];
    std::size_t i = 0, j = 0;
    while (i < left.size() && j < right.size()) {
      const long long c = std::min(left[i].count, right[j].count);
      Path walk = left[i].walk;
      walk.insert(walk.end(), right[j].walk.begin() + 1, right[j].walk.end());
      target.push_back({std::move(walk), c});
      left[i].count -= c;
      right[j].count -= c;
      if (left[i].count == 0) ++i;
      if (right[j].count == 0) ++j;
    }
  }

  std::map<Node, long long>& neighbors(Node v) { return cap_[v]; }

  std::vector<Bundle> remaining_bundles() const {
    std::vector<Bundle> out;
    for (const auto& [key, queue] : bundles_)
      for (const auto& b : queue)
        if (b.count > 0) out.push_back(b);
    return out;
  }

  long long checks = 0;

 private:
  int n_;
  std::vector<std::map<Node, long long>> cap_;
  std::vector<Node> terminals_;
  std::map<std::uint64_t, std::deque<Bundle>> bundles_;
};

// Maximum packing by exhaustive search over simple T-paths; only for tiny
// multigraphs.
std::vector<TPath> exhaustive_packing(const MultiGraph& g, std::span<const Node> terminals,
                                      long long target) {
  const int n = g.node_count();
  const auto is_terminal = terminal_mask(n, terminals);
  const Graph support = g.support();
  std::vector<long long> mult(support.edge_count());
  for (int e = 0; e < support.edge_count(); ++e)
    mult[e] = g.multiplicity(support.edge(e).u, support.edge(e).v);

  std::vector<std::pair<Path, std::vector<int>>> candidates;
  Path walk;
  std::vector<int> used_edges;
  std::vector<char> on_walk(n, 0);
  std::function<void(Node)> dfs = [&](Node v) {
    for (Node w : support.neighbors(v)) {
      if (on_walk[w]) continue;
      const int e = *support.edge_index(v, w);
      walk.push_back(w);
      used_edges.push_back(e);
      if (is_terminal[w]) {
        if (walk.front() < w) candidates.emplace_back(walk, used_edges);
      } else {
        on_walk[w] = 1;
        dfs(w);
        on_walk[w] = 0;
      }
      walk.pop_back();
      used_edges.pop_back();
    }
  };
  for (Node t : terminals) {
    walk.assign(1, t);
    on_walk[t] = 1;
    dfs(t);
    on_walk[t] = 0;
  }

  std::vector<long long> left = mult;
  std::vector<long long> chosen(candidates.size(), 0), best_choice;
  long long best = -1, current = 0;
  std::function<void(std::size_t)> search = [&](std::size_t from) {
    if (current > best) {
      best = current;
      best_choice = chosen;
    }
    if (best >= target) return;
    for (std::size_t i = from; i < candidates.size(); ++i) {
      const auto& edges = candidates[i].second;
      if (!std::all_of(edges.begin(), edges.end(), [&](int e) { return left[e] > 0; })) continue;
      for (int e : edges) --left[e];
      ++chosen[i];
      ++current;
      search(i);
      --current;
      --chosen[i];
      for (int e : edges) ++left[e];
      if (best >= target) return;
    }
  };
  search(0);
  std::vector<TPath> out;
  for (std::size_t i = 0; i < candidates.size(); ++i)
    if (best_choice[i] > 0) out.push_back({candidates[i].first, best_choice[i]});
  return out;
}

void normalize(TPathPacking& packing) {
  std::map<Path, long long> merged;
  for (auto& tp : packing.paths) {
    if (tp.path.front() > tp.path.back()) std::reverse(tp.path.begin(), tp.path.end());
    merged[tp.path] += tp.count;
  }
  packing.paths.clear();
  packing.value = 0;
  for (auto& [path, count] : merged) {
    packing.value += count;
    packing.paths.push_back({path, count});
  }
}

}  // namespace

long long terminal_cut(const MultiGraph& g, std::span<const Node> terminals, Node t) {
  const int n = g.node_count();
  const auto mask = terminal_mask(n, terminals);
  ensure(mask[t] != 0, ErrorCode::InvalidInput, "t must be a terminal");
  ensure(terminals.size() >= 2, ErrorCode::InvalidInput, "need at least two terminals");
  MaxFlow flow(n + 1);
  for (const auto& l : g.links()) flow.add_edge(l.u, l.v, l.multiplicity);
  for (Node s : terminals)
    if (s != t) flow.add_arc(s, n, MaxFlow::kInfinite);
  return flow.run(t, n);
}

TPathPacking pack_tpaths(const MultiGraph& g, std::span<const Node> terminals_in) {
  const int n = g.node_count();
  std::vector<Node> terminals(terminals_in.begin(), terminals_in.end());
  std::sort(terminals.begin(), terminals.end());
  terminals.erase(std::unique(terminals.begin(), terminals.end()), terminals.end());
  const auto is_terminal = terminal_mask(n, terminals);
  for (Node v = 0; v < n; ++v)
    ensure(is_terminal[v] || g.degree(v) % 2 == 0, ErrorCode::EvennessViolated,
           "non-terminal " + std::to_string(v) + " has odd degree");

  TPathPacking packing;
  if (terminals.size() < 2) return packing;

  SplittingState state(g, terminals);
  std::vector<long long> required(terminals.size());
  for (std::size_t i = 0; i < terminals.size(); ++i) {
    required[i] = state.lambda(terminals[i]);
    packing.lambda_sum += required[i];
  }

  bool stuck = false;
  for (Node v = 0; v < n && !stuck; ++v) {
    if (is_terminal[v]) continue;
    while (state.degree(v) > 0) {
      std::vector<std::pair<Node, long long>> nbrs(state.neighbors(v).begin(),
                                                   state.neighbors(v).end());
      bool progressed = false;
      // Distinct neighbor pairs first; a loop split discards capacity.
      for (int pass = 0; pass < 2 && !progressed; ++pass) {
        for (std::size_t a = 0; a < nbrs.size() && !progressed; ++a) {
          for (std::size_t b = pass == 0 ? a + 1 : a; b < (pass == 0 ? nbrs.size() : a + 1);
               ++b) {
            const Node u = nbrs[a].first, w = nbrs[b].first;
            const long long most =
                u == w ? nbrs[a].second / 2 : std::min(nbrs[a].second, nbrs[b].second);
            if (most < 1) continue;
            auto admissible = [&](long long amount) {
              state.adjust(v, u, w, amount);
              const bool ok = state.preserves(required);
              state.adjust(v, u, w, -amount);
              return ok;
            };
            long long amount = 0;
            if (admissible(most)) {
              amount = most;
            } else if (most > 1 && admissible(1)) {
              long long lo = 1, hi = most;  // lo admissible, hi not
              while (hi - lo > 1) {
                const long long mid = lo + (hi - lo) / 2;
                (admissible(mid) ? lo : hi) = mid;
              }
              amount = lo;
            }
            if (amount == 0) continue;
            state.adjust(v, u, w, amount);
            state.split_walks(v, u, w, amount);
            state.cleanup(v);
            if (u != w) state.cleanup(u);
            progressed = true;
            break;
          }
        }
      }
      if (!progressed) {
        stuck = true;
        break;
      }
    }
  }
  packing.flow_checks = state.checks;

  if (!stuck) {
    for (auto& bundle : state.remaining_bundles()) {
      Path path = shortcut(bundle.walk);
      if (path.size() < 2 || path.front() == path.back()) continue;
      packing.paths.push_back({std::move(path), bundle.count});
    }
    normalize(packing);
  }
  if (stuck || 2 * packing.value < packing.lambda_sum) {
    ensure(g.total_edges() <= 20, ErrorCode::PackingShortfall,
           "splitting-off reached value " + std::to_string(packing.value) + " < " +
               std::to_string(packing.lambda_sum) + "/2");
    packing.paths = exhaustive_packing(g, terminals, packing.lambda_sum / 2);
    packing.used_fallback = true;
    normalize(packing);
    ensure(2 * packing.value >= packing.lambda_sum, ErrorCode::PackingShortfall,
           "exhaustive packing below the multiflow bound");
  }
  return packing;
}

void verify_packing(const MultiGraph& g, std::span<const Node> terminals,
                    const TPathPacking& packing) {
  const auto is_terminal = terminal_mask(g.node_count(), terminals);
  std::map<std::uint64_t, long long> used;
  long long value = 0;
  for (const auto& tp : packing.paths) {
    ensure(tp.path.size() >= 2 && tp.count > 0, ErrorCode::Internal, "degenerate T-path");
    ensure(is_terminal[tp.path.front()] && is_terminal[tp.path.back()] &&
               tp.path.front() != tp.path.back(),
           ErrorCode::Internal, "T-path endpoints are not distinct terminals");
    std::set<Node> seen(tp.path.begin(), tp.path.end());
    ensure(seen.size() == tp.path.size(), ErrorCode::Internal, "T-path repeats a node");
    for (std::size_t i = 1; i + 1 < tp.path.size(); ++i)
      ensure(!is_terminal[tp.path[i]], ErrorCode::Internal, "T-path has an inner terminal");
    for (std::size_t i = 1; i < tp.path.size(); ++i)
      used[edge_key(tp.path[i - 1], tp.path[i])] += tp.count;
    value += tp.count;
  }
  for (const auto& [key, count] : used) {
    const Node a = static_cast<Node>(key >> 32), b = static_cast<Node>(key & 0xffffffffu);
    ensure(count <= g.multiplicity(a, b), ErrorCode::Internal,
           "link " + std::to_string(a) + "-" + std::to_string(b) + " overused");
  }
  ensure(value == packing.value, ErrorCode::Internal, "packing value mismatch");
}

FunctionalDigraph break_cycles_to_in_forest(const FunctionalDigraph& h) {
  const int n = static_cast<int>(h.size());
  for (Node v = 0; v < n; ++v)
    ensure(h[v] >= -1 && h[v] < n && h[v] != v, ErrorCode::InvalidInput,
           "not a loop-free functional digraph");
  FunctionalDigraph kept = h;
  // 0 = unvisited, 1 = on current walk, 2 = finished.
  std::vector<char> state(n, 0);
  for (Node start = 0; start < n; ++start) {
    if (state[start]) continue;
    std::vector<Node> walk;
    Node v = start;
    while (v >= 0 && state[v] == 0) {
      state[v] = 1;
      walk.push_back(v);
      v = kept[v];
    }
    if (v >= 0 && state[v] == 1) {
      Node smallest = v;
      for (Node c = kept[v]; c != v; c = kept[c]) smallest = std::min(smallest, c);
      kept[smallest] = -1;
    }
    for (Node w : walk) state[w] = 2;
  }
  return kept;
}

int InForestStars::arc_count() const {
  return static_cast<int>(std::count_if(kept.begin(), kept.end(), [](Node h) { return h >= 0; }));
}

InForestStars extract_stars(const FunctionalDigraph& forest) {
  const int n = static_cast<int>(forest.size());
  std::vector<int> depth(n, -1);
  std::vector<Node> root(n, -1);
  std::function<void(Node)> resolve = [&](Node v) {
    if (depth[v] >= 0) return;
    if (forest[v] < 0) {
      depth[v] = 0;
      root[v] = v;
      return;
    }
    resolve(forest[v]);
    depth[v] = depth[forest[v]] + 1;
    root[v] = root[forest[v]];
  };
  for (Node v = 0; v < n; ++v) {
    ensure(forest[v] >= -1 && forest[v] < n, ErrorCode::InvalidInput, "bad forest arc");
    resolve(v);
  }
  std::vector<int> odd(n, 0), even(n, 0);
  for (Node v = 0; v < n; ++v) {
    if (forest[v] < 0) continue;
    (depth[v] % 2 == 1 ? odd : even)[root[v]]++;
  }
  InForestStars out;
  out.kept.assign(n, -1);
  std::map<Node, std::vector<Node>> by_head;
  for (Node v = 0; v < n; ++v) {
    if (forest[v] < 0) continue;
    const bool keep_even = even[root[v]] >= odd[root[v]];
    if ((depth[v] % 2 == 0) == keep_even) {
      out.kept[v] = forest[v];
      by_head[forest[v]].push_back(v);
    }
  }
  for (auto& [center, leaves] : by_head) out.stars.push_back({center, std::move(leaves)});
  return out;
}

}  // namespace polycast
