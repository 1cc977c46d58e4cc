#include "polycast/rounding.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <queue>
#include <random>

#include "polycast/error.hpp"

namespace polycast {

namespace {

// Index of the rooted pair whose non-root end is t.
int pair_of(const PoiseFractional& frac, Node t) {
  for (std::size_t i = 0; i < frac.pairs.size(); ++i)
    if (frac.pairs[i].sink == t) return static_cast<int>(i);
  for (std::size_t i = 0; i < frac.pairs.size(); ++i)
    if (frac.pairs[i].source == t) return static_cast<int>(i);
  fail(ErrorCode::InvalidInput, "no fractional pair for terminal " + std::to_string(t));
}

int ceil_div(int a, int b) { return (a + b - 1) / b; }

}  // namespace

std::vector<long long> grid_multiplicities(std::span<const WeightedPath> paths, long long grid) {
  ensure(grid >= 1, ErrorCode::BadParams, "grid must be positive");
  std::vector<long long> count(paths.size());
  std::vector<double> rest(paths.size());
  long long total = 0;
  for (std::size_t i = 0; i < paths.size(); ++i) {
    const double scaled = paths[i].weight * static_cast<double>(grid);
    count[i] = static_cast<long long>(std::floor(scaled + 1e-9));
    rest[i] = scaled - static_cast<double>(count[i]);
    total += count[i];
  }
  std::vector<std::size_t> order(paths.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return rest[a] > rest[b]; });
  for (std::size_t j = 0; total < grid && !order.empty(); j = (j + 1) % order.size()) {
    ++count[order[j]];
    ++total;
  }
  for (std::size_t j = order.size(); total > grid && j-- > 0;) {
    const long long take = std::min(count[order[j]], total - grid);
    count[order[j]] -= take;
    total -= take;
  }
  return count;
}

MultiGraph scale_to_multigraph(const PoiseFractional& frac, std::span<const Node> centers,
                               long long grid) {
  int n = 0;
  for (const auto& p : frac.pairs) n = std::max({n, p.source + 1, p.sink + 1});
  for (const auto& list : frac.paths)
    for (const auto& wp : list)
      for (Node v : wp.path) n = std::max(n, v + 1);
  MultiGraph multi(n);
  for (Node c : centers) {
    const auto& paths = frac.paths[pair_of(frac, c)];
    const auto count = grid_multiplicities(paths, grid);
    long long kept = 0;
    for (std::size_t i = 0; i < paths.size(); ++i) {
      if (count[i] == 0) continue;
      kept += count[i];
      const Path& p = paths[i].path;
      for (std::size_t j = 1; j < p.size(); ++j) multi.add(p[j - 1], p[j], 2 * count[i]);
    }
    ensure(kept == grid, ErrorCode::GridTooCoarse,
           "center " + std::to_string(c) + " keeps " + std::to_string(kept) + " of " +
               std::to_string(grid) + " paths");
  }
  return multi;
}

CongestionRounding congestion_round_paths(
    const std::vector<std::vector<CandidatePath>>& candidates, int node_count, double bound,
    std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  CongestionRounding best;
  best.congestion = -1;
  std::vector<int> chosen(candidates.size());
  std::vector<int> load(node_count);
  for (int sample = 1; sample <= 64; ++sample) {
    std::fill(load.begin(), load.end(), 0);
    int congestion = 0;
    for (std::size_t t = 0; t < candidates.size(); ++t) {
      long long total = 0;
      for (const auto& c : candidates[t]) total += c.count;
      chosen[t] = -1;
      if (total <= 0) continue;
      long long pick = static_cast<long long>(rng() % static_cast<std::uint64_t>(total));
      for (std::size_t i = 0; i < candidates[t].size(); ++i) {
        pick -= candidates[t][i].count;
        if (pick < 0) {
          chosen[t] = static_cast<int>(i);
          break;
        }
      }
      if (candidates[t][chosen[t]].path.empty()) {
        chosen[t] = -1;
        continue;
      }
      for (Node v : candidates[t][chosen[t]].path) congestion = std::max(congestion, ++load[v]);
    }
    best.samples = sample;
    if (best.congestion < 0 || congestion < best.congestion) {
      best.chosen = chosen;
      best.congestion = congestion;
    }
    if (congestion <= bound + 1e-9) break;
  }
  best.within_bound = best.congestion <= bound + 1e-9;
  return best;
}

std::vector<Path> merge_centers(const Graph& g, const PoiseFractional& frac, Node root,
                                std::span<const Node> centers, double L, std::uint64_t seed,
                                long long grid, MergeStats* stats) {
  std::vector<Node> sorted(centers.begin(), centers.end());
  std::sort(sorted.begin(), sorted.end());
  ensure(sorted.size() >= 2, ErrorCode::BadParams, "merge_centers needs two centers");
  ensure(std::find(sorted.begin(), sorted.end(), root) == sorted.end(), ErrorCode::BadParams,
         "root cannot be a center");
  const int k = static_cast<int>(sorted.size());
  std::map<Node, int> index;
  for (int i = 0; i < k; ++i) index[sorted[i]] = i;

  const MultiGraph multi = scale_to_multigraph(frac, sorted, grid);
  const TPathPacking packing = pack_tpaths(multi, sorted);

  const double limit = 4.0 * L + 1e-9;
  std::vector<std::vector<CandidatePath>> candidates(k);
  for (int i = 0; i < k; ++i) candidates[i].push_back({{}, 0});
  MergeStats local;
  local.packed = packing.value;
  for (const auto& tp : packing.paths) {
    const bool too_long = static_cast<double>(tp.path.size() - 1) > limit;
    if (too_long) local.pruned += tp.count;
    for (int side = 0; side < 2; ++side) {
      const Node end = side == 0 ? tp.path.front() : tp.path.back();
      const int i = index.at(end);
      if (too_long) {
        candidates[i][0].count += tp.count;
        continue;
      }
      Path oriented = tp.path;
      if (side == 1) std::reverse(oriented.begin(), oriented.end());
      candidates[i].push_back({std::move(oriented), tp.count});
    }
  }

  std::mt19937_64 seeds(seed);
  const int want = ceil_div(k, 4);
  const int floor_count = std::max(1, ceil_div(k, 8));
  std::vector<Path> best;
  for (int attempt = 1; attempt <= 64; ++attempt) {
    const auto rounding = congestion_round_paths(candidates, g.node_count(), 4.0 * L, seeds());
    FunctionalDigraph h(k, -1);
    for (int i = 0; i < k; ++i)
      if (rounding.chosen[i] >= 0) h[i] = index.at(candidates[i][rounding.chosen[i]].path.back());
    const InForestStars stars = extract_stars(break_cycles_to_in_forest(h));
    std::vector<Path> out;
    for (const Star& s : stars.stars)
      for (Node leaf : s.leaves) out.push_back(candidates[leaf][rounding.chosen[leaf]].path);
    local.attempts = attempt;
    if (attempt == 1 || out.size() > best.size()) {
      best = std::move(out);
      local.congestion = rounding.congestion;
      local.congestion_ok = rounding.within_bound;
    }
    if (static_cast<int>(best.size()) >= want) break;
  }
  if (stats) *stats = local;
  ensure(static_cast<int>(best.size()) >= floor_count, ErrorCode::MergeFailure,
         "only " + std::to_string(best.size()) + " merge paths for " + std::to_string(k) +
             " centers");
  return best;
}

std::vector<int> tree_depths(int node_count, Node root, std::span<const Edge> edges) {
  std::vector<std::vector<Node>> adj(node_count);
  for (const Edge& e : edges) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  std::vector<int> depth(node_count, -1);
  std::queue<Node> queue;
  depth[root] = 0;
  queue.push(root);
  while (!queue.empty()) {
    const Node v = queue.front();
    queue.pop();
    for (Node w : adj[v])
      if (depth[w] < 0) {
        depth[w] = depth[v] + 1;
        queue.push(w);
      }
  }
  return depth;
}

void measure_tree(int node_count, PoiseTree& tree) {
  std::vector<int> degree(node_count, 0);
  for (const Edge& e : tree.edges) {
    ensure(e.u >= 0 && e.v < node_count && e.u < e.v, ErrorCode::NotATree, "bad tree edge");
    ++degree[e.u];
    ++degree[e.v];
  }
  int nodes = 0;
  for (Node v = 0; v < node_count; ++v)
    if (degree[v] > 0 || v == tree.root) ++nodes;
  const auto depth = tree_depths(node_count, tree.root, tree.edges);
  int reached = 0;
  for (Node v = 0; v < node_count; ++v)
    if (depth[v] >= 0) ++reached;
  ensure(reached == nodes && static_cast<int>(tree.edges.size()) == nodes - 1,
         ErrorCode::NotATree, "edge set is not a tree containing the root");
  tree.max_degree = *std::max_element(degree.begin(), degree.end());
  tree.depth = *std::max_element(depth.begin(), depth.end());
  Node far = tree.root;
  for (Node v = 0; v < node_count; ++v)
    if (depth[v] > depth[far]) far = v;
  const auto from_far = tree_depths(node_count, far, tree.edges);
  tree.diameter = *std::max_element(from_far.begin(), from_far.end());
  tree.poise = tree.diameter + tree.max_degree;
}

PoiseTree round_poise_tree(const Graph& g, Node root, std::span<const Node> terminals,
                           const PoiseFractional& frac, const RoundingOptions& options) {
  const int n = g.node_count();
  ensure(root >= 0 && root < n, ErrorCode::InvalidInput, "root out of range");
  std::vector<Node> R;
  for (Node t : terminals) {
    ensure(t >= 0 && t < n, ErrorCode::InvalidInput, "terminal out of range");
    if (t != root) R.push_back(t);
  }
  std::sort(R.begin(), R.end());
  R.erase(std::unique(R.begin(), R.end()), R.end());

  PoiseTree tree;
  tree.root = root;
  tree.lp_value = frac.value;
  if (R.empty()) return tree;

  Graph h(n);
  auto add_path = [&](const Path& p) {
    for (std::size_t j = 1; j < p.size(); ++j)
      if (!h.has_edge(p[j - 1], p[j])) h.add_edge(p[j - 1], p[j]);
  };

  std::mt19937_64 seeds(options.seed);
  std::vector<Node> centers = R;
  const int guard = 4 * static_cast<int>(R.size()) + 8;
  while (centers.size() > 1) {
    ensure(tree.iterations < guard, ErrorCode::Internal, "cluster merging does not converge");
    ++tree.iterations;
    MergeStats stats;
    const auto paths =
        merge_centers(g, frac, root, centers, frac.value, seeds(), options.grid, &stats);
    tree.max_congestion = std::max(tree.max_congestion, stats.congestion);
    std::vector<char> absorbed(n, 0);
    for (const Path& p : paths) {
      add_path(p);
      absorbed[p.front()] = 1;
      tree.longest_merge_path = std::max(tree.longest_merge_path, static_cast<int>(p.size()) - 1);
    }
    std::erase_if(centers, [&](Node c) { return absorbed[c] != 0; });
  }

  // Join the root through the shortest decomposition path of the last center.
  const auto& options_for_root = frac.paths[pair_of(frac, centers.front())];
  ensure(!options_for_root.empty(), ErrorCode::Internal, "root pair has no paths");
  const WeightedPath* link = &options_for_root.front();
  for (const auto& wp : options_for_root)
    if (wp.hops() < link->hops() || (wp.hops() == link->hops() && wp.path < link->path))
      link = &wp;
  add_path(link->path);

  // Shortest path tree of H from the root, pruned to the terminals.
  const auto dist = bfs_distances(h, root);
  std::vector<Node> parent(n, -1);
  for (Node v = 0; v < n; ++v) {
    if (v == root || dist[v] < 0) continue;
    for (Node w : h.neighbors(v))
      if (dist[w] == dist[v] - 1) {
        parent[v] = w;
        break;
      }
  }
  std::vector<char> keep(n, 0);
  for (Node t : R) {
    ensure(dist[t] >= 0, ErrorCode::Internal, "terminal not connected in merged subgraph");
    for (Node v = t; v != root && !keep[v]; v = parent[v]) keep[v] = 1;
  }
  for (Node v = 0; v < n; ++v)
    if (keep[v]) tree.edges.push_back(make_edge(v, parent[v]));
  std::sort(tree.edges.begin(), tree.edges.end());
  measure_tree(n, tree);
  return tree;
}

}  // namespace polycast
