#include "polycast/multicast.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "polycast/error.hpp"
#include "polycast/planar.hpp"
#include "polycast/tree_schedule.hpp"

namespace polycast {

namespace {

bool contains(const std::vector<Node>& sorted, Node v) {
  return std::binary_search(sorted.begin(), sorted.end(), v);
}

bool meets(const Path& p, const std::vector<Node>& sorted) {
  return std::any_of(p.begin(), p.end(), [&](Node v) { return contains(sorted, v); });
}

std::vector<Node> sorted_nodes(const Path& p) {
  std::vector<Node> s = p;
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Node build_binary(Graph& g, std::vector<Node>& up, std::span<const Node> leaves, Node& next) {
  if (leaves.size() == 1) return leaves.front();
  const std::size_t mid = (leaves.size() + 1) / 2;
  const Node left = build_binary(g, up, leaves.subspan(0, mid), next);
  const Node right = build_binary(g, up, leaves.subspan(mid), next);
  const Node self = next++;
  g.add_edge(self, left);
  g.add_edge(self, right);
  up[left] = self;
  up[right] = self;
  return self;
}

TelephoneSchedule to_global(const TelephoneSchedule& local, std::span<const Node> map) {
  TelephoneSchedule out;
  out.rounds.reserve(local.rounds.size());
  for (const auto& round : local.rounds) {
    TelephoneRound r;
    for (const Edge& e : round) r.push_back(make_edge(map[e.u], map[e.v]));
    std::sort(r.begin(), r.end(), [](const Edge& a, const Edge& b) {
      return a.u != b.u ? a.u < b.u : a.v < b.v;
    });
    out.rounds.push_back(std::move(r));
  }
  return out;
}

}  // namespace

double multicast_gamma(int k) {
  if (k <= 2) return 0.5;
  return std::min(0.5, 1.0 / std::log2(static_cast<double>(k)));
}

DemandSplit split_demands(const PoiseFractional& frac, const PathSeparator& sep, double gamma) {
  ensure(gamma > 0.0 && gamma < 1.0, ErrorCode::BadParams, "gamma must lie in (0,1)");
  std::vector<std::vector<Node>> on_path;
  for (const Path& p : sep.paths) on_path.push_back(sorted_nodes(p));
  DemandSplit split;
  const int k = static_cast<int>(frac.pairs.size());
  split.assigned.assign(k, -1);
  split.crossing.assign(k, 0.0);
  for (int i = 0; i < k; ++i) {
    std::vector<double> per_path(on_path.size(), 0.0);
    for (const auto& wp : frac.paths[i]) {
      bool any = false;
      for (std::size_t j = 0; j < on_path.size(); ++j)
        if (meets(wp.path, on_path[j])) {
          per_path[j] += wp.weight;
          any = true;
        }
      if (any) split.crossing[i] += wp.weight;
    }
    if (split.crossing[i] >= gamma - 1e-12) {
      int best = 0;
      for (std::size_t j = 1; j < per_path.size(); ++j)
        if (per_path[j] > per_path[best] + 1e-12) best = static_cast<int>(j);
      split.assigned[i] = best;
      split.k1.push_back(i);
    } else {
      split.k2.push_back(i);
    }
  }
  return split;
}

ScaledK1 scale_K1(const Graph& g, const PoiseFractional& frac, const PathSeparator& sep,
                  const DemandSplit& split, double gamma) {
  ScaledK1 out;
  std::vector<DemandPair> pairs;
  std::vector<std::vector<WeightedPath>> paths;
  for (int i : split.k1) {
    const auto on_path = sorted_nodes(sep.paths[split.assigned[i]]);
    std::vector<WeightedPath> kept;
    double mass = 0.0;
    for (const auto& wp : frac.paths[i])
      if (meets(wp.path, on_path)) {
        kept.push_back(wp);
        mass += wp.weight;
      }
    ensure(mass >= gamma / 3.0 - 1e-12, ErrorCode::InsufficientCrossingFlow,
           "pair " + std::to_string(i) + " keeps " + std::to_string(mass) +
               " on its separator path");
    const double scale = std::min(3.0 / gamma, 1.0 / mass);
    std::stable_sort(kept.begin(), kept.end(),
                     [](const WeightedPath& a, const WeightedPath& b) { return a.weight > b.weight; });
    std::vector<WeightedPath> unit;
    double total = 0.0;
    for (auto wp : kept) {
      if (total >= 1.0 - 1e-12) break;
      wp.weight = std::min(wp.weight * scale, 1.0 - total);
      total += wp.weight;
      unit.push_back(std::move(wp));
    }
    for (auto& wp : unit) wp.weight /= total;
    out.pairs.push_back(i);
    out.scale.push_back(scale);
    out.max_scale = std::max(out.max_scale, scale);
    pairs.push_back(frac.pairs[i]);
    paths.push_back(std::move(unit));
  }
  out.frac = fractional_from_paths(g, std::move(pairs), std::move(paths));
  return out;
}

AugmentedInstance build_augmented_instance(const Graph& component, std::span<const Node> path,
                                           std::span<const DemandPair> pairs) {
  ensure(!path.empty(), ErrorCode::InvalidInput, "separator path is empty");
  ensure(!pairs.empty(), ErrorCode::InvalidInput, "no pairs for the separator path");
  AugmentedInstance aug;
  aug.base_nodes = component.node_count();
  const int dummies = static_cast<int>(path.size()) - 1;
  aug.graph = Graph(aug.base_nodes + dummies, component.edges());
  aug.up.assign(aug.base_nodes + dummies, -1);
  Node next = aug.base_nodes;
  aug.root = build_binary(aug.graph, aug.up, path, next);
  aug.path.assign(path.begin(), path.end());
  int depth = 0;
  while ((std::size_t{1} << depth) < path.size()) ++depth;
  aug.tree_depth = depth;
  aug.pairs.assign(pairs.begin(), pairs.end());
  for (const auto& p : pairs) {
    aug.terminals.push_back(p.source);
    aug.terminals.push_back(p.sink);
  }
  std::sort(aug.terminals.begin(), aug.terminals.end());
  aug.terminals.erase(std::unique(aug.terminals.begin(), aug.terminals.end()), aug.terminals.end());
  return aug;
}

PoiseFractional augmented_fractional(const AugmentedInstance& aug,
                                     const std::vector<std::vector<WeightedPath>>& pair_paths) {
  ensure(pair_paths.size() == aug.pairs.size(), ErrorCode::Internal, "path lists do not match pairs");
  const auto on_path = sorted_nodes(aug.path);
  std::vector<DemandPair> pairs;
  std::vector<std::vector<WeightedPath>> paths;
  for (Node t : aug.terminals) {
    if (t == aug.root) continue;
    std::size_t i = 0;
    while (aug.pairs[i].source != t && aug.pairs[i].sink != t) ++i;
    const bool from_source = aug.pairs[i].source == t;
    std::map<Path, double> rooted;
    for (const auto& wp : pair_paths[i]) {
      Path walk;
      if (from_source) {
        for (Node v : wp.path) {
          walk.push_back(v);
          if (contains(on_path, v)) break;
        }
      } else {
        for (auto it = wp.path.rbegin(); it != wp.path.rend(); ++it) {
          walk.push_back(*it);
          if (contains(on_path, *it)) break;
        }
      }
      ensure(contains(on_path, walk.back()), ErrorCode::Internal, "kept path misses the separator path");
      for (Node v = aug.up[walk.back()]; v >= 0; v = aug.up[v]) walk.push_back(v);
      std::reverse(walk.begin(), walk.end());
      rooted[walk] += wp.weight;
    }
    std::vector<WeightedPath> list;
    for (auto& [p, w] : rooted) list.push_back({p, w});
    pairs.push_back({aug.root, t});
    paths.push_back(std::move(list));
  }
  return fractional_from_paths(aug.graph, std::move(pairs), std::move(paths));
}

TelephoneSchedule schedule_K1(const AugmentedInstance& aug, const PoiseTree& tree) {
  const int n = aug.base_nodes;
  std::vector<std::vector<Node>> adj(n);
  for (const Edge& e : tree.edges)
    if (e.u < n && e.v < n) {
      adj[e.u].push_back(e.v);
      adj[e.v].push_back(e.u);
    }
  for (auto& list : adj) std::sort(list.begin(), list.end());

  // Hang every real tree node below its nearest separator-path node.
  std::vector<Node> owner(n, -1), parent(n, -1);
  std::vector<Node> queue;
  for (Node p : aug.path)
    if (owner[p] < 0) {
      owner[p] = p;
      queue.push_back(p);
    }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Node v = queue[head];
    for (Node w : adj[v]) {
      if (owner[w] >= 0) continue;
      owner[w] = owner[v];
      parent[w] = v;
      queue.push_back(w);
    }
  }
  for (Node t : aug.terminals)
    ensure(t >= n || owner[t] >= 0, ErrorCode::Internal,
           "terminal " + std::to_string(t) + " is not linked to the separator path");

  // Edges toward the path that some endpoint of the given side needs.
  auto hanging_edges = [&](bool sources) {
    std::vector<char> used(n, 0);
    std::vector<std::vector<Edge>> by_owner(n);
    for (const auto& pair : aug.pairs)
      for (Node v = sources ? pair.source : pair.sink; parent[v] >= 0 && !used[v]; v = parent[v]) {
        used[v] = 1;
        by_owner[owner[v]].push_back(make_edge(v, parent[v]));
      }
    return by_owner;
  };
  const auto up_edges = hanging_edges(true);
  const auto down_edges = hanging_edges(false);

  TelephoneSchedule gather, broadcast;
  std::vector<char> seen(n, 0);
  for (Node p : aug.path) {
    if (seen[p]) continue;
    seen[p] = 1;
    gather.merge_parallel(tree_gather_schedule(n, up_edges[p], p));
    broadcast.merge_parallel(tree_broadcast_schedule(n, down_edges[p], p));
  }
  TelephoneSchedule out = gather;
  if (aug.path.size() > 1)
    out.append(path_shuttle_schedule(aug.path, static_cast<int>(aug.path.size())));
  out.append(broadcast);
  for (const auto& round : out.rounds)
    for (const Edge& e : round)
      ensure(e.u < n && e.v < n, ErrorCode::DummyEdgeScheduled,
             "call " + std::to_string(e.u) + "-" + std::to_string(e.v) + " touches a dummy node");
  return out;
}

namespace {

class Recursion {
 public:
  Recursion(const Graph& g, const MulticastOptions& options, MulticastResult& result)
      : g_(g), options_(options), result_(result) {}

  TelephoneSchedule solve(const std::vector<Node>& component, const std::vector<DemandPair>& pairs,
                          int depth, double scaling) {
    if (pairs.empty()) return {};
    if (static_cast<int>(result_.levels.size()) < depth) {
      result_.levels.resize(depth);
      result_.levels[depth - 1].depth = depth;
    }
    MulticastLevel& level = result_.levels[depth - 1];
    ++level.nodes;
    result_.depth = std::max(result_.depth, depth);

    std::vector<char> mask(g_.node_count(), 0);
    for (Node v : component) mask[v] = 1;

    if (pairs.size() == 1) {
      const auto path = shortest_path(g_, pairs[0].source, pairs[0].sink, mask);
      ensure(path.has_value(), ErrorCode::InfeasiblePair,
             "no path from " + std::to_string(pairs[0].source) + " to " +
                 std::to_string(pairs[0].sink));
      if (depth == 1)
        result_.lp_root = std::max(result_.lp_root, solve_poise(g_, DemandSet(pairs)).value);
      ++level.base_pairs;
      TelephoneSchedule s = path_shuttle_schedule(*path, static_cast<int>(path->size()) - 1);
      level.rounds = std::max(level.rounds, s.length());
      return s;
    }

    const InducedSubgraph sub = induced_subgraph(g_, component);
    std::vector<DemandPair> local;
    for (const auto& p : pairs) local.push_back({sub.to_local[p.source], sub.to_local[p.sink]});
    const DemandSet local_set(local);
    const PoiseFractional frac = solve_poise(sub.graph, local_set);
    if (depth == 1) result_.lp_root = std::max(result_.lp_root, frac.value);

    const auto weights = node_weights(sub.graph.node_count(), local_set);
    const PathSeparator sep = find_3path_separator(sub.graph, weights);
    const DemandSplit split = split_demands(frac, sep, result_.gamma);
    level.k1_pairs += static_cast<int>(split.k1.size());
    level.k2_pairs += static_cast<int>(split.k2.size());

    TelephoneSchedule k1_phase;
    if (!split.k1.empty()) {
      const ScaledK1 scaled = scale_K1(sub.graph, frac, sep, split, result_.gamma);
      result_.max_scaling = std::max(result_.max_scaling, scaling * scaled.max_scale);
      for (std::size_t j = 0; j < sep.paths.size(); ++j) {
        std::vector<DemandPair> group;
        std::vector<std::vector<WeightedPath>> group_paths;
        for (std::size_t q = 0; q < scaled.pairs.size(); ++q)
          if (split.assigned[scaled.pairs[q]] == static_cast<int>(j)) {
            group.push_back(scaled.frac.pairs[q]);
            group_paths.push_back(scaled.frac.paths[q]);
          }
        if (group.empty()) continue;
        const AugmentedInstance aug = build_augmented_instance(sub.graph, sep.paths[j], group);
        const PoiseFractional rooted = augmented_fractional(aug, group_paths);
        RoundingOptions ro;
        ro.grid = options_.grid;
        ro.seed = mix(options_.seed ^ mix(static_cast<std::uint64_t>(depth) << 32 |
                                          static_cast<std::uint64_t>(component.front()) << 2 | j));
        const PoiseTree tree = round_poise_tree(aug.graph, aug.root, aug.terminals, rooted, ro);
        result_.max_poise = std::max(result_.max_poise, tree.poise);
        k1_phase.append(to_global(schedule_K1(aug, tree), sub.to_global));
      }
    }
    level.rounds = std::max(level.rounds, k1_phase.length());

    // Remaining pairs live inside one child component each.
    const auto children = connected_components(sub.graph, sep.nodes());
    std::vector<int> child_of(sub.graph.node_count(), -1);
    for (std::size_t c = 0; c < children.size(); ++c)
      for (Node v : children[c]) child_of[v] = static_cast<int>(c);
    std::vector<std::vector<DemandPair>> child_pairs(children.size());
    double inside = 1.0;
    for (int i : split.k2) {
      const int a = child_of[local[i].source];
      const int b = child_of[local[i].sink];
      ensure(a >= 0 && a == b, ErrorCode::Internal,
             "pair below the crossing threshold straddles the separator");
      child_pairs[a].push_back(pairs[i]);
      inside = std::min(inside, 1.0 - split.crossing[i]);
    }
    const double child_scaling = scaling / std::max(inside, 1e-12);
    TelephoneSchedule parallel;
    for (std::size_t c = 0; c < children.size(); ++c) {
      if (child_pairs[c].empty()) continue;
      std::vector<Node> global;
      for (Node v : children[c]) global.push_back(sub.to_global[v]);
      std::sort(global.begin(), global.end());
      parallel.merge_parallel(solve(global, child_pairs[c], depth + 1, child_scaling));
    }
    k1_phase.append(parallel);
    return k1_phase;
  }

 private:
  const Graph& g_;
  const MulticastOptions& options_;
  MulticastResult& result_;
};

}  // namespace

MulticastResult planar_mc_multicast(const Graph& g, const DemandSet& demands,
                                    const MulticastOptions& options) {
  demands.validate(g);
  ensure(is_planar(g), ErrorCode::NotPlanar, "multicast needs a planar graph");
  const auto pairs = demands.distinct();
  MulticastResult result;
  result.gamma = multicast_gamma(static_cast<int>(pairs.size()));

  const auto components = connected_components(g, {});
  std::vector<int> comp_of(g.node_count(), -1);
  for (std::size_t c = 0; c < components.size(); ++c)
    for (Node v : components[c]) comp_of[v] = static_cast<int>(c);
  std::vector<std::vector<DemandPair>> grouped(components.size());
  for (const auto& p : pairs) {
    ensure(comp_of[p.source] == comp_of[p.sink], ErrorCode::InfeasiblePair,
           "pair " + std::to_string(p.source) + "-" + std::to_string(p.sink) + " is disconnected");
    grouped[comp_of[p.source]].push_back(p);
  }

  Recursion rec(g, options, result);
  for (std::size_t c = 0; c < components.size(); ++c)
    result.schedule.merge_parallel(rec.solve(components[c], grouped[c], 1, 1.0));

  validate_telephone(g, result.schedule);
  const auto final_state =
      simulate_telephone(g, PossessionState::own_messages(g.node_count()), result.schedule);
  ensure(check_demands_met(final_state, demands).met, ErrorCode::Internal,
         "multicast schedule misses a demand");
  return result;
}

}  // namespace polycast
