#include "polycast/poise_lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <sstream>

#include "polycast/error.hpp"
#include "polycast/revised_simplex.hpp"

namespace polycast {

namespace {

std::string arc_suffix(const Edge& e, int arc) {
  const Node from = arc % 2 == 0 ? e.u : e.v;
  const Node to = arc % 2 == 0 ? e.v : e.u;
  return std::to_string(from) + "_" + std::to_string(to);
}

constexpr double kFlowEpsilon = 1e-10;

}  // namespace

PoiseLP build_poise_lp(const Graph& g, const DemandSet& demands) {
  demands.validate(g);
  PoiseLP lp;
  lp.graph = g;
  lp.pairs = demands.pairs();
  for (const auto& p : lp.pairs) {
    const auto dist = bfs_distances(g, p.source);
    ensure(dist[p.sink] >= 0, ErrorCode::InfeasiblePair,
           "pair " + std::to_string(p.source) + "->" + std::to_string(p.sink) +
               " is disconnected");
  }

  const int n = g.node_count();
  const int m = g.edge_count();
  const int k = static_cast<int>(lp.pairs.size());
  auto& prog = lp.program;

  lp.x_base = prog.var_count();
  for (int e = 0; e < m; ++e) {
    const Edge& ed = g.edge(e);
    prog.add_var("x_e_" + std::to_string(ed.u) + "_" + std::to_string(ed.v));
  }
  lp.flow_base = prog.var_count();
  for (int i = 0; i < k; ++i)
    for (int e = 0; e < m; ++e)
      for (int arc = 2 * e; arc <= 2 * e + 1; ++arc)
        prog.add_var("f_" + std::to_string(i) + "_" + arc_suffix(g.edge(e), arc));
  lp.l1_var = prog.add_var("L1", 1.0);
  lp.l2_var = prog.add_var("L2", 1.0);

  // Degree budget.
  std::vector<std::vector<int>> incident(n);
  for (int e = 0; e < m; ++e) {
    incident[g.edge(e).u].push_back(e);
    incident[g.edge(e).v].push_back(e);
  }
  for (Node v = 0; v < n; ++v) {
    LinearProgram::Row row;
    row.name = "deg_" + std::to_string(v);
    for (int e : incident[v]) row.coeffs.emplace_back(lp.x_var(e), 1.0);
    row.coeffs.emplace_back(lp.l1_var, -1.0);
    prog.add_row(std::move(row));
  }
  // Unit flow per pair; the sink row is implied.
  for (int i = 0; i < k; ++i) {
    const auto& p = lp.pairs[i];
    for (Node v = 0; v < n; ++v) {
      if (v == p.sink) continue;
      LinearProgram::Row row;
      row.name = "cons_" + std::to_string(i) + "_" + std::to_string(v);
      row.sense = RowSense::Equal;
      row.rhs = v == p.source ? 1.0 : 0.0;
      for (int e : incident[v]) {
        const bool tail_is_u = g.edge(e).u == v;
        const int out_arc = tail_is_u ? 2 * e : 2 * e + 1;
        const int in_arc = tail_is_u ? 2 * e + 1 : 2 * e;
        row.coeffs.emplace_back(lp.flow_var(i, out_arc), 1.0);
        row.coeffs.emplace_back(lp.flow_var(i, in_arc), -1.0);
      }
      prog.add_row(std::move(row));
    }
  }
  // Joint capacity of the two arcs of an edge.
  for (int i = 0; i < k; ++i) {
    for (int e = 0; e < m; ++e) {
      LinearProgram::Row row;
      row.name = "cap_" + std::to_string(i) + "_" + std::to_string(g.edge(e).u) + "_" +
                 std::to_string(g.edge(e).v);
      row.coeffs = {{lp.flow_var(i, 2 * e), 1.0},
                    {lp.flow_var(i, 2 * e + 1), 1.0},
                    {lp.x_var(e), -1.0}};
      prog.add_row(std::move(row));
    }
  }
  // Length budget: total flow mass equals the weighted average path length.
  for (int i = 0; i < k; ++i) {
    LinearProgram::Row row;
    row.name = "len_" + std::to_string(i);
    for (int arc = 0; arc < 2 * m; ++arc) row.coeffs.emplace_back(lp.flow_var(i, arc), 1.0);
    row.coeffs.emplace_back(lp.l2_var, -1.0);
    prog.add_row(std::move(row));
  }
  for (int e = 0; e < m; ++e) {
    LinearProgram::Row row;
    row.name = "xub_" + std::to_string(g.edge(e).u) + "_" + std::to_string(g.edge(e).v);
    row.coeffs = {{lp.x_var(e), 1.0}};
    row.rhs = 1.0;
    prog.add_row(std::move(row));
  }
  return lp;
}

std::vector<WeightedPath> decompose_flows(const Graph& g, Node s, Node t,
                                          std::span<const double> arc_flow) {
  const int n = g.node_count();
  const int m = g.edge_count();
  ensure(static_cast<int>(arc_flow.size()) == 2 * m, ErrorCode::Internal,
         "arc flow size mismatch");
  std::vector<double> flow(arc_flow.begin(), arc_flow.end());
  for (double& f : flow)
    if (f < kFlowEpsilon) f = 0.0;

  // out_arcs[v] = (head, arc) sorted by head.
  std::vector<std::vector<std::pair<Node, int>>> out_arcs(n);
  for (int e = 0; e < m; ++e) {
    out_arcs[g.edge(e).u].emplace_back(g.edge(e).v, 2 * e);
    out_arcs[g.edge(e).v].emplace_back(g.edge(e).u, 2 * e + 1);
  }
  for (auto& list : out_arcs) std::sort(list.begin(), list.end());

  auto heaviest_out = [&](Node v) {
    int best = -1;
    for (const auto& [head, arc] : out_arcs[v])
      if (flow[arc] > kFlowEpsilon && (best < 0 || flow[arc] > flow[best])) best = arc;
    return best;
  };
  auto head_of = [&](int arc) { return arc % 2 == 0 ? g.edge(arc / 2).v : g.edge(arc / 2).u; };

  std::vector<int> pos(n, -1);
  std::vector<Node> walk;
  std::vector<int> arcs;

  // Cancel circulations first so that no cycle passes through t.
  for (Node start = 0; start < n; ++start) {
    for (;;) {
      walk.assign(1, start);
      arcs.clear();
      std::fill(pos.begin(), pos.end(), -1);
      pos[start] = 0;
      bool cancelled = false;
      for (int arc = heaviest_out(start); arc >= 0; arc = heaviest_out(walk.back())) {
        const Node next = head_of(arc);
        if (pos[next] >= 0) {
          double amount = flow[arc];
          for (std::size_t j = pos[next]; j < arcs.size(); ++j) amount = std::min(amount, flow[arcs[j]]);
          flow[arc] = flow[arc] - amount < kFlowEpsilon ? 0.0 : flow[arc] - amount;
          for (std::size_t j = pos[next]; j < arcs.size(); ++j) {
            double& f = flow[arcs[j]];
            f = f - amount < kFlowEpsilon ? 0.0 : f - amount;
          }
          cancelled = true;
          break;
        }
        pos[next] = static_cast<int>(walk.size());
        walk.push_back(next);
        arcs.push_back(arc);
      }
      if (!cancelled) break;
    }
  }

  std::vector<WeightedPath> out;
  const int guard_limit = 8 * (m + 1) * (m + 1) + 16;
  for (int guard = 0; guard < guard_limit; ++guard) {
    if (heaviest_out(s) < 0) break;
    walk.assign(1, s);
    arcs.clear();
    std::fill(pos.begin(), pos.end(), -1);
    pos[s] = 0;
    bool restart = false;
    while (walk.back() != t) {
      const int arc = heaviest_out(walk.back());
      if (arc < 0) {
        // Numerical dead end: drop the arc that led here.
        if (arcs.empty()) break;
        flow[arcs.back()] = 0.0;
        restart = true;
        break;
      }
      const Node next = head_of(arc);
      if (pos[next] >= 0) {
        // Cancel the cycle next -> ... -> walk.back() -> next.
        double amount = flow[arc];
        for (std::size_t j = pos[next]; j < arcs.size(); ++j) amount = std::min(amount, flow[arcs[j]]);
        flow[arc] -= amount;
        for (std::size_t j = pos[next]; j < arcs.size(); ++j) flow[arcs[j]] -= amount;
        restart = true;
        break;
      }
      pos[next] = static_cast<int>(walk.size());
      walk.push_back(next);
      arcs.push_back(arc);
    }
    if (restart) continue;
    if (walk.back() != t) break;
    double amount = std::numeric_limits<double>::infinity();
    for (int arc : arcs) amount = std::min(amount, flow[arc]);
    for (int arc : arcs) flow[arc] -= amount;
    out.push_back({walk, amount});
  }

  double total = 0.0;
  for (const auto& wp : out) total += wp.weight;
  ensure(std::abs(total - 1.0) <= 1e-9 * std::max<std::size_t>(1, out.size()) + 1e-9,
         ErrorCode::DecompositionResidue,
         "path weights sum to " + std::to_string(total) + " for pair " + std::to_string(s) +
             "->" + std::to_string(t));
  for (auto& wp : out) wp.weight /= total;
  return out;
}

PoiseFractional fractional_from_paths(const Graph& g, std::vector<DemandPair> pairs,
                                      std::vector<std::vector<WeightedPath>> paths) {
  ensure(pairs.size() == paths.size(), ErrorCode::Internal, "pairs/paths size mismatch");
  PoiseFractional frac;
  frac.pairs = std::move(pairs);
  frac.paths = std::move(paths);
  frac.x.assign(g.edge_count(), 0.0);
  std::vector<double> usage(g.edge_count());
  for (const auto& list : frac.paths) {
    std::fill(usage.begin(), usage.end(), 0.0);
    double length = 0.0;
    for (const auto& wp : list) {
      length += wp.weight * wp.hops();
      for (std::size_t j = 1; j < wp.path.size(); ++j) {
        const auto e = g.edge_index(wp.path[j - 1], wp.path[j]);
        ensure(e.has_value(), ErrorCode::Internal, "path uses a non-edge");
        usage[*e] += wp.weight;
      }
    }
    frac.l2 = std::max(frac.l2, length);
    for (int e = 0; e < g.edge_count(); ++e) frac.x[e] = std::max(frac.x[e], std::min(1.0, usage[e]));
  }
  std::vector<double> degree(g.node_count(), 0.0);
  for (int e = 0; e < g.edge_count(); ++e) {
    degree[g.edge(e).u] += frac.x[e];
    degree[g.edge(e).v] += frac.x[e];
  }
  for (double d : degree) frac.l1 = std::max(frac.l1, d);
  frac.value = frac.l1 + frac.l2;
  return frac;
}

namespace {

void require_optimal(const LpSolution& sol) {
  switch (sol.status) {
    case LpStatus::Optimal: return;
    case LpStatus::Infeasible: fail(ErrorCode::InfeasiblePair, "POISE-LP is infeasible");
    case LpStatus::Unbounded: fail(ErrorCode::Internal, "POISE-LP reported unbounded");
    case LpStatus::IterationLimit: fail(ErrorCode::Internal, "simplex iteration limit");
  }
}

// Shortest s-t path under nonnegative edge weights; ties go to the first
// settled predecessor, which is deterministic for a fixed graph.
Path dijkstra_path(const Graph& g, Node s, Node t, const std::vector<double>& weight,
                   double& length) {
  const int n = g.node_count();
  std::vector<double> dist(n, std::numeric_limits<double>::infinity());
  std::vector<Node> pred(n, -1);
  std::vector<char> done(n, 0);
  using Item = std::pair<double, Node>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  dist[s] = 0.0;
  queue.push({0.0, s});
  while (!queue.empty()) {
    const auto [d, v] = queue.top();
    queue.pop();
    if (done[v]) continue;
    done[v] = 1;
    if (v == t) break;
    for (Node w : g.neighbors(v)) {
      const double nd = d + weight[*g.edge_index(v, w)];
      if (nd < dist[w] - 1e-12) {
        dist[w] = nd;
        pred[w] = v;
        queue.push({nd, w});
      }
    }
  }
  length = dist[t];
  Path p;
  for (Node v = t; v >= 0; v = pred[v]) p.push_back(v);
  std::reverse(p.begin(), p.end());
  return p;
}

PoiseFractional solve_by_paths(const Graph& g, const std::vector<DemandPair>& pairs) {
  const int n = g.node_count();
  const int m = g.edge_count();
  const int k = static_cast<int>(pairs.size());
  struct Column {
    int pair;
    Path path;
    std::vector<int> edges;
  };
  std::vector<Column> columns;
  std::vector<std::vector<int>> incident(n);
  for (int e = 0; e < m; ++e) {
    incident[g.edge(e).u].push_back(e);
    incident[g.edge(e).v].push_back(e);
  }

  // Columns x_e, L1, L2, then one y per generated path. Rows: conv_i >= 1,
  // deg_v <= 0, len_i <= 0, and cap(i,e) <= 0 for edges on pair i's paths.
  RevisedSimplex lp;
  for (int e = 0; e < m; ++e) lp.add_column(0.0, {});
  const int l1 = lp.add_column(1.0, {});
  const int l2 = lp.add_column(1.0, {});
  std::vector<int> conv_row(k), len_row(k), deg_row(n);
  for (int i = 0; i < k; ++i) conv_row[i] = lp.add_row({}, 1.0, -1.0);
  for (Node v = 0; v < n; ++v) {
    RevisedSimplex::Entries row;
    for (int e : incident[v]) row.emplace_back(e, 1.0);
    row.emplace_back(l1, -1.0);
    deg_row[v] = lp.add_row(row, 0.0, 1.0);
  }
  for (int i = 0; i < k; ++i) len_row[i] = lp.add_row({{l2, -1.0}}, 0.0, 1.0);

  std::vector<int> cap_row(static_cast<std::size_t>(k) * m, -1);
  std::vector<int> column_var;
  auto add_column = [&](int i, Path path) {
    Column c{i, std::move(path), {}};
    RevisedSimplex::Entries entries{{conv_row[i], 1.0}};
    for (std::size_t j = 1; j < c.path.size(); ++j) {
      const int e = *g.edge_index(c.path[j - 1], c.path[j]);
      c.edges.push_back(e);
      int& r = cap_row[static_cast<std::size_t>(i) * m + e];
      if (r < 0) r = lp.add_row({{e, -1.0}}, 0.0, 1.0);
      entries.emplace_back(r, 1.0);
    }
    entries.emplace_back(len_row[i], static_cast<double>(c.edges.size()));
    column_var.push_back(lp.add_column(0.0, entries));
    columns.push_back(std::move(c));
  };
  for (int i = 0; i < k; ++i) add_column(i, *shortest_path(g, pairs[i].source, pairs[i].sink));

  // Feasible starting basis: every shortest path at weight 1, x_e = 1 on the
  // edges they use, L1 and L2 tight at the busiest node and longest path.
  {
    std::vector<char> used(m, 0), covered(lp.row_count(), 0);
    std::vector<int> basic = column_var;
    for (int i = 0; i < k; ++i) covered[conv_row[i]] = 1;
    for (const auto& c : columns)
      for (int e : c.edges)
        if (!used[e]) {
          used[e] = 1;
          basic.push_back(e);
          covered[cap_row[static_cast<std::size_t>(c.pair) * m + e]] = 1;
        }
    Node busiest = 0;
    std::vector<int> deg(n, 0);
    for (int e = 0; e < m; ++e)
      if (used[e]) {
        ++deg[g.edge(e).u];
        ++deg[g.edge(e).v];
      }
    for (Node v = 0; v < n; ++v)
      if (deg[v] > deg[busiest]) busiest = v;
    if (n > 0) {
      basic.push_back(l1);
      covered[deg_row[busiest]] = 1;
    }
    if (k > 0) {
      int longest = 0;
      for (int i = 0; i < k; ++i)
        if (columns[i].edges.size() > columns[longest].edges.size()) longest = i;
      basic.push_back(l2);
      covered[len_row[longest]] = 1;
    }
    for (int r = 0; r < lp.row_count(); ++r)
      if (!covered[r]) basic.push_back(lp.slack_of(r));
    lp.set_basis(basic);
  }

  PoiseFractional frac;
  frac.pairs = pairs;
  const int max_rounds = 20000;
  std::vector<double> weight(m);
  for (;;) {
    ensure(++frac.rounds <= max_rounds, ErrorCode::Internal, "path generation does not converge");
    const LpStatus status = lp.optimize();
    ensure(status == LpStatus::Optimal, ErrorCode::Internal, "path master did not reach optimality");
    const std::vector<double> duals = lp.duals();  // add_column grows the rows

    // Price one path per pair: weight of e is -(len dual) - (cap dual).
    bool added = false;
    for (int i = 0; i < k; ++i) {
      const double mu = duals[conv_row[i]];
      const double lambda = duals[len_row[i]];
      for (int e = 0; e < m; ++e) {
        const int r = cap_row[static_cast<std::size_t>(i) * m + e];
        const double pi = r >= 0 ? duals[r] : 0.0;
        weight[e] = std::max(0.0, -lambda - pi);
      }
      double length = 0.0;
      Path p = dijkstra_path(g, pairs[i].source, pairs[i].sink, weight, length);
      if (length >= mu - 1e-9) continue;
      bool known = false;
      for (const auto& c : columns)
        if (c.pair == i && c.path == p) known = true;
      if (known) continue;
      add_column(i, std::move(p));
      added = true;
    }
    if (!added) break;
  }
  frac.simplex_iterations = lp.iterations();
  const std::vector<double> primal = lp.primal();

  // Normalize each pair to unit mass and tighten x to the largest usage.
  std::vector<double> mass(k, 0.0);
  for (std::size_t c = 0; c < columns.size(); ++c) mass[columns[c].pair] += primal[column_var[c]];
  frac.paths.assign(k, {});
  frac.x.assign(m, 0.0);
  std::vector<double> usage(static_cast<std::size_t>(k) * m, 0.0);
  for (std::size_t c = 0; c < columns.size(); ++c) {
    const double w = primal[column_var[c]] / mass[columns[c].pair];
    if (w <= kFlowEpsilon) continue;
    const int i = columns[c].pair;
    frac.paths[i].push_back({columns[c].path, w});
    for (int e : columns[c].edges) {
      double& u = usage[static_cast<std::size_t>(i) * m + e];
      u += w;
      frac.x[e] = std::max(frac.x[e], std::min(1.0, u));
    }
  }
  for (int i = 0; i < k; ++i) {
    double total = 0.0, length = 0.0;
    for (const auto& wp : frac.paths[i]) total += wp.weight;
    for (auto& wp : frac.paths[i]) {
      wp.weight /= total;
      length += wp.weight * wp.hops();
    }
    frac.l2 = std::max(frac.l2, length);
  }
  std::vector<double> degree(n, 0.0);
  for (int e = 0; e < m; ++e) {
    degree[g.edge(e).u] += frac.x[e];
    degree[g.edge(e).v] += frac.x[e];
  }
  for (double d : degree) frac.l1 = std::max(frac.l1, d);
  frac.value = frac.l1 + frac.l2;
  return frac;
}

}  // namespace

PoiseFractional solve_lp(const PoiseLP& lp, LpMethod method) {
  if (method == LpMethod::PathGeneration) return solve_by_paths(lp.graph, lp.pairs);
  const auto sol = solve_simplex(lp.program);
  require_optimal(sol);
  const Graph& g = lp.graph;
  const int m = g.edge_count();
  PoiseFractional frac;
  frac.pairs = lp.pairs;
  frac.value = sol.value;
  frac.l1 = sol.x[lp.l1_var];
  frac.l2 = sol.x[lp.l2_var];
  frac.simplex_iterations = sol.iterations;
  frac.rounds = 1;
  frac.x.resize(m);
  for (int e = 0; e < m; ++e) frac.x[e] = std::clamp(sol.x[lp.x_var(e)], 0.0, 1.0);
  std::vector<double> arc_flow(2 * m);
  for (int i = 0; i < static_cast<int>(lp.pairs.size()); ++i) {
    for (int arc = 0; arc < 2 * m; ++arc) arc_flow[arc] = sol.x[lp.flow_var(i, arc)];
    frac.paths.push_back(decompose_flows(g, lp.pairs[i].source, lp.pairs[i].sink, arc_flow));
  }
  return frac;
}

PoiseFractional solve_poise(const Graph& g, const DemandSet& demands, LpMethod method) {
  return solve_lp(build_poise_lp(g, demands), method);
}

std::string check_fractional(const Graph& g, const PoiseFractional& frac) {
  constexpr double tol = 1e-7;
  std::vector<double> degree(g.node_count(), 0.0);
  for (int e = 0; e < g.edge_count(); ++e) {
    if (frac.x[e] < -tol || frac.x[e] > 1.0 + tol) return "x out of [0,1]";
    degree[g.edge(e).u] += frac.x[e];
    degree[g.edge(e).v] += frac.x[e];
  }
  for (Node v = 0; v < g.node_count(); ++v)
    if (degree[v] > frac.l1 + tol) return "degree budget exceeded at " + std::to_string(v);
  std::vector<double> usage(g.edge_count());
  for (std::size_t i = 0; i < frac.pairs.size(); ++i) {
    double total = 0.0, length = 0.0;
    std::fill(usage.begin(), usage.end(), 0.0);
    for (const auto& wp : frac.paths[i]) {
      if (wp.weight <= 0) return "non-positive path weight";
      if (wp.path.front() != frac.pairs[i].source || wp.path.back() != frac.pairs[i].sink)
        return "path endpoints do not match pair " + std::to_string(i);
      if (!is_path_in(g, wp.path)) return "decomposition path is not a simple path";
      total += wp.weight;
      length += wp.weight * wp.hops();
      for (std::size_t j = 1; j < wp.path.size(); ++j)
        usage[*g.edge_index(wp.path[j - 1], wp.path[j])] += wp.weight;
    }
    if (std::abs(total - 1.0) > 1e-9 * 10) return "weights do not sum to 1 for pair " + std::to_string(i);
    if (length > frac.l2 + tol) return "length budget exceeded for pair " + std::to_string(i);
    for (int e = 0; e < g.edge_count(); ++e)
      if (usage[e] > frac.x[e] + tol) return "capacity exceeded on edge " + std::to_string(e);
  }
  return {};
}

std::string lp_dump(const PoiseLP& lp) { return to_lp_format(lp.program); }

}  // namespace polycast
