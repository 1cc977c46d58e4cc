#pragma once

#include <span>
#include <string>
#include <vector>

#include "polycast/graph.hpp"
#include "polycast/simplex.hpp"

namespace polycast {

struct WeightedPath {
  Path path;  // oriented from the pair's source to its sink
  double weight = 0.0;

  int hops() const { return static_cast<int>(path.size()) - 1; }
};

/// Compact POISE-LP: x(e) per edge, a unit flow per demand pair on the two
/// arcs of every edge, degree budget L1 and length budget L2.
struct PoiseLP {
  Graph graph;
  std::vector<DemandPair> pairs;
  LinearProgram program;
  int x_base = 0;
  int flow_base = 0;
  int l1_var = 0;
  int l2_var = 0;

  /// Arc 2e runs edge(e).u -> edge(e).v, arc 2e+1 the reverse.
  int flow_var(int pair, int arc) const {
    return flow_base + pair * 2 * graph.edge_count() + arc;
  }
  int x_var(int edge) const { return x_base + edge; }
};

struct PoiseFractional {
  double value = 0.0;  // L = L1 + L2
  double l1 = 0.0;
  double l2 = 0.0;
  std::vector<double> x;  // per edge of the graph
  std::vector<DemandPair> pairs;
  /// Per pair: weighted paths summing to 1 (the y_t(P) values).
  std::vector<std::vector<WeightedPath>> paths;
  long simplex_iterations = 0;
  /// Master solves needed by path generation (1 for the compact method).
  int rounds = 0;
};

inline constexpr double kFeasibilityTolerance = 1e-9;
inline constexpr double kOptimalityTolerance = 1e-7;

/// Throws InfeasiblePair if some pair is disconnected in g.
PoiseLP build_poise_lp(const Graph& g, const DemandSet& demands);

enum class LpMethod {
  /// Path formulation of the same program: paths are priced by shortest
  /// paths under the current duals, capacity rows exist only for edges on
  /// generated paths. Same optimum as the compact program, far smaller.
  PathGeneration,
  /// The compact edge-flow program solved as is, then decomposed.
  Compact,
};

/// Solves the program and decomposes every pair's flow into paths.
PoiseFractional solve_lp(const PoiseLP& lp, LpMethod method = LpMethod::PathGeneration);

/// Convenience: build + solve.
PoiseFractional solve_poise(const Graph& g, const DemandSet& demands,
                            LpMethod method = LpMethod::PathGeneration);

/// Path decomposition of one unit s-t flow given per-arc values (arc layout as
/// in PoiseLP). Cycles are cancelled and dropped. Throws DecompositionResidue
/// when the flow is not a unit s-t flow up to 1e-9 after cycle removal.
std::vector<WeightedPath> decompose_flows(const Graph& g, Node s, Node t,
                                          std::span<const double> arc_flow);

/// Builds the fractional solution induced by explicit weighted paths:
/// x(e) = max over pairs of the path mass on e, L1 = max fractional degree,
/// L2 = max average path length.
PoiseFractional fractional_from_paths(const Graph& g, std::vector<DemandPair> pairs,
                                      std::vector<std::vector<WeightedPath>> paths);

/// Re-checks the PoiseFractional invariants; returns a description of the
/// first violation, or an empty string.
std::string check_fractional(const Graph& g, const PoiseFractional& frac);

std::string lp_dump(const PoiseLP& lp);

}  // namespace polycast
