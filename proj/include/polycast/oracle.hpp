#pragma once

#include <span>

#include "polycast/graph.hpp"
#include "polycast/schedule.hpp"

namespace polycast {

struct TelephoneOracleResult {
  int length = 0;
  TelephoneSchedule witness;
  long long states = 0;
};

struct RadioOracleResult {
  int length = 0;
  RadioSchedule witness;
  long long states = 0;
};

/// Exact minimum telephone schedule length meeting the demands. Breadth-first
/// over possession states, one maximal matching of useful calls per step,
/// discarding dominated states. Throws Exceeded past max_rounds or when the
/// instance is too large (more than 16 nodes or 32 sources).
TelephoneOracleResult brute_force_telephone(const Graph& g, const DemandSet& demands,
                                            int max_rounds);

/// Exact minimum radio schedule length meeting the demands, enumerating
/// subsets of nodes that hold something a neighbor lacks. Limited to 7 nodes.
RadioOracleResult brute_force_radio(const Graph& g, const DemandSet& demands, int max_rounds,
                                    RadioSemantics semantics = {});

struct PoiseOptimum {
  int poise = 0;
  std::vector<Edge> edges;
};

/// Minimum of (diameter + max degree) over trees of g containing root and
/// every terminal. Exhaustive over edge subsets; throws Exceeded beyond 24
/// edges.
PoiseOptimum exhaustive_min_poise(const Graph& g, Node root, std::span<const Node> terminals);

}  // namespace polycast
