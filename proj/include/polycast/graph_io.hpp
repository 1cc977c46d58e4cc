#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "polycast/graph.hpp"

namespace polycast {

// Graph text format: `n m` then m lines `u v` with u < v.
// Demand file: `k` then k lines `s t`.

Graph read_graph(std::istream& in);
void write_graph(std::ostream& out, const Graph& g);

/// Same layout as the graph format; repeated lines add parallel copies and an
/// optional third column gives a multiplicity.
MultiGraph read_multigraph(std::istream& in);
void write_multigraph(std::ostream& out, const MultiGraph& g);

DemandSet read_demands(std::istream& in);
void write_demands(std::ostream& out, const DemandSet& d);

/// One weight per node, whitespace separated.
std::vector<long long> read_weights(std::istream& in, int node_count);

Graph load_graph(const std::string& path);
MultiGraph load_multigraph(const std::string& path);
DemandSet load_demands(const std::string& path);

/// Reads a node list given either inline ("1,4,7") or as a file of ids.
std::vector<Node> parse_node_list(const std::string& spec);

std::string graph_to_string(const Graph& g);
std::string demands_to_string(const DemandSet& d);

}  // namespace polycast
