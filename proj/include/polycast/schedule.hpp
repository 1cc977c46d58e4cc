#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "polycast/graph.hpp"

namespace polycast {

using MessageSet = boost::dynamic_bitset<>;

/// One telephone round: a matching of calls, each an edge of the graph.
using TelephoneRound = std::vector<Edge>;
/// One radio round: the set of transmitting nodes.
using RadioRound = std::vector<Node>;

struct TelephoneSchedule {
  std::vector<TelephoneRound> rounds;

  int length() const { return static_cast<int>(rounds.size()); }
  void append(const TelephoneSchedule& other);
  /// Round-by-round union of schedules on vertex-disjoint node sets.
  /// Throws Internal if two merged calls share a node.
  void merge_parallel(const TelephoneSchedule& other);
  TelephoneSchedule reversed() const;
};

struct RadioSchedule {
  std::vector<RadioRound> rounds;

  int length() const { return static_cast<int>(rounds.size()); }
  void append(const RadioSchedule& other);
};

/// holds[v] = messages at v. Message ids are originating node ids.
struct PossessionState {
  std::vector<MessageSet> holds;

  /// Every node holds exactly its own message.
  static PossessionState own_messages(int node_count);
  /// Only the listed sources hold their own message.
  static PossessionState sources_only(int node_count, std::span<const Node> sources);

  int node_count() const { return static_cast<int>(holds.size()); }
  bool has(Node v, int message) const { return holds[v].test(message); }
};

struct RadioSemantics {
  /// A node may receive in a round in which it also transmits.
  bool receive_while_transmitting = true;
};

/// Throws InvalidSchedule if a round is not a matching of graph edges.
void validate_telephone(const Graph& g, const TelephoneSchedule& sched);
void validate_telephone_round(const Graph& g, const TelephoneRound& round);
void validate_radio(const Graph& g, const RadioSchedule& sched);

PossessionState simulate_telephone(const Graph& g, PossessionState state,
                                   const TelephoneSchedule& sched);
void apply_telephone_round(PossessionState& state, const TelephoneRound& round);

PossessionState simulate_radio(const Graph& g, PossessionState state,
                               const RadioSchedule& sched, RadioSemantics semantics = {});
void apply_radio_round(const Graph& g, PossessionState& state, const RadioRound& round,
                       RadioSemantics semantics = {});

/// Nodes that receive in a round: exactly one neighbor transmits. Entry is the
/// unique transmitting neighbor, or -1.
std::vector<Node> radio_receptions(const Graph& g, const RadioRound& round,
                                   RadioSemantics semantics = {});

struct DemandCheck {
  bool met = true;
  std::vector<DemandPair> unmet;
};

DemandCheck check_demands_met(const PossessionState& final_state, const DemandSet& demands);
/// Every node holds every message.
bool all_pairs_possession(const PossessionState& final_state);

// Telephone file: one line per round, calls `u-v` separated by spaces, an empty
// line is an idle round. Radio file: one line per round, transmitter ids.
void write_telephone(std::ostream& out, const TelephoneSchedule& sched);
TelephoneSchedule read_telephone(std::istream& in);
void write_radio(std::ostream& out, const RadioSchedule& sched);
RadioSchedule read_radio(std::istream& in);

std::string telephone_to_string(const TelephoneSchedule& sched);
std::string radio_to_string(const RadioSchedule& sched);

}  // namespace polycast
