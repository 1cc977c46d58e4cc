#include "polycast/schedule.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

#include "polycast/error.hpp"

namespace polycast {

void TelephoneSchedule::append(const TelephoneSchedule& other) {
  rounds.insert(rounds.end(), other.rounds.begin(), other.rounds.end());
}

void TelephoneSchedule::merge_parallel(const TelephoneSchedule& other) {
  if (other.rounds.size() > rounds.size()) rounds.resize(other.rounds.size());
  for (std::size_t i = 0; i < other.rounds.size(); ++i) {
    auto& mine = rounds[i];
    for (const Edge& call : other.rounds[i]) {
      for (const Edge& c : mine) {
        ensure(c.u != call.u && c.u != call.v && c.v != call.u && c.v != call.v,
               ErrorCode::Internal, "parallel schedules share a node");
      }
    }
    mine.insert(mine.end(), other.rounds[i].begin(), other.rounds[i].end());
  }
}

TelephoneSchedule TelephoneSchedule::reversed() const {
  TelephoneSchedule out;
  out.rounds.assign(rounds.rbegin(), rounds.rend());
  return out;
}

void RadioSchedule::append(const RadioSchedule& other) {
  rounds.insert(rounds.end(), other.rounds.begin(), other.rounds.end());
}

PossessionState PossessionState::own_messages(int node_count) {
  PossessionState s;
  s.holds.assign(node_count, MessageSet(node_count));
  for (Node v = 0; v < node_count; ++v) s.holds[v].set(v);
  return s;
}

PossessionState PossessionState::sources_only(int node_count, std::span<const Node> sources) {
  PossessionState s;
  s.holds.assign(node_count, MessageSet(node_count));
  for (Node v : sources) s.holds[v].set(v);
  return s;
}

void validate_telephone_round(const Graph& g, const TelephoneRound& round) {
  std::vector<char> busy(g.node_count(), 0);
  for (const Edge& call : round) {
    ensure(g.has_edge(call.u, call.v), ErrorCode::InvalidSchedule,
           "call on non-edge " + std::to_string(call.u) + "-" + std::to_string(call.v));
    ensure(!busy[call.u] && !busy[call.v], ErrorCode::InvalidSchedule,
           "round is not a matching at call " + std::to_string(call.u) + "-" +
               std::to_string(call.v));
    busy[call.u] = busy[call.v] = 1;
  }
}

void validate_telephone(const Graph& g, const TelephoneSchedule& sched) {
  for (const auto& round : sched.rounds) validate_telephone_round(g, round);
}

void validate_radio(const Graph& g, const RadioSchedule& sched) {
  for (const auto& round : sched.rounds) {
    std::vector<char> seen(g.node_count(), 0);
    for (Node x : round) {
      ensure(g.valid_node(x), ErrorCode::InvalidSchedule,
             "unknown transmitter " + std::to_string(x));
      ensure(!seen[x], ErrorCode::InvalidSchedule, "repeated transmitter");
      seen[x] = 1;
    }
  }
}

void apply_telephone_round(PossessionState& state, const TelephoneRound& round) {
  for (const Edge& call : round) {
    MessageSet merged = state.holds[call.u] | state.holds[call.v];
    state.holds[call.u] = merged;
    state.holds[call.v] = std::move(merged);
  }
}

PossessionState simulate_telephone(const Graph& g, PossessionState state,
                                   const TelephoneSchedule& sched) {
  ensure(state.node_count() == g.node_count(), ErrorCode::InvalidInput,
         "possession state size mismatch");
  for (const auto& round : sched.rounds) {
    validate_telephone_round(g, round);
    apply_telephone_round(state, round);
  }
  return state;
}

std::vector<Node> radio_receptions(const Graph& g, const RadioRound& round,
                                   RadioSemantics semantics) {
  const int n = g.node_count();
  std::vector<int> count(n, 0);
  std::vector<Node> sender(n, -1);
  std::vector<char> transmitting(n, 0);
  for (Node x : round) {
    transmitting[x] = 1;
    for (Node w : g.neighbors(x)) {
      ++count[w];
      sender[w] = x;
    }
  }
  for (Node w = 0; w < n; ++w) {
    const bool hears = count[w] == 1 &&
                       (semantics.receive_while_transmitting || !transmitting[w]);
    if (!hears) sender[w] = -1;
  }
  return sender;
}

void apply_radio_round(const Graph& g, PossessionState& state, const RadioRound& round,
                       RadioSemantics semantics) {
  const auto sender = radio_receptions(g, round, semantics);
  std::vector<MessageSet> sent;
  sent.reserve(round.size());
  // Transmitters send the set they held at the start of the round.
  std::vector<int> slot(g.node_count(), -1);
  for (Node x : round) {
    slot[x] = static_cast<int>(sent.size());
    sent.push_back(state.holds[x]);
  }
  for (Node w = 0; w < g.node_count(); ++w)
    if (sender[w] >= 0) state.holds[w] |= sent[slot[sender[w]]];
}

PossessionState simulate_radio(const Graph& g, PossessionState state,
                               const RadioSchedule& sched, RadioSemantics semantics) {
  ensure(state.node_count() == g.node_count(), ErrorCode::InvalidInput,
         "possession state size mismatch");
  validate_radio(g, sched);
  for (const auto& round : sched.rounds) apply_radio_round(g, state, round, semantics);
  return state;
}

DemandCheck check_demands_met(const PossessionState& final_state, const DemandSet& demands) {
  DemandCheck out;
  for (const auto& p : demands.pairs()) {
    if (!final_state.has(p.sink, p.source)) {
      out.met = false;
      out.unmet.push_back(p);
    }
  }
  return out;
}

bool all_pairs_possession(const PossessionState& final_state) {
  return std::all_of(final_state.holds.begin(), final_state.holds.end(),
                     [](const MessageSet& m) { return m.all(); });
}

void write_telephone(std::ostream& out, const TelephoneSchedule& sched) {
  for (const auto& round : sched.rounds) {
    auto calls = round;
    for (auto& c : calls) c = make_edge(c.u, c.v);
    std::sort(calls.begin(), calls.end());
    for (std::size_t i = 0; i < calls.size(); ++i)
      out << (i ? " " : "") << calls[i].u << '-' << calls[i].v;
    out << '\n';
  }
}

TelephoneSchedule read_telephone(std::istream& in) {
  TelephoneSchedule sched;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    TelephoneRound round;
    std::string token;
    while (ls >> token) {
      const auto dash = token.find('-');
      ensure(dash != std::string::npos && dash > 0, ErrorCode::InvalidInput,
             "bad call token '" + token + "'");
      try {
        const Node u = std::stoi(token.substr(0, dash));
        const Node v = std::stoi(token.substr(dash + 1));
        round.push_back(make_edge(u, v));
      } catch (const std::logic_error&) {
        fail(ErrorCode::InvalidInput, "bad call token '" + token + "'");
      }
    }
    sched.rounds.push_back(std::move(round));
  }
  return sched;
}

void write_radio(std::ostream& out, const RadioSchedule& sched) {
  for (const auto& round : sched.rounds) {
    auto tx = round;
    std::sort(tx.begin(), tx.end());
    for (std::size_t i = 0; i < tx.size(); ++i) out << (i ? " " : "") << tx[i];
    out << '\n';
  }
}

RadioSchedule read_radio(std::istream& in) {
  RadioSchedule sched;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    RadioRound round;
    long long x = 0;
    while (ls >> x) round.push_back(static_cast<Node>(x));
    ensure(ls.eof(), ErrorCode::InvalidInput, "bad radio round '" + line + "'");
    sched.rounds.push_back(std::move(round));
  }
  return sched;
}

std::string telephone_to_string(const TelephoneSchedule& sched) {
  std::ostringstream out;
  write_telephone(out, sched);
  return out.str();
}

std::string radio_to_string(const RadioSchedule& sched) {
  std::ostringstream out;
  write_radio(out, sched);
  return out.str();
}

}  // namespace polycast
