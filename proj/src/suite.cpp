#include "polycast/suite.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <istream>
#include <ostream>

#include <nlohmann/json.hpp>

#include "polycast/error.hpp"
#include "polycast/gossip.hpp"
#include "polycast/graph_io.hpp"
#include "polycast/multicast.hpp"
#include "polycast/oracle.hpp"

namespace polycast {

namespace {

using nlohmann::json;

const char* mode_name(SuiteMode m) { return m == SuiteMode::Gossip ? "gossip" : "multicast"; }

SuiteEntry parse_entry(const json& j, const std::string& base_dir, int index) {
  ensure(j.is_object(), ErrorCode::InvalidInput, "manifest instance must be an object");
  SuiteEntry e;
  e.name = j.value("name", "instance" + std::to_string(index));
  const std::string mode = j.value("mode", "multicast");
  ensure(mode == "multicast" || mode == "gossip", ErrorCode::InvalidInput,
         "unknown mode '" + mode + "'");
  e.mode = mode == "gossip" ? SuiteMode::Gossip : SuiteMode::Multicast;
  e.kind = j.value("kind", "");
  e.params.rows = j.value("rows", 0);
  e.params.cols = j.value("cols", 0);
  e.params.n = j.value("n", 0);
  e.params.d = j.value("d", 0);
  e.params.depth = j.value("depth", 0);
  e.params.pairs = j.value("pairs", 0);
  e.seed = j.value("seed", std::uint64_t{0});
  e.oracle = j.value("oracle", true);
  const auto resolve = [&](const std::string& p) {
    return p.empty() ? p : (std::filesystem::path(base_dir) / p).string();
  };
  e.graph_file = resolve(j.value("graph", ""));
  e.demands_file = resolve(j.value("demands", ""));
  ensure(!e.kind.empty() || !e.graph_file.empty(), ErrorCode::InvalidInput,
         "instance '" + e.name + "' needs a kind or a graph file");
  return e;
}

Instance load_entry(const SuiteEntry& e) {
  Instance inst;
  if (!e.kind.empty()) {
    inst = generate_instance(e.kind, e.params, e.seed);
  } else {
    inst.graph = load_graph(e.graph_file);
    if (!e.demands_file.empty()) inst.demands = load_demands(e.demands_file);
  }
  return inst;
}

void run_multicast(const SuiteEntry& e, const SuiteOptions& o, const Instance& inst, SuiteRow& row) {
  const Graph& g = inst.graph;
  row.pairs = static_cast<int>(inst.demands.distinct().size());
  MulticastOptions mo;
  mo.seed = e.seed;
  const MulticastResult r = planar_mc_multicast(g, inst.demands, mo);
  row.lp_value = r.lp_root;
  row.length = r.schedule.length();
  validate_telephone(g, r.schedule);
  row.valid = check_demands_met(
                  simulate_telephone(g, PossessionState::own_messages(g.node_count()), r.schedule),
                  inst.demands)
                  .met;
  if (e.oracle && g.node_count() <= o.telephone_oracle_nodes && !inst.demands.empty()) {
    const auto opt = brute_force_telephone(g, inst.demands, std::max(1, row.length));
    row.oracle_opt = opt.length;
  }
}

void run_gossip(const SuiteEntry& e, const SuiteOptions& o, const Instance& inst, SuiteRow& row) {
  const Graph& g = inst.graph;
  const int n = g.node_count();
  row.pairs = n * (n - 1);
  const GossipResult r = radio_gossip(g, e.seed);
  row.length = r.schedule.length();
  validate_radio(g, r.schedule);
  row.valid = all_pairs_possession(simulate_radio(g, PossessionState::own_messages(n), r.schedule));
  if (e.oracle && n <= o.radio_oracle_nodes && n >= 2) {
    const auto opt = brute_force_radio(g, DemandSet::gossip(n), std::max(1, row.length));
    row.oracle_opt = opt.length;
  }
}

std::string fixed(double x, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

}  // namespace

SuiteManifest parse_manifest(std::istream& in, const std::string& base_dir) {
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& ex) {
    fail(ErrorCode::InvalidInput, std::string("manifest: ") + ex.what());
  }
  SuiteManifest m;
  if (j.is_array()) j = json{{"instances", j}};
  ensure(j.is_object(), ErrorCode::InvalidInput, "manifest must be an object or an array");
  if (j.contains("ratio_bound")) m.ratio_bound = j["ratio_bound"].get<double>();
  const json list = j.value("instances", json::array());
  ensure(list.is_array(), ErrorCode::InvalidInput, "instances must be an array");
  for (std::size_t i = 0; i < list.size(); ++i)
    m.entries.push_back(parse_entry(list[i], base_dir, static_cast<int>(i)));
  return m;
}

bool SuiteReport::passed() const {
  for (const SuiteRow& r : rows) {
    if (!r.valid) return false;
    if (ratio_bound && r.ratio && *r.ratio > *ratio_bound) return false;
  }
  return true;
}

SuiteReport run_suite(const SuiteManifest& manifest, const SuiteOptions& options) {
  SuiteReport report;
  report.ratio_bound = manifest.ratio_bound;
  for (const SuiteEntry& e : manifest.entries) {
    SuiteRow row;
    row.instance = e.name;
    row.mode = e.mode;
    const auto start = std::chrono::steady_clock::now();
    try {
      const Instance inst = load_entry(e);
      row.nodes = inst.graph.node_count();
      if (e.mode == SuiteMode::Gossip)
        run_gossip(e, options, inst, row);
      else
        run_multicast(e, options, inst, row);
      if (row.oracle_opt && *row.oracle_opt > 0)
        row.ratio = static_cast<double>(row.length) / *row.oracle_opt;
    } catch (const std::exception& ex) {
      row.valid = false;
      row.error = ex.what();
    }
    row.runtime_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    report.rows.push_back(std::move(row));
  }
  return report;
}

void write_report_json(std::ostream& out, const SuiteReport& report, bool timing) {
  json rows = json::array();
  for (const SuiteRow& r : report.rows) {
    json row = {{"instance", r.instance}, {"mode", mode_name(r.mode)}, {"nodes", r.nodes},
                {"pairs", r.pairs},       {"length", r.length},        {"valid", r.valid}};
    row["lp_value"] = r.lp_value ? json(*r.lp_value) : json(nullptr);
    row["oracle_opt"] = r.oracle_opt ? json(*r.oracle_opt) : json(nullptr);
    row["ratio"] = r.ratio ? json(*r.ratio) : json(nullptr);
    if (timing) row["runtime_s"] = r.runtime_s;
    if (!r.error.empty()) row["error"] = r.error;
    rows.push_back(std::move(row));
  }
  json doc = {{"rows", rows}, {"passed", report.passed()}};
  if (report.ratio_bound) doc["ratio_bound"] = *report.ratio_bound;
  out << doc.dump(2) << '\n';
}

void write_report_table(std::ostream& out, const SuiteReport& report, bool timing) {
  char line[256];
  std::snprintf(line, sizeof line, "%-20s %-9s %5s %5s %10s %6s %6s %7s %s", "instance", "mode",
                "n", "k", "lp", "length", "opt", "ratio", timing ? "runtime_s valid" : "valid");
  out << line << '\n';
  for (const SuiteRow& r : report.rows) {
    const std::string lp = r.lp_value ? fixed(*r.lp_value, 4) : "-";
    const std::string opt = r.oracle_opt ? std::to_string(*r.oracle_opt) : "-";
    const std::string ratio = r.ratio ? fixed(*r.ratio, 3) : "-";
    std::snprintf(line, sizeof line, "%-20s %-9s %5d %5d %10s %6d %6s %7s", r.instance.c_str(),
                  mode_name(r.mode), r.nodes, r.pairs, lp.c_str(), r.length, opt.c_str(),
                  ratio.c_str());
    out << line;
    if (timing) out << ' ' << fixed(r.runtime_s, 3);
    out << " valid=" << (r.valid ? "true" : "false");
    if (!r.error.empty()) out << " error=\"" << r.error << '"';
    out << '\n';
  }
}

}  // namespace polycast
