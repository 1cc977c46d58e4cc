// polycast command-line front end.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "polycast/error.hpp"
#include "polycast/generate.hpp"
#include "polycast/gossip.hpp"
#include "polycast/graph_io.hpp"
#include "polycast/multicast.hpp"
#include "polycast/multiflow.hpp"
#include "polycast/oracle.hpp"
#include "polycast/poise_lp.hpp"
#include "polycast/rounding.hpp"
#include "polycast/separator.hpp"
#include "polycast/suite.hpp"

using namespace polycast;

namespace {

struct Global {
  std::uint64_t seed = 0;
  std::string out;
  std::string metrics;
};

// Output goes to a file when a path is given, else to the fallback stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (path.empty() || path == "-") return;
    file_ = std::make_unique<std::ofstream>(path);
    ensure(file_->good(), ErrorCode::InvalidInput, "cannot write " + path);
    stream_ = file_.get();
  }
  std::ostream& operator*() { return *stream_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

void emit_metrics(const Global& gl, const std::string& line) {
  Sink s(gl.metrics, std::cerr);
  *s << line << '\n';
}

void emit_output(const Global& gl, const std::string& text) {
  Sink s(gl.out, std::cout);
  *s << text;
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

std::string path_line(const Path& p) {
  std::string s;
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? " " : "") + std::to_string(p[i]);
  return s;
}

RadioSemantics semantics(bool half_duplex) { return RadioSemantics{!half_duplex}; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dissemination schedules in the telephone and radio models"};
  app.require_subcommand(1);
  app.fallthrough();
  Global gl;
  app.add_option("--seed", gl.seed, "Random seed")->default_val(0);
  app.add_option("--out", gl.out, "Output file (default stdout)");
  app.add_option("--metrics", gl.metrics, "Metrics file (stderr when given without a path)")
          ->expected(0, 1);

  std::string graph_file, demands_file, schedule_file, model = "telephone";
  long long grid = kDefaultGrid;
  bool half_duplex = false;

  auto* solve = app.add_subcommand("solve", "Planar multicommodity multicast schedule");
  solve->add_option("--model", model)->check(CLI::IsMember({"telephone"}));
  solve->add_option("--graph", graph_file)->required();
  solve->add_option("--demands", demands_file)->required();
  solve->add_option("--grid", grid);

  auto* gossip = app.add_subcommand("gossip", "Radio gossip schedule");
  gossip->add_option("--graph", graph_file)->required();

  bool all_pairs = false;
  auto* validate = app.add_subcommand("validate", "Check a schedule and its deliveries");
  validate->add_option("--model", model)->check(CLI::IsMember({"telephone", "radio"}));
  validate->add_option("--graph", graph_file)->required();
  validate->add_option("--schedule", schedule_file)->required();
  validate->add_option("--demands", demands_file);
  validate->add_flag("--gossip", all_pairs, "Require every node to hold every message");
  validate->add_flag("--half-duplex", half_duplex);

  int max_rounds = 0;
  auto* oracle = app.add_subcommand("oracle", "Exact optimum by exhaustive search");
  oracle->add_option("--model", model)->check(CLI::IsMember({"telephone", "radio"}));
  oracle->add_option("--graph", graph_file)->required();
  oracle->add_option("--demands", demands_file);
  oracle->add_flag("--gossip", all_pairs);
  oracle->add_option("--max-rounds", max_rounds);
  oracle->add_flag("--half-duplex", half_duplex);

  std::string kind, demands_out;
  InstanceParams params;
  auto* gen = app.add_subcommand("gen", "Generate an instance");
  gen->add_option("--kind", kind)->required()->check(
      CLI::IsMember({"grid", "path", "star", "dary-tree", "random-planar"}));
  gen->add_option("--rows", params.rows);
  gen->add_option("--cols", params.cols);
  gen->add_option("--n", params.n);
  gen->add_option("--d", params.d);
  gen->add_option("--depth", params.depth);
  gen->add_option("--pairs", params.pairs, "Random pairs; -1 for gossip");
  gen->add_option("--demands-out", demands_out);

  std::string lp_action = "solve";
  auto* lp = app.add_subcommand("lp", "Build and dump or solve the poise program");
  lp->add_option("action", lp_action)->check(CLI::IsMember({"dump", "solve"}));
  lp->add_option("--graph", graph_file)->required();
  lp->add_option("--demands", demands_file)->required();
  bool compact = false;
  lp->add_flag("--compact", compact, "Solve the edge-flow program directly");

  std::string weights_file, component_spec;
  auto* separator = app.add_subcommand("separator", "Balanced 3-path separator");
  separator->add_option("--graph", graph_file)->required();
  separator->add_option("--weights", weights_file);
  separator->add_option("--component", component_spec);

  Node root = 0;
  std::string terminals_spec;
  auto* round = app.add_subcommand("round-poise", "Round the rooted program into a tree");
  round->add_option("--graph", graph_file)->required();
  round->add_option("--root", root)->required();
  round->add_option("--terminals", terminals_spec)->required();
  round->add_option("--grid", grid);

  auto* pack = app.add_subcommand("pack", "Edge-disjoint T-paths in a multigraph");
  pack->add_option("--graph", graph_file)->required();
  pack->add_option("--terminals", terminals_spec)->required();

  std::string manifest_file;
  bool no_timing = false;
  auto* suite = app.add_subcommand("suite", "Run a manifest of instances");
  suite->add_option("--manifest", manifest_file)->required();
  suite->add_flag("--no-timing", no_timing, "Leave runtimes out of the report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*solve) {
      const Graph g = load_graph(graph_file);
      const DemandSet d = load_demands(demands_file);
      const MulticastResult r = planar_mc_multicast(g, d, {gl.seed, grid});
      emit_output(gl, telephone_to_string(r.schedule));
      emit_metrics(gl, "depth=" + std::to_string(r.depth) + " lp_root=" + fmt(r.lp_root) +
                           " length=" + std::to_string(r.schedule.length()) +
                           " gamma=" + fmt(r.gamma) + " max_scaling=" + fmt(r.max_scaling));
    } else if (*gossip) {
      const Graph g = load_graph(graph_file);
      const GossipResult r = radio_gossip(g, gl.seed);
      emit_output(gl, radio_to_string(r.schedule));
      emit_metrics(gl, "L=" + std::to_string(r.L) + " depth=" + std::to_string(r.depth) +
                           " length=" + std::to_string(r.schedule.length()) +
                           " gather=" + std::to_string(r.gather_rounds));
    } else if (*validate) {
      const Graph g = load_graph(graph_file);
      std::ifstream in(schedule_file);
      ensure(in.good(), ErrorCode::InvalidInput, "cannot read " + schedule_file);
      const int n = g.node_count();
      const PossessionState start = PossessionState::own_messages(n);
      const DemandSet d = demands_file.empty() ? DemandSet::gossip(n) : load_demands(demands_file);
      int length = 0;
      bool met = true;
      if (model == "radio") {
        const RadioSchedule s = read_radio(in);
        validate_radio(g, s);
        length = s.length();
        const auto st = simulate_radio(g, start, s, semantics(half_duplex));
        met = (all_pairs || demands_file.empty()) ? all_pairs_possession(st)
                                                  : check_demands_met(st, d).met;
      } else {
        const TelephoneSchedule s = read_telephone(in);
        validate_telephone(g, s);
        length = s.length();
        const auto st = simulate_telephone(g, start, s);
        met = all_pairs ? all_pairs_possession(st) : check_demands_met(st, d).met;
      }
      emit_output(gl, std::string(met ? "valid" : "unmet") + " length=" + std::to_string(length) + "\n");
      if (!met) return 2;
    } else if (*oracle) {
      const Graph g = load_graph(graph_file);
      const int n = g.node_count();
      const DemandSet d = (all_pairs || demands_file.empty()) ? DemandSet::gossip(n)
                                                               : load_demands(demands_file);
      const int limit = max_rounds > 0 ? max_rounds : 2 * n;
      if (model == "radio") {
        const auto r = brute_force_radio(g, d, limit, semantics(half_duplex));
        emit_output(gl, radio_to_string(r.witness));
        emit_metrics(gl, "opt=" + std::to_string(r.length) + " states=" + std::to_string(r.states));
      } else {
        const auto r = brute_force_telephone(g, d, limit);
        emit_output(gl, telephone_to_string(r.witness));
        emit_metrics(gl, "opt=" + std::to_string(r.length) + " states=" + std::to_string(r.states));
      }
    } else if (*gen) {
      const Instance inst = generate_instance(kind, params, gl.seed);
      emit_output(gl, graph_to_string(inst.graph));
      if (!demands_out.empty()) {
        Sink s(demands_out, std::cout);
        *s << demands_to_string(inst.demands);
      }
      emit_metrics(gl, "nodes=" + std::to_string(inst.graph.node_count()) + " edges=" +
                           std::to_string(inst.graph.edge_count()) +
                           " pairs=" + std::to_string(inst.demands.size()));
    } else if (*lp) {
      const Graph g = load_graph(graph_file);
      const DemandSet d = load_demands(demands_file);
      const PoiseLP program = build_poise_lp(g, d);
      if (lp_action == "dump") {
        emit_output(gl, lp_dump(program));
      } else {
        const PoiseFractional f =
            solve_lp(program, compact ? LpMethod::Compact : LpMethod::PathGeneration);
        std::ostringstream out;
        for (std::size_t i = 0; i < f.pairs.size(); ++i)
          for (const WeightedPath& wp : f.paths[i])
            out << f.pairs[i].source << ' ' << f.pairs[i].sink << ' ' << fmt(wp.weight) << " : "
                << path_line(wp.path) << '\n';
        emit_output(gl, out.str());
        emit_metrics(gl, "lp=" + fmt(f.value) + " l1=" + fmt(f.l1) + " l2=" + fmt(f.l2));
      }
    } else if (*separator) {
      const Graph g = load_graph(graph_file);
      std::vector<long long> weights(g.node_count(), 1);
      if (!weights_file.empty()) {
        std::ifstream in(weights_file);
        ensure(in.good(), ErrorCode::InvalidInput, "cannot read " + weights_file);
        weights = read_weights(in, g.node_count());
      }
      const std::vector<Node> component =
          component_spec.empty() ? std::vector<Node>{} : parse_node_list(component_spec);
      SeparatorStats stats;
      const PathSeparator sep = find_3path_separator(g, weights, component, &stats);
      std::string text = std::to_string(sep.root) + "\n";
      for (const Path& p : sep.paths) text += path_line(p) + "\n";
      emit_output(gl, text);
      emit_metrics(gl, "paths=" + std::to_string(sep.paths.size()) +
                           " nodes=" + std::to_string(sep.nodes().size()) +
                           " max_component_weight=" + std::to_string(stats.max_component_weight));
    } else if (*round) {
      const Graph g = load_graph(graph_file);
      const std::vector<Node> terminals = parse_node_list(terminals_spec);
      const PoiseFractional f = solve_poise(g, DemandSet::rooted(root, terminals));
      RoundingOptions ro;
      ro.grid = grid;
      ro.seed = gl.seed;
      const PoiseTree t = round_poise_tree(g, root, terminals, f, ro);
      std::string text;
      for (const Edge& e : t.edges) text += std::to_string(e.u) + " " + std::to_string(e.v) + "\n";
      emit_output(gl, text);
      emit_metrics(gl, "poise=" + std::to_string(t.poise) + " degree=" + std::to_string(t.max_degree) +
                           " diameter=" + std::to_string(t.diameter) +
                           " iters=" + std::to_string(t.iterations) + " lp=" + fmt(f.value));
    } else if (*pack) {
      const MultiGraph g = load_multigraph(graph_file);
      const std::vector<Node> terminals = parse_node_list(terminals_spec);
      const TPathPacking p = pack_tpaths(g, terminals);
      verify_packing(g, terminals, p);
      std::string text;
      for (const TPath& tp : p.paths)
        for (long long c = 0; c < tp.count; ++c) text += path_line(tp.path) + "\n";
      emit_output(gl, text);
      emit_metrics(gl, "value=" + std::to_string(p.value) +
                           " lambda_sum=" + std::to_string(p.lambda_sum));
    } else if (*suite) {
      std::ifstream in(manifest_file);
      ensure(in.good(), ErrorCode::InvalidInput, "cannot read " + manifest_file);
      const auto base = std::filesystem::path(manifest_file).parent_path().string();
      const SuiteReport r = run_suite(parse_manifest(in, base.empty() ? "." : base));
      std::ostringstream json, table;
      write_report_json(json, r, !no_timing);
      write_report_table(table, r, !no_timing);
      emit_output(gl, json.str());
      emit_metrics(gl, table.str() + (r.passed() ? "suite=pass" : "suite=fail"));
      if (!r.passed()) return 2;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_status(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
