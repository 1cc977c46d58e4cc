#include "polycast/graph_io.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "polycast/error.hpp"

namespace polycast {

namespace {

long long read_int(std::istream& in, const char* what) {
  long long x = 0;
  if (!(in >> x)) fail(ErrorCode::InvalidInput, std::string("expected ") + what);
  return x;
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  ensure(in.good(), ErrorCode::InvalidInput, "cannot open " + path);
  return in;
}

}  // namespace

Graph read_graph(std::istream& in) {
  const long long n = read_int(in, "node count");
  const long long m = read_int(in, "edge count");
  ensure(n >= 1 && m >= 0, ErrorCode::InvalidInput, "bad graph header");
  Graph g(static_cast<int>(n));
  for (long long i = 0; i < m; ++i) {
    const auto u = read_int(in, "edge endpoint");
    const auto v = read_int(in, "edge endpoint");
    g.add_edge(static_cast<Node>(u), static_cast<Node>(v));
  }
  return g;
}

void write_graph(std::ostream& out, const Graph& g) {
  auto edges = g.edges();
  std::sort(edges.begin(), edges.end());
  out << g.node_count() << ' ' << edges.size() << '\n';
  for (const Edge& e : edges) out << e.u << ' ' << e.v << '\n';
}

MultiGraph read_multigraph(std::istream& in) {
  const long long n = read_int(in, "node count");
  const long long m = read_int(in, "edge count");
  ensure(n >= 1 && m >= 0, ErrorCode::InvalidInput, "bad multigraph header");
  MultiGraph g(static_cast<int>(n));
  std::string line;
  std::getline(in, line);
  long long lines = 0;
  while (lines < m && std::getline(in, line)) {
    std::istringstream ls(line);
    long long u = 0, v = 0, c = 1;
    if (!(ls >> u >> v)) continue;
    if (!(ls >> c)) c = 1;
    g.add(static_cast<Node>(u), static_cast<Node>(v), c);
    ++lines;
  }
  ensure(lines == m, ErrorCode::InvalidInput, "truncated multigraph");
  return g;
}

void write_multigraph(std::ostream& out, const MultiGraph& g) {
  auto links = g.links();
  std::sort(links.begin(), links.end(), [](const auto& a, const auto& b) {
    return std::tie(a.u, a.v) < std::tie(b.u, b.v);
  });
  out << g.node_count() << ' ' << links.size() << '\n';
  for (const auto& l : links) out << l.u << ' ' << l.v << ' ' << l.multiplicity << '\n';
}

DemandSet read_demands(std::istream& in) {
  const long long k = read_int(in, "demand count");
  ensure(k >= 0, ErrorCode::InvalidInput, "bad demand header");
  DemandSet d;
  for (long long i = 0; i < k; ++i) {
    const auto s = read_int(in, "demand source");
    const auto t = read_int(in, "demand sink");
    d.add(static_cast<Node>(s), static_cast<Node>(t));
  }
  return d;
}

void write_demands(std::ostream& out, const DemandSet& d) {
  out << d.size() << '\n';
  for (const auto& p : d.pairs()) out << p.source << ' ' << p.sink << '\n';
}

std::vector<long long> read_weights(std::istream& in, int node_count) {
  std::vector<long long> w(node_count, 0);
  for (int v = 0; v < node_count; ++v) {
    w[v] = read_int(in, "node weight");
    ensure(w[v] >= 0, ErrorCode::InvalidInput, "negative weight");
  }
  return w;
}

Graph load_graph(const std::string& path) {
  auto in = open_input(path);
  return read_graph(in);
}

MultiGraph load_multigraph(const std::string& path) {
  auto in = open_input(path);
  return read_multigraph(in);
}

DemandSet load_demands(const std::string& path) {
  auto in = open_input(path);
  return read_demands(in);
}

std::vector<Node> parse_node_list(const std::string& spec) {
  std::string text = spec;
  if (std::ifstream file(spec); file.good()) {
    std::ostringstream buf;
    buf << file.rdbuf();
    text = buf.str();
  }
  std::replace(text.begin(), text.end(), ',', ' ');
  std::istringstream in(text);
  std::vector<Node> out;
  long long x = 0;
  while (in >> x) out.push_back(static_cast<Node>(x));
  ensure(in.eof(), ErrorCode::InvalidInput, "bad node list: " + spec);
  return out;
}

std::string graph_to_string(const Graph& g) {
  std::ostringstream out;
  write_graph(out, g);
  return out.str();
}

std::string demands_to_string(const DemandSet& d) {
  std::ostringstream out;
  write_demands(out, d);
  return out.str();
}

}  // namespace polycast
