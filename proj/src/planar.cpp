#include "polycast/planar.hpp"

#include <algorithm>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>
#include <boost/graph/make_biconnected_planar.hpp>
#include <boost/graph/make_connected.hpp>
#include <boost/graph/make_maximal_planar.hpp>
#include <boost/graph/planar_face_traversal.hpp>

#include "polycast/error.hpp"

namespace polycast {

namespace {

using BoostGraph =
    boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS,
                          boost::no_property,
                          boost::property<boost::edge_index_t, std::size_t>>;
using EdgeDesc = boost::graph_traits<BoostGraph>::edge_descriptor;
using Embedding = std::vector<std::vector<EdgeDesc>>;

BoostGraph to_boost(const Graph& g) {
  BoostGraph b(g.node_count());
  for (const Edge& e : g.edges()) boost::add_edge(e.u, e.v, b);
  return b;
}

void reindex(BoostGraph& b) {
  auto index = boost::get(boost::edge_index, b);
  std::size_t i = 0;
  for (auto [it, end] = boost::edges(b); it != end; ++it) boost::put(index, *it, i++);
}

bool embed(BoostGraph& b, Embedding& embedding) {
  reindex(b);
  embedding.assign(boost::num_vertices(b), {});
  return boost::boyer_myrvold_planarity_test(
      boost::boyer_myrvold_params::graph = b,
      boost::boyer_myrvold_params::embedding = &embedding[0]);
}

struct FaceCollector : public boost::planar_face_traversal_visitor {
  std::vector<std::vector<Node>> faces;
  void begin_face() { faces.emplace_back(); }
  template <typename Vertex>
  void next_vertex(Vertex v) {
    faces.back().push_back(static_cast<Node>(v));
  }
};

}  // namespace

bool is_planar(const Graph& g) {
  BoostGraph b = to_boost(g);
  return boost::boyer_myrvold_planarity_test(b);
}

Triangulation triangulate(const Graph& g) {
  const int n = g.node_count();
  Triangulation out;
  out.graph = g;
  BoostGraph b = to_boost(g);
  Embedding embedding;
  ensure(embed(b, embedding), ErrorCode::NotPlanar, "graph is not planar");
  if (n < 3) return out;

  boost::make_connected(b);
  ensure(embed(b, embedding), ErrorCode::Internal, "lost planarity while connecting");
  boost::make_biconnected_planar(b, &embedding[0]);
  ensure(embed(b, embedding), ErrorCode::Internal, "lost planarity while biconnecting");
  boost::make_maximal_planar(b, &embedding[0]);
  ensure(embed(b, embedding), ErrorCode::Internal, "lost planarity while triangulating");

  for (auto [it, end] = boost::edges(b); it != end; ++it) {
    const Node u = static_cast<Node>(boost::source(*it, b));
    const Node v = static_cast<Node>(boost::target(*it, b));
    if (u != v && !out.graph.has_edge(u, v)) out.graph.add_edge(u, v);
  }
  FaceCollector collector;
  boost::planar_face_traversal(b, &embedding[0], collector);
  for (auto& face : collector.faces) {
    ensure(face.size() == 3, ErrorCode::Internal, "triangulation left a non-triangular face");
    std::sort(face.begin(), face.end());
    out.faces.push_back({face[0], face[1], face[2]});
  }
  std::sort(out.faces.begin(), out.faces.end());
  return out;
}

}  // namespace polycast
