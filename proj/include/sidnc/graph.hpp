#pragma once

#include "sidnc/coding_set.hpp"
#include "sidnc/index_set.hpp"
#include "sidnc/packet_state.hpp"

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace sidnc {

using Edge = std::pair<std::size_t, std::size_t>;

/// Simple undirected graph stored as a dense symmetric adjacency bit matrix.
class Graph {
public:
  Graph() = default;
  /// Edgeless graph.
  explicit Graph(std::size_t vertices);
  static Graph complete(std::size_t vertices);
  static Graph from_edges(std::size_t vertices, const std::vector<Edge>& edges);

  std::size_t vertex_count() const { return adjacency_.size(); }
  std::size_t edge_count() const;
  bool adjacent(std::size_t u, std::size_t v) const { return adjacency_[u].test(v); }
  const IndexSet& neighbors(std::size_t v) const { return adjacency_[v]; }
  std::size_t degree(std::size_t v) const { return adjacency_[v].count(); }
  std::size_t max_degree() const;
  IndexSet all_vertices() const { return full_index_set(vertex_count()); }

  void add_edge(std::size_t u, std::size_t v);
  void remove_edge(std::size_t u, std::size_t v);

  Graph complement() const;
  /// Subgraph induced by `vertices`, relabelled 0..m-1 in the given order.
  Graph induced(const std::vector<std::size_t>& vertices) const;
  /// Edges (u < v) in lexicographic order.
  std::vector<Edge> edges() const;

  bool operator==(const Graph&) const = default;

private:
  std::vector<IndexSet> adjacency_;
};

/// Packet graph: vertex k is packet k; an edge joins packets no receiver wants together.
using SIdncGraph = Graph;

struct GVertex {
  std::size_t receiver;
  std::size_t packet;
  bool operator==(const GVertex&) const = default;
};

/// One vertex per (receiver, packet) 1-entry of the source matrix, in
/// receiver-major order.
struct GIdncGraph {
  std::size_t packets = 0;
  std::size_t receivers = 0;
  std::vector<GVertex> vertices;
  Graph graph;

  /// Vertices representing `packet`.
  IndexSet vertices_of(std::size_t packet) const;
  /// Union of the packets of the given vertices.
  CodingSet packets_of(const IndexSet& vertex_set) const;
};

/// Packets wanted by nobody come out universal (adjacent to every vertex).
SIdncGraph build_sidnc_graph(const StateFeedbackMatrix& sfm);
Graph complement(const Graph& g);
GIdncGraph build_gidnc_graph(const StateFeedbackMatrix& sfm);
/// Packets i and j are adjacent iff every vertex of p_i is adjacent to every
/// vertex of p_j in `g` (vacuously true when either has no vertex).
SIdncGraph affiliated_sidnc_graph(const GIdncGraph& g);

bool is_clique(const Graph& g, const IndexSet& vertices);
bool is_clique(const Graph& g, const CodingSet& vertices);

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

/// Every coding set must be an S-IDNC clique and the union must cover
/// every wanted packet. Violations are collected, never thrown.
ValidationReport validate_solution(const StateFeedbackMatrix& sfm, const Solution& solution);

/// Undirected DOT, labels "p<k>" (1-based), edges in lexicographic order.
std::string to_dot(const SIdncGraph& g, const std::string& name = "sidnc");
/// Labels "v<n>,<k>" (1-based).
std::string to_dot(const GIdncGraph& g, const std::string& name = "gidnc");

} // namespace sidnc
