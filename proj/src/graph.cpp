#include "sidnc/graph.hpp"

#include <sstream>
#include <stdexcept>

namespace sidnc {

Graph::Graph(std::size_t vertices) : adjacency_(vertices, IndexSet(vertices)) {}

Graph Graph::complete(std::size_t vertices) {
  Graph g(vertices);
  for (std::size_t v = 0; v < vertices; ++v) {
    g.adjacency_[v].set();
    g.adjacency_[v].reset(v);
  }
  return g;
}

Graph Graph::from_edges(std::size_t vertices, const std::vector<Edge>& edges) {
  Graph g(vertices);
  for (const auto& [u, v] : edges) g.add_edge(u, v);
  return g;
}

std::size_t Graph::edge_count() const {
  std::size_t twice = 0;
  for (const auto& row : adjacency_) twice += row.count();
  return twice / 2;
}

std::size_t Graph::max_degree() const {
  std::size_t best = 0;
  for (const auto& row : adjacency_) best = std::max(best, row.count());
  return best;
}

void Graph::add_edge(std::size_t u, std::size_t v) {
  if (u >= vertex_count() || v >= vertex_count()) throw std::out_of_range("edge endpoint out of range");
  if (u == v) throw std::invalid_argument("self-loops are not allowed");
  adjacency_[u].set(v);
  adjacency_[v].set(u);
}

void Graph::remove_edge(std::size_t u, std::size_t v) {
  adjacency_.at(u).reset(v);
  adjacency_.at(v).reset(u);
}

Graph Graph::complement() const {
  Graph g = *this;
  for (std::size_t v = 0; v < vertex_count(); ++v) {
    g.adjacency_[v].flip();
    g.adjacency_[v].reset(v);
  }
  return g;
}

Graph Graph::induced(const std::vector<std::size_t>& vertices) const {
  Graph g(vertices.size());
  for (std::size_t i = 0; i < vertices.size(); ++i)
    for (std::size_t j = i + 1; j < vertices.size(); ++j)
      if (adjacent(vertices[i], vertices[j])) g.add_edge(i, j);
  return g;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  for (std::size_t u = 0; u < vertex_count(); ++u)
    for (auto v = adjacency_[u].find_next(u); v != npos; v = adjacency_[u].find_next(v)) out.emplace_back(u, v);
  return out;
}

IndexSet GIdncGraph::vertices_of(std::size_t packet) const {
  IndexSet s(vertices.size());
  for (std::size_t i = 0; i < vertices.size(); ++i)
    if (vertices[i].packet == packet) s.set(i);
  return s;
}

CodingSet GIdncGraph::packets_of(const IndexSet& vertex_set) const {
  std::vector<std::size_t> ks;
  for (auto v = vertex_set.find_first(); v != npos; v = vertex_set.find_next(v)) ks.push_back(vertices[v].packet);
  return CodingSet(std::move(ks));
}

SIdncGraph build_sidnc_graph(const StateFeedbackMatrix& sfm) {
  const std::size_t k_count = sfm.packets();
  // Start complete and strike every pair some receiver wants together.
  Graph g = Graph::complete(k_count);
  for (std::size_t n = 0; n < sfm.receivers(); ++n) {
    const auto wanted = to_indices(sfm.wants_set(n));
    for (std::size_t a = 0; a < wanted.size(); ++a)
      for (std::size_t b = a + 1; b < wanted.size(); ++b) g.remove_edge(wanted[a], wanted[b]);
  }
  return g;
}

Graph complement(const Graph& g) { return g.complement(); }

GIdncGraph build_gidnc_graph(const StateFeedbackMatrix& sfm) {
  GIdncGraph g;
  g.packets = sfm.packets();
  g.receivers = sfm.receivers();
  for (std::size_t n = 0; n < sfm.receivers(); ++n)
    for (auto k = sfm.wants_set(n).find_first(); k != npos; k = sfm.wants_set(n).find_next(k))
      g.vertices.push_back({n, k});
  g.graph = Graph(g.vertices.size());
  for (std::size_t a = 0; a < g.vertices.size(); ++a)
    for (std::size_t b = a + 1; b < g.vertices.size(); ++b) {
      const auto [m, i] = g.vertices[a];
      const auto [n, j] = g.vertices[b];
      if (i == j || (!sfm.wants(n, i) && !sfm.wants(m, j))) g.graph.add_edge(a, b);
    }
  return g;
}

SIdncGraph affiliated_sidnc_graph(const GIdncGraph& g) {
  std::vector<IndexSet> of_packet;
  of_packet.reserve(g.packets);
  for (std::size_t k = 0; k < g.packets; ++k) of_packet.push_back(g.vertices_of(k));

  Graph out(g.packets);
  for (std::size_t i = 0; i < g.packets; ++i)
    for (std::size_t j = i + 1; j < g.packets; ++j) {
      bool all = true;
      for (auto a = of_packet[i].find_first(); all && a != npos; a = of_packet[i].find_next(a))
        all = of_packet[j].is_subset_of(g.graph.neighbors(a));
      if (all) out.add_edge(i, j);
    }
  return out;
}

bool is_clique(const Graph& g, const IndexSet& vertices) {
  for (auto v = vertices.find_first(); v != npos; v = vertices.find_next(v)) {
    IndexSet others = vertices;
    others.reset(v);
    if (!others.is_subset_of(g.neighbors(v))) return false;
  }
  return true;
}

bool is_clique(const Graph& g, const CodingSet& vertices) {
  return is_clique(g, vertices.to_set(g.vertex_count()));
}

ValidationReport validate_solution(const StateFeedbackMatrix& sfm, const Solution& solution) {
  ValidationReport report;
  const Graph g = build_sidnc_graph(sfm);
  for (std::size_t i = 0; i < solution.size(); ++i) {
    const auto& m = solution.coding_sets[i];
    if (m.empty()) {
      report.violations.push_back("coding set " + std::to_string(i + 1) + " is empty");
      continue;
    }
    if (m.packets().back() >= sfm.packets()) {
      report.violations.push_back("coding set " + std::to_string(i + 1) + " has an out-of-range packet");
      continue;
    }
    if (!is_clique(g, m))
      report.violations.push_back("coding set " + std::to_string(i + 1) + " " + m.label() +
                                  " contains conflicting packets");
  }
  IndexSet covered(sfm.packets());
  for (const auto& m : solution.coding_sets)
    for (auto k : m.packets())
      if (k < sfm.packets()) covered.set(k);
  const IndexSet missing = sfm.wanted_packets() - covered;
  for (auto k = missing.find_first(); k != npos; k = missing.find_next(k))
    report.violations.push_back("wanted packet p" + std::to_string(k + 1) + " is not covered");
  return report;
}

std::string to_dot(const SIdncGraph& g, const std::string& name) {
  std::ostringstream out;
  out << "graph " << name << " {\n";
  for (std::size_t v = 0; v < g.vertex_count(); ++v) out << "  p" << v + 1 << ";\n";
  for (const auto& [u, v] : g.edges()) out << "  p" << u + 1 << " -- p" << v + 1 << ";\n";
  out << "}\n";
  return out.str();
}

std::string to_dot(const GIdncGraph& g, const std::string& name) {
  auto label = [&](std::size_t v) {
    return "\"v" + std::to_string(g.vertices[v].receiver + 1) + "," + std::to_string(g.vertices[v].packet + 1) + "\"";
  };
  std::ostringstream out;
  out << "graph " << name << " {\n";
  for (std::size_t v = 0; v < g.vertices.size(); ++v) out << "  " << label(v) << ";\n";
  for (const auto& [u, v] : g.graph.edges()) out << "  " << label(u) << " -- " << label(v) << ";\n";
  out << "}\n";
  return out.str();
}

} // namespace sidnc
