#include "doctest.h"

#include "sidnc/graph.hpp"
#include "test_support.hpp"

using namespace sidnc;

namespace {

std::vector<Edge> one_based(std::vector<Edge> edges) {
  for (auto& [u, v] : edges) {
    --u;
    --v;
  }
  return edges;
}

} // namespace

TEST_CASE("fig1 S-IDNC graph edges") {
  const auto g = build_sidnc_graph(fig1_sfm());
  CHECK(g.vertex_count() == 6);
  CHECK(g.edges() == one_based({{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {2, 5}, {3, 6}}));
  CHECK(g.edge_count() == 7);
}

TEST_CASE("S-IDNC graph trivial shapes") {
  CHECK(build_sidnc_graph(StateFeedbackMatrix(3, 5)) == Graph::complete(5));
  CHECK(build_sidnc_graph(StateFeedbackMatrix(3, 5)).edge_count() == 10);
  const auto one = StateFeedbackMatrix::from_wants(4, {{0, 1, 2, 3}});
  CHECK(build_sidnc_graph(one).edge_count() == 0);
}

TEST_CASE("unwanted packets are universal vertices") {
  const auto a = StateFeedbackMatrix::from_wants(4, {{0, 1}, {1, 2}});
  const auto g = build_sidnc_graph(a);
  CHECK(g.degree(3) == 3);
  CHECK_FALSE(g.adjacent(0, 1));
  CHECK(g.adjacent(0, 2));
}

TEST_CASE("complement") {
  const auto g = build_sidnc_graph(fig1_sfm());
  CHECK(complement(g).edge_count() == 8);
  CHECK(complement(complement(g)) == g);
  CHECK(complement(Graph::complete(5)).edge_count() == 0);
  for (std::size_t v = 0; v < 6; ++v) CHECK_FALSE(complement(g).adjacent(v, v));
}

TEST_CASE("graph construction errors") {
  Graph g(3);
  CHECK_THROWS(g.add_edge(1, 1));
  g.add_edge(0, 2);
  CHECK(g.adjacent(2, 0));
  g.remove_edge(2, 0);
  CHECK(g.edge_count() == 0);
}

TEST_CASE("G-IDNC graph of fig1") {
  const auto a = fig1_sfm();
  const auto gg = build_gidnc_graph(a);
  CHECK(gg.vertices.size() == 12);
  CHECK(gg.graph.vertex_count() == a.total_wants());
  // (v1,1), (v5,3), (v4,4)
  IndexSet pick(gg.vertices.size());
  for (std::size_t i = 0; i < gg.vertices.size(); ++i) {
    const auto& v = gg.vertices[i];
    if ((v.receiver == 0 && v.packet == 0) || (v.receiver == 4 && v.packet == 2) || (v.receiver == 3 && v.packet == 3))
      pick.set(i);
  }
  CHECK(pick.count() == 3);
  CHECK(is_clique(gg.graph, pick));
  CHECK(gg.packets_of(pick) == CodingSet{0, 2, 3});
  CHECK(gg.vertices_of(5).count() == 3);
}

TEST_CASE("G-IDNC edge rule matches the definition") {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 100; ++i) {
    const auto a = testing::random_sfm(rng, 6, 5, 0.4);
    const auto gg = build_gidnc_graph(a);
    CHECK(gg.vertices.size() == a.total_wants());
    for (std::size_t x = 0; x < gg.vertices.size(); ++x)
      for (std::size_t y = x + 1; y < gg.vertices.size(); ++y) {
        const auto [m, pi] = gg.vertices[x];
        const auto [n, pj] = gg.vertices[y];
        const bool rule = pi == pj || (!a.wants(n, pi) && !a.wants(m, pj));
        CHECK(gg.graph.adjacent(x, y) == rule);
      }
  }
}

TEST_CASE("single 1-entry gives a single G vertex") {
  const auto gg = build_gidnc_graph(StateFeedbackMatrix::from_wants(3, {{}, {1}}));
  CHECK(gg.vertices.size() == 1);
  CHECK(gg.graph.edge_count() == 0);
}

TEST_CASE("affiliated graph equals the S-IDNC graph") {
  const auto a = fig1_sfm();
  CHECK(affiliated_sidnc_graph(build_gidnc_graph(a)) == build_sidnc_graph(a));

  const auto single = StateFeedbackMatrix::from_wants(3, {{0, 1, 2}});
  CHECK(affiliated_sidnc_graph(build_gidnc_graph(single)).edge_count() == 0);

  // Packet 2 has no G vertex, so it is universal.
  const auto gap = StateFeedbackMatrix::from_wants(3, {{0, 1}});
  CHECK(affiliated_sidnc_graph(build_gidnc_graph(gap)).degree(2) == 2);

  std::mt19937_64 rng(5);
  int mismatches = 0;
  for (int i = 0; i < 500; ++i) {
    const auto r = testing::random_sfm(rng, 8, 5, 0.35);
    if (!(affiliated_sidnc_graph(build_gidnc_graph(r)) == build_sidnc_graph(r))) ++mismatches;
  }
  CHECK(mismatches == 0);
}

TEST_CASE("vertex removal leaves the induced subgraph") {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 100; ++i) {
    const auto a = testing::random_sfm(rng, 8, 5, 0.3, 2);
    const auto g = build_sidnc_graph(a);
    std::vector<std::size_t> keep;
    for (std::size_t v = 0; v < g.vertex_count(); ++v)
      if (rng() % 3) keep.push_back(v);
    const auto sub = g.induced(keep);
    for (std::size_t x = 0; x < keep.size(); ++x)
      for (std::size_t y = 0; y < keep.size(); ++y)
        if (x != y) CHECK(sub.adjacent(x, y) == g.adjacent(keep[x], keep[y]));
  }
}

TEST_CASE("S-IDNC cliques map to G-IDNC cliques") {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 100; ++i) {
    const auto a = testing::random_sfm(rng, 7, 5, 0.35);
    const auto g = build_sidnc_graph(a);
    const auto gg = build_gidnc_graph(a);
    for (const auto& m : testing::maximal_cliques_by_subsets(g)) {
      // One G vertex per (wanting receiver, packet of m), chosen at random
      // among those of that packet.
      IndexSet chosen(gg.vertices.size());
      for (auto k : m.packets()) {
        const auto vs = to_indices(gg.vertices_of(k));
        if (!vs.empty()) chosen.set(vs[rng() % vs.size()]);
      }
      CHECK(is_clique(gg.graph, chosen));
    }
  }
}

TEST_CASE("is_clique and validate_solution") {
  const auto a = fig1_sfm();
  const auto g = build_sidnc_graph(a);
  CHECK(is_clique(g, CodingSet{0, 1, 2}));
  CHECK_FALSE(is_clique(g, CodingSet{2, 3}));
  CHECK(is_clique(g, CodingSet{4}));

  const Solution s{{{0, 3}, {1, 4}, {2, 5}}};
  CHECK(validate_solution(a, s).ok());
  CHECK(s.size() == 3);

  const Solution conflict{{{2, 3}, {0, 1}, {4}, {5}}};
  CHECK_FALSE(validate_solution(a, conflict).ok());
  const Solution missing{{{0, 3}, {1, 4}}};
  const auto report = validate_solution(a, missing);
  CHECK_FALSE(report.ok());
  CHECK(report.violations.size() == 2); // p3 and p6
}

TEST_CASE("DOT export is 1-based and ordered") {
  const auto dot = to_dot(build_sidnc_graph(fig1_sfm()));
  CHECK(dot.find("p1 -- p2") != std::string::npos);
  CHECK(dot.find("p3 -- p6") != std::string::npos);
  CHECK(dot.find("p1 -- p2") < dot.find("p1 -- p3"));
  std::size_t edges = 0;
  for (auto pos = dot.find("--"); pos != std::string::npos; pos = dot.find("--", pos + 2)) ++edges;
  CHECK(edges == 7);
  CHECK(to_dot(build_gidnc_graph(fig1_sfm())).find("\"v1,1\"") != std::string::npos);
}
