#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "moocd/graph.hpp"

using namespace moocd;

namespace {

Graph parse_edges(const std::string& text) {
  std::istringstream in(text);
  return load_edge_list(in);
}

LoadedGraph parse_gml(const std::string& text) {
  std::istringstream in(text);
  return load_gml(in);
}

std::string data(const std::string& name) { return std::string(MOOCD_DATA_DIR) + "/" + name; }

void check_invariants(const Graph& g) {
  std::size_t degree_sum = 0;
  for (NodeId v = 0; v < static_cast<NodeId>(g.node_count()); ++v) {
    auto nb = g.neighbors(v);
    CHECK(std::is_sorted(nb.begin(), nb.end()));
    CHECK(std::adjacent_find(nb.begin(), nb.end()) == nb.end());
    for (NodeId u : nb) {
      CHECK(u != v);
      CHECK(g.has_edge(u, v));
    }
    degree_sum += g.degree(v);
  }
  CHECK(degree_sum == 2 * g.edge_count());
}

}  // namespace

TEST_CASE("edge list: triangle") {
  Graph g = parse_edges("0 1\n1 2\n2 0\n");
  CHECK(g.node_count() == 3);
  CHECK(g.edge_count() == 3);
  check_invariants(g);
}

TEST_CASE("edge list: reversed duplicate collapses") {
  Graph g = parse_edges("a b\nb a\n");
  CHECK(g.node_count() == 2);
  CHECK(g.edge_count() == 1);
  CHECK(g.label(0) == "a");
  CHECK(g.find("b") == NodeId{1});
}

TEST_CASE("edge list: comments and blank lines are skipped") {
  Graph g = parse_edges("# header\n\n1 2   # trailing\n  \n2 3\n");
  CHECK(g.node_count() == 3);
  CHECK(g.edge_count() == 2);
}

TEST_CASE("edge list: errors") {
  SUBCASE("malformed line reports its number") {
    try {
      parse_edges("0 1\n2\n");
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.line() == 2);
    }
  }
  SUBCASE("self-loop") { CHECK_THROWS_AS(parse_edges("0 1\n1 1\n"), ValidationError); }
  SUBCASE("empty input") { CHECK_THROWS_AS(parse_edges("# nothing\n"), ValidationError); }
}

TEST_CASE("from_edges validates ids") {
  std::vector<Graph::Edge> loop{{0, 0}};
  CHECK_THROWS_AS(Graph::from_edges(2, loop), ValidationError);
  std::vector<Graph::Edge> out_of_range{{0, 5}};
  CHECK_THROWS_AS(Graph::from_edges(2, out_of_range), ValidationError);
  Graph isolated = Graph::from_edges(3, {});
  CHECK(isolated.node_count() == 3);
  CHECK(isolated.edge_count() == 0);
}

TEST_CASE("gml: minimal graph") {
  auto loaded = parse_gml("graph [ node [ id 7 ] node [ id 9 ] edge [ source 7 target 9 ] ]");
  CHECK(loaded.graph.node_count() == 2);
  CHECK(loaded.graph.edge_count() == 1);
  CHECK_FALSE(loaded.ground_truth.has_value());
  CHECK(loaded.graph.label(0) == "7");
}

TEST_CASE("gml: attributes, nested lists and node values") {
  auto loaded = parse_gml(R"(Creator "test"
graph [
  directed 0
  node [ id 1 label "x y" value 3 graphics [ x 1 y 2 ] ]
  node [ id 2 value 3 ]
  node [ id 3 value 5 ]
  edge [ source 1 target 2 weight 4 ]
  edge [ source 2 target 3 ]
])");
  CHECK(loaded.graph.node_count() == 3);
  CHECK(loaded.graph.edge_count() == 2);
  REQUIRE(loaded.ground_truth.has_value());
  CHECK(loaded.ground_truth->community_count() == 2);
  CHECK(loaded.ground_truth->community_of(0) == loaded.ground_truth->community_of(1));
}

TEST_CASE("gml: errors") {
  CHECK_THROWS_AS(parse_gml("graph [ node [ label 1 ] ]"), ParseError);
  CHECK_THROWS_AS(parse_gml("graph [ node [ id 1 ] edge [ source 1 ] ]"), ParseError);
  CHECK_THROWS_AS(parse_gml("graph [ node [ id 1 ] node [ id 2 ] edge [ source 1 target 4 ] ]"), ValidationError);
  CHECK_THROWS_AS(parse_gml("graph [ node [ id 1 ] "), ParseError);
  CHECK_THROWS_AS(parse_gml("nothing here"), ParseError);
}

TEST_CASE("labels loader") {
  Graph g = parse_edges("a b\nb c\n");
  SUBCASE("all nodes one label") {
    std::istringstream in("a x\nb x\nc x\n");
    CHECK(load_labels(in, g).community_count() == 1);
  }
  SUBCASE("missing node") {
    std::istringstream in("a x\nb y\n");
    CHECK_THROWS_AS(load_labels(in, g), ValidationError);
  }
  SUBCASE("unknown node") {
    std::istringstream in("a x\nb y\nc y\nd y\n");
    CHECK_THROWS_AS(load_labels(in, g), ValidationError);
  }
  SUBCASE("duplicate node") {
    std::istringstream in("a x\nb y\nb x\nc y\n");
    CHECK_THROWS_AS(load_labels(in, g), ValidationError);
  }
  SUBCASE("write then read") {
    Partition p(std::vector<NodeId>{0, 1, 1});
    std::stringstream io;
    write_labels(io, g, p);
    CHECK(load_labels(io, g) == p);
  }
}

TEST_CASE("partition renumbers by smallest member") {
  Partition p(std::vector<NodeId>{5, 2, 5, 9});
  CHECK(p.assignment() == std::vector<NodeId>{0, 1, 0, 2});
  CHECK(p.community_count() == 3);
  CHECK(p.community_size(0) == 2);
  auto comms = p.communities();
  CHECK(comms == std::vector<std::vector<NodeId>>{{0, 2}, {1}, {3}});
  CHECK(p == Partition(std::vector<NodeId>{1, 0, 1, 7}));
}

TEST_CASE("bundled karate") {
  auto loaded = load_graph_file(data("karate.gml"));
  CHECK(loaded.graph.node_count() == 34);
  CHECK(loaded.graph.edge_count() == 78);
  check_invariants(loaded.graph);
  REQUIRE(loaded.ground_truth);
  CHECK(loaded.ground_truth->community_count() == 2);

  Partition from_labels = load_labels_file(data("karate.labels"), loaded.graph);
  CHECK(from_labels == *loaded.ground_truth);

  // Same edge set through the edge-list loader, after label remapping.
  auto listed = load_graph_file(data("karate.txt"));
  REQUIRE(listed.graph.node_count() == 34);
  std::set<std::pair<std::string, std::string>> a, b;
  for (auto [u, v] : loaded.graph.edges()) a.emplace(std::minmax(loaded.graph.label(u), loaded.graph.label(v)));
  for (auto [u, v] : listed.graph.edges()) b.emplace(std::minmax(listed.graph.label(u), listed.graph.label(v)));
  CHECK(a == b);
}

TEST_CASE("bundled football") {
  auto loaded = load_graph_file(data("football.gml"));
  CHECK(loaded.graph.node_count() == 115);
  // The corrected distribution has 613 edges; older copies are quoted at 616.
  CHECK(loaded.graph.edge_count() == 613);
  check_invariants(loaded.graph);
  REQUIRE(loaded.ground_truth);
  CHECK(loaded.ground_truth->community_count() == 12);
  CHECK(load_labels_file(data("football.labels"), loaded.graph) == *loaded.ground_truth);
}
