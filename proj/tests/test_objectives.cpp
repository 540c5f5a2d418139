#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <numeric>

#include "moocd/encoding.hpp"
#include "moocd/objectives.hpp"
#include "oracles.hpp"

using namespace moocd;
using doctest::Approx;

namespace {

Graph triangle() {
  std::vector<Graph::Edge> e{{0, 1}, {1, 2}, {0, 2}};
  return Graph::from_edges(3, e);
}

const Partition kWhole(std::vector<NodeId>{0, 0, 0});
const Partition kSingletons(std::vector<NodeId>{0, 1, 2});
const Partition kSplit(std::vector<NodeId>{0, 1, 1});

}  // namespace

TEST_CASE("kernel k-means") {
  CHECK(kernel_kmeans(triangle(), kWhole) == 2.0);
  CHECK(kernel_kmeans(Graph::from_edges(4, {}), Partition(std::vector<NodeId>{0, 1, 2, 3})) == 0.0);
  CHECK(kernel_kmeans(triangle(), kSingletons) == 0.0);
}

TEST_CASE("ratio cut") {
  CHECK(ratio_cut(triangle(), kWhole) == 0.0);
  CHECK(ratio_cut(triangle(), kSplit) == 3.0);
  CHECK(ratio_cut(Graph::from_edges(3, {}), kSplit) == 0.0);
}

TEST_CASE("community fitness") {
  CHECK(community_fitness(triangle(), kWhole) == 3.0);
  CHECK(community_fitness(triangle(), kSplit) == 1.0);
  // Isolated node contributes nothing.
  std::vector<Graph::Edge> e{{0, 1}};
  CHECK(community_fitness(Graph::from_edges(3, e), kWhole) == 2.0);
}

TEST_CASE("community score") {
  CHECK(community_score(triangle(), kWhole) == Approx(4.0).epsilon(1e-15));
  CHECK(community_score(triangle(), kSplit) == 1.0);
  CHECK(community_score(Graph::from_edges(3, {}), kSplit) == 0.0);
}

TEST_CASE("modularity") {
  CHECK(modularity(triangle(), kWhole) == 0.0);
  CHECK(modularity(triangle(), kSingletons) == Approx(-1.0 / 3.0).epsilon(1e-15));
  CHECK_THROWS_AS(modularity(Graph::from_edges(3, {}), kWhole), ModularityUndefined);
}

TEST_CASE("evaluate") {
  Graph g = triangle();
  ObjectiveVector krm = evaluate(Variant::KRM, g, all_self_genotype(3));
  CHECK(krm.values[0] == 0.0);
  CHECK(krm.values[1] == 6.0);
  CHECK(krm.values[2] == Approx(1.0 / 3.0).epsilon(1e-15));

  ObjectiveVector ccm = evaluate(Variant::CCM, g, Genotype{{1, 2, 0}});
  CHECK(ccm.values[0] == -3.0);
  CHECK(ccm.values[1] == Approx(-4.0).epsilon(1e-15));
  CHECK(ccm.values[2] == 0.0);

  Genotype split{{0, 2, 1}};
  CHECK(evaluate(Variant::KRM, g, split).values[2] == evaluate(Variant::CCM, g, split).values[2]);
  CHECK(evaluate(Variant::KRM, g, split).raw == evaluate(Variant::CCM, g, split).raw);
}

TEST_CASE("variant names") {
  CHECK(parse_variant("krm") == Variant::KRM);
  CHECK(parse_variant("CCM") == Variant::CCM);
  CHECK(to_string(Variant::CCM) == "ccm");
  CHECK_THROWS_AS(parse_variant("abc"), ValidationError);
}

TEST_CASE("single-community identities on random graphs") {
  std::mt19937_64 gen(17);
  for (int t = 0; t < 100; ++t) {
    std::size_t n = 2 + gen() % 29;
    Graph g = oracle::random_graph(n, 0.3, gen);
    if (g.edge_count() == 0) continue;
    Partition whole(std::vector<NodeId>(n, 0));
    CHECK(modularity(g, whole) == 0.0);
    CHECK(ratio_cut(g, whole) == 0.0);
  }
}

TEST_CASE("all set partitions of small graphs match the adjacency-sum oracle") {
  std::mt19937_64 gen(29);
  for (int t = 0; t < 12; ++t) {
    std::size_t n = 3 + static_cast<std::size_t>(t % 4);
    Graph g = oracle::random_graph(n, 0.5, gen);
    if (g.edge_count() == 0) continue;
    const double alpha = t % 2 ? 1.0 : 1.5, r = t % 3 ? 1.0 : 2.0;
    oracle::for_each_set_partition(n, [&](const std::vector<NodeId>& a) {
      Partition p(a);
      RawObjectives raw = compute_objectives(g, p, {alpha, r});
      auto o = oracle::naive_objectives(g, a, alpha, r);
      CHECK(raw.kkm == Approx(o.kkm).epsilon(1e-12));
      CHECK(raw.rc == Approx(o.rc).epsilon(1e-12));
      CHECK(raw.cf == Approx(o.cf).epsilon(1e-12));
      CHECK(raw.cs == Approx(o.cs).epsilon(1e-12));
      CHECK(raw.q == Approx(o.q).epsilon(1e-12));
      // Standalone functions agree with the single pass.
      CHECK(kernel_kmeans(g, p) == raw.kkm);
      CHECK(ratio_cut(g, p) == raw.rc);
      CHECK(community_fitness(g, p, alpha) == raw.cf);
      CHECK(community_score(g, p, r) == raw.cs);
      CHECK(modularity(g, p) == raw.q);
    });
  }
}

TEST_CASE("objectives are invariant under community relabelling") {
  std::mt19937_64 gen(31);
  for (int t = 0; t < 50; ++t) {
    Graph g = oracle::random_graph(15, 0.25, gen);
    if (g.edge_count() == 0) continue;
    auto a = oracle::random_assignment(15, 5, gen);
    std::vector<NodeId> perm(5);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), gen);
    std::vector<NodeId> b(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) b[i] = perm[static_cast<std::size_t>(a[i])] + 10;
    CHECK(compute_objectives(g, Partition(a)) == compute_objectives(g, Partition(b)));
  }
}

TEST_CASE("modularity bounds and the Newman form") {
  std::mt19937_64 gen(37);
  for (int t = 0; t < 100; ++t) {
    Graph g = oracle::random_graph(20, 0.2, gen);
    if (g.edge_count() == 0) continue;
    auto a = oracle::random_assignment(20, 1 + gen() % 6, gen);
    double q = modularity(g, Partition(a));
    CHECK(q >= -0.5);
    CHECK(q <= 1.0);
    CHECK(q == Approx(oracle::naive_objectives(g, a).q).epsilon(1e-9));
  }
}

TEST_CASE("karate ground truth modularity") {
  auto loaded = load_graph_file(std::string(MOOCD_DATA_DIR) + "/karate.gml");
  REQUIRE(loaded.ground_truth);
  CHECK(modularity(loaded.graph, *loaded.ground_truth) == Approx(0.3715).epsilon(1e-4));
}
