#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "moocd/metrics.hpp"
#include "moocd/pareto.hpp"
#include "oracles.hpp"

using namespace moocd;
using doctest::Approx;

namespace {

std::vector<ObjectivePoint> random_front(std::size_t count, std::mt19937_64& gen) {
  std::uniform_real_distribution<double> u(0.1, 1.0);
  std::vector<ObjectivePoint> pts(count);
  for (auto& p : pts) p = {u(gen), u(gen), u(gen)};
  return pts;
}

Partition random_partition(std::size_t n, std::mt19937_64& gen) {
  return Partition(oracle::random_assignment(n, 1 + gen() % 6, gen));
}

}  // namespace

TEST_CASE("NMI examples") {
  Partition a(std::vector<NodeId>{0, 0, 1, 1, 2});
  CHECK(nmi(a, a) == 1.0);
  CHECK(nmi(a, Partition(std::vector<NodeId>{4, 4, 7, 7, 1})) == 1.0);
  Partition whole(std::vector<NodeId>(5, 0));
  CHECK(nmi(a, whole) == 0.0);
  CHECK(nmi(whole, whole) == 1.0);
  CHECK_THROWS_AS(nmi(a, Partition(std::vector<NodeId>{0, 1})), ValidationError);
}

TEST_CASE("NMI hand value") {
  // {0,1},{2,3} against {0,1,2},{3}: from the contingency table [[2,0],[1,1]].
  Partition a(std::vector<NodeId>{0, 0, 1, 1});
  Partition b(std::vector<NodeId>{0, 0, 0, 1});
  double num = 2 * std::log(2.0 * 4 / (2 * 3)) + std::log(1.0 * 4 / (2 * 3)) + std::log(1.0 * 4 / (2 * 1));
  double den = 2 * 2 * std::log(0.5) + 3 * std::log(0.75) + std::log(0.25);
  CHECK(nmi(a, b) == Approx(-2 * num / den).epsilon(1e-14));
}

TEST_CASE("NMI properties on random pairs") {
  std::mt19937_64 gen(55);
  for (int t = 0; t < 500; ++t) {
    std::size_t n = 2 + gen() % 40;
    Partition a = random_partition(n, gen), b = random_partition(n, gen);
    double ab = nmi(a, b);
    CHECK(ab == Approx(nmi(b, a)).epsilon(1e-12));
    CHECK(ab >= -1e-9);
    CHECK(ab <= 1.0 + 1e-9);
    CHECK(nmi(a, a) == 1.0);
    if (a.community_count() >= 2) CHECK(nmi(a, Partition(std::vector<NodeId>(n, 0))) == 0.0);
  }
}

TEST_CASE("NMI does not depend on the log base") {
  // The ratio of two sums of logs is unchanged when every log is rescaled.
  std::mt19937_64 gen(56);
  for (int t = 0; t < 50; ++t) {
    std::size_t n = 10 + gen() % 20;
    Partition a = random_partition(n, gen), b = random_partition(n, gen);
    if (a.community_count() < 2 || b.community_count() < 2) continue;
    std::map<std::pair<NodeId, NodeId>, double> joint;
    for (NodeId v = 0; v < static_cast<NodeId>(n); ++v) joint[{a.community_of(v), b.community_of(v)}] += 1;
    auto value = [&](double base) {
      auto lg = [&](double x) { return std::log(x) / std::log(base); };
      double N = static_cast<double>(n), num = 0, den = 0;
      for (auto [key, c] : joint) {
        num += c * lg(c * N / (a.community_size(key.first) * b.community_size(key.second)));
      }
      for (std::size_t i = 0; i < a.community_count(); ++i) {
        double c = a.community_size(static_cast<NodeId>(i));
        den += c * lg(c / N);
      }
      for (std::size_t j = 0; j < b.community_count(); ++j) {
        double c = b.community_size(static_cast<NodeId>(j));
        den += c * lg(c / N);
      }
      return -2 * num / den;
    };
    CHECK(value(2.0) == Approx(nmi(a, b)).epsilon(1e-12));
    CHECK(value(10.0) == Approx(nmi(a, b)).epsilon(1e-12));
  }
}

TEST_CASE("IGD") {
  std::vector<ObjectivePoint> ref{{0, 0, 0}};
  std::vector<ObjectivePoint> front{{3, 4, 0}};
  CHECK(igd(front, ref) == 5.0);
  CHECK(igd(ref, ref) == 0.0);
  CHECK_THROWS_AS(igd({}, ref), ValidationError);
  CHECK_THROWS_AS(igd(front, {}), ValidationError);

  std::mt19937_64 gen(60);
  for (int t = 0; t < 100; ++t) {
    auto a = random_front(1 + gen() % 20, gen), z = random_front(1 + gen() % 20, gen);
    CHECK(igd(a, z) == Approx(oracle::naive_igd(a, z)).epsilon(1e-12));
    // Zero exactly when every reference point is matched.
    auto superset = a;
    superset.insert(superset.end(), z.begin(), z.end());
    CHECK(igd(superset, z) == 0.0);
    CHECK(igd(a, z) > 0.0);
  }
}

TEST_CASE("hypervolume closed forms") {
  std::vector<ObjectivePoint> box{{1, 2, 3}};
  CHECK(hypervolume(box, {0, 0, 0}) == 6.0);
  std::vector<ObjectivePoint> lifted{{1, 2, 1}, {2, 1, 1}};
  CHECK(hypervolume(lifted, {0, 0, 0}) == 3.0);
  // Points below the reference point are discarded.
  std::vector<ObjectivePoint> mixed{{1, 2, 3}, {-1, 5, 5}};
  CHECK(hypervolume(mixed, {0, 0, 0}) == 6.0);
  CHECK(hypervolume({}, {0, 0, 0}) == 0.0);
}

TEST_CASE("hypervolume against Monte Carlo") {
  std::mt19937_64 gen(61);
  for (int t = 0; t < 100; ++t) {
    auto pts = random_front(1 + gen() % 10, gen);
    auto mc = oracle::monte_carlo_hv(pts, 100000, gen);
    CHECK(std::abs(hypervolume(pts, {0, 0, 0}) - mc.estimate) <= 3 * mc.sigma + 1e-12);
  }
}

TEST_CASE("hypervolume monotonicity") {
  std::mt19937_64 gen(62);
  for (int t = 0; t < 100; ++t) {
    auto pts = random_front(1 + gen() % 10, gen);
    double base = hypervolume(pts, {0, 0, 0});
    auto extra = random_front(1, gen).front();
    auto grown = pts;
    grown.push_back(extra);
    double after = hypervolume(grown, {0, 0, 0});
    CHECK(after >= base);
    // A point dominated (in maximisation) by an existing one adds nothing.
    auto shrunk = pts;
    shrunk.push_back({pts[0][0] * 0.5, pts[0][1] * 0.9, pts[0][2]});
    CHECK(hypervolume(shrunk, {0, 0, 0}) == base);
  }
}

TEST_CASE("HV reference point and ratio") {
  std::vector<ObjectivePoint> front{{1, 2, -0.3}, {2, 1, -0.2}};
  std::vector<ObjectivePoint> ref{{1, 1, -0.4}};
  ObjectivePoint nadir = hv_reference_point(front, ref);
  CHECK(nadir[0] == Approx(2.1));
  CHECK(nadir[1] == Approx(2.1));
  CHECK(nadir[2] == Approx(-0.18));
  // Zero spread pushes out by a tenth of the magnitude (at least 0.1).
  std::vector<ObjectivePoint> flat{{0, 5, 0}};
  ObjectivePoint f = hv_reference_point(flat, flat);
  CHECK(f == ObjectivePoint{0.1, 5.5, 0.1});

  CHECK(hv_igd_ratio(ref, ref, nadir) == kInfiniteRatio);
  double r = hv_igd_ratio(front, ref, nadir);
  CHECK(std::isfinite(r));
  CHECK(r > 0.0);
}

TEST_CASE("ratio never drops when a non-dominated point is added") {
  std::mt19937_64 gen(63);
  for (int t = 0; t < 200; ++t) {
    auto ref = random_front(5 + gen() % 20, gen);
    auto front = random_front(1 + gen() % 10, gen);
    ObjectivePoint nadir{1.1, 1.1, 1.1};
    double before = hv_igd_ratio(front, ref, nadir);
    auto candidate = random_front(1, gen).front();
    bool dominated = false;
    for (const auto& p : front) dominated = dominated || dominates(p, candidate);
    if (dominated) continue;
    front.push_back(candidate);
    CHECK(hv_igd_ratio(front, ref, nadir) >= before);
  }
}

TEST_CASE("reference front file round trip") {
  ReferenceFront f;
  f.dataset = "toy";
  f.variant = Variant::CCM;
  f.seed = 9;
  f.population = 12;
  f.generations = 3;
  f.crossover_prob = 0.9;
  f.mutation_prob = 1.0 / 7;
  f.points = {{0.1, 1.0 / 3.0, -2.5e-17}, {1e300, -0.0, 42}};
  std::stringstream io;
  write_reference_front(io, f);
  ReferenceFront g = read_reference_front(io);
  CHECK(g == f);

  std::istringstream bad("# moocd reference front\n1 2\n");
  CHECK_THROWS_AS(read_reference_front(bad), ParseError);
  std::istringstream foreign("1 2 3\n");
  CHECK_THROWS_AS(read_reference_front(foreign), ParseError);
}

TEST_CASE("reference front build and cache on a small graph") {
  auto loaded = load_graph_file(std::string(MOOCD_DATA_DIR) + "/karate.gml");
  ReferenceFrontOptions opts;
  opts.population = 30;
  opts.generations = 10;
  ReferenceFront ref = build_reference_front(loaded.graph, "karate", Variant::KRM, 3, opts);
  CHECK(!ref.points.empty());
  for (const auto& a : ref.points) {
    for (const auto& b : ref.points) CHECK_FALSE(dominates(a, b));
  }
  CHECK(ref.mutation_prob == Approx(1.0 / 34));

  // The generating run's own front has zero IGD against the reference.
  RunConfig c;
  c.population_size = 30;
  c.generations = 10;
  c.crossover_prob = 0.9;
  c.mutation_prob = 1.0 / 34;
  c.seed = 3;
  auto own = objective_points(nsga3_run(loaded.graph, c).final_front);
  CHECK(igd(own, ref.points) == 0.0);

  auto dir = std::filesystem::temp_directory_path() / "moocd_ref_cache_test";
  std::filesystem::remove_all(dir);
  ReferenceFront built = cached_reference_front(dir.string(), loaded.graph, "karate", Variant::KRM, 3, opts);
  CHECK(std::filesystem::exists(dir / reference_front_filename("karate", Variant::KRM, 3)));
  ReferenceFront reloaded = cached_reference_front(dir.string(), loaded.graph, "karate", Variant::KRM, 3, opts);
  CHECK(built == reloaded);
  CHECK(built == ref);
  std::filesystem::remove_all(dir);
}

TEST_CASE("bundled reference fronts load and are non-dominated") {
  auto dir = std::filesystem::path(MOOCD_SOURCE_DIR) / "results" / "reference_fronts";
  for (const char* name : {"karate_krm_s1.ref", "karate_ccm_s1.ref", "football_krm_s1.ref", "football_ccm_s1.ref"}) {
    CAPTURE(name);
    std::ifstream in(dir / name);
    REQUIRE(in.good());
    ReferenceFront f = read_reference_front(in);
    CHECK(f.population == 500);
    CHECK(f.generations == 500);
    REQUIRE(!f.points.empty());
    CHECK(fast_nondominated_sort(f.points).size() == 1);
  }
}
