#include "moocd/objectives.hpp"

#include <cmath>
#include <vector>

namespace moocd {

std::string_view to_string(Variant v) { return v == Variant::KRM ? "krm" : "ccm"; }

Variant parse_variant(std::string_view text) {
  if (text == "krm" || text == "KRM") return Variant::KRM;
  if (text == "ccm" || text == "CCM") return Variant::CCM;
  throw ValidationError("unknown variant '" + std::string(text) + "' (expected krm or ccm)");
}

namespace {

// Per-node internal degree plus per-community size, internal ordered-pair
// count and degree sum. Everything else derives from these.
struct CommunityTally {
  std::vector<double> internal_degree;  // per node
  std::vector<double> size;
  std::vector<double> internal_pairs;  // sum of A_ij over ordered pairs, 2 * intra edges
  std::vector<double> degree_sum;
};

CommunityTally tally(const Graph& graph, const Partition& p) {
  if (p.size() != graph.node_count()) throw ValidationError("partition does not match graph");
  const std::size_t k = p.community_count();
  CommunityTally t{std::vector<double>(graph.node_count(), 0.0), std::vector<double>(k, 0.0),
                   std::vector<double>(k, 0.0), std::vector<double>(k, 0.0)};
  for (std::size_t v = 0; v < graph.node_count(); ++v) {
    auto node = static_cast<NodeId>(v);
    NodeId c = p.community_of(node);
    t.size[c] += 1.0;
    t.degree_sum[c] += static_cast<double>(graph.degree(node));
    double inside = 0.0;
    for (NodeId u : graph.neighbors(node)) {
      if (p.community_of(u) == c) inside += 1.0;
    }
    t.internal_degree[v] = inside;
    t.internal_pairs[c] += inside;
  }
  return t;
}

double kkm_from(const CommunityTally& t, std::size_t n) {
  double sum = 0.0;
  for (std::size_t c = 0; c < t.size.size(); ++c) sum += t.internal_pairs[c] / t.size[c];
  return 2.0 * (static_cast<double>(n) - static_cast<double>(t.size.size())) - sum;
}

double rc_from(const CommunityTally& t) {
  double sum = 0.0;
  for (std::size_t c = 0; c < t.size.size(); ++c) sum += (t.degree_sum[c] - t.internal_pairs[c]) / t.size[c];
  return sum;
}

double cf_from(const Graph& graph, const CommunityTally& t, double alpha) {
  double sum = 0.0;
  for (std::size_t v = 0; v < graph.node_count(); ++v) {
    double deg = static_cast<double>(graph.degree(static_cast<NodeId>(v)));
    if (deg == 0.0) continue;  // 0/0 counts as 0
    sum += t.internal_degree[v] / (alpha == 1.0 ? deg : std::pow(deg, alpha));
  }
  return sum;
}

double cs_from(const Partition& p, const CommunityTally& t, double r) {
  std::vector<double> power_sum(t.size.size(), 0.0);
  for (std::size_t v = 0; v < p.size(); ++v) {
    NodeId c = p.community_of(static_cast<NodeId>(v));
    double mu = t.internal_degree[v] / t.size[c];
    power_sum[c] += (r == 1.0 ? mu : std::pow(mu, r));
  }
  double sum = 0.0;
  for (std::size_t c = 0; c < t.size.size(); ++c) sum += (power_sum[c] / t.size[c]) * t.internal_pairs[c];
  return sum;
}

double q_from(const Graph& graph, const CommunityTally& t) {
  if (graph.edge_count() == 0) throw ModularityUndefined();
  const double m = static_cast<double>(graph.edge_count());
  double q = 0.0;
  for (std::size_t c = 0; c < t.size.size(); ++c) {
    double share = t.degree_sum[c] / (2.0 * m);
    q += (t.internal_pairs[c] / 2.0) / m - share * share;
  }
  return q;
}

}  // namespace

double kernel_kmeans(const Graph& graph, const Partition& p) { return kkm_from(tally(graph, p), graph.node_count()); }

double ratio_cut(const Graph& graph, const Partition& p) { return rc_from(tally(graph, p)); }

double community_fitness(const Graph& graph, const Partition& p, double alpha) {
  return cf_from(graph, tally(graph, p), alpha);
}

double community_score(const Graph& graph, const Partition& p, double r) { return cs_from(p, tally(graph, p), r); }

double modularity(const Graph& graph, const Partition& p) { return q_from(graph, tally(graph, p)); }

RawObjectives compute_objectives(const Graph& graph, const Partition& p, const ObjectiveParams& params) {
  CommunityTally t = tally(graph, p);
  RawObjectives raw;
  raw.q = q_from(graph, t);
  raw.kkm = kkm_from(t, graph.node_count());
  raw.rc = rc_from(t);
  raw.cf = cf_from(graph, t, params.alpha);
  raw.cs = cs_from(p, t, params.r);
  return raw;
}

ObjectiveVector make_objective_vector(Variant variant, const RawObjectives& raw) {
  ObjectiveVector out;
  out.variant = variant;
  out.raw = raw;
  if (variant == Variant::KRM) out.values = {raw.kkm, raw.rc, -raw.q};
  else out.values = {-raw.cf, -raw.cs, -raw.q};
  return out;
}

ObjectiveVector evaluate(Variant variant, const Graph& graph, const Partition& p, const ObjectiveParams& params) {
  return make_objective_vector(variant, compute_objectives(graph, p, params));
}

ObjectiveVector evaluate(Variant variant, const Graph& graph, const Genotype& g, const ObjectiveParams& params) {
  return evaluate(variant, graph, decode(graph, g), params);
}

}  // namespace moocd
