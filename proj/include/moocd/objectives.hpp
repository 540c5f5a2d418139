#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <string_view>

#include "moocd/encoding.hpp"
#include "moocd/graph.hpp"

namespace moocd {

/// KRM: kernel k-means, ratio cut, modularity.
/// CCM: community fitness, community score, modularity.
enum class Variant { KRM, CCM };

std::string_view to_string(Variant v);
Variant parse_variant(std::string_view text);

class ModularityUndefined : public std::domain_error {
 public:
  ModularityUndefined() : std::domain_error("modularity is undefined for a graph without edges") {}
};

struct ObjectiveParams {
  double alpha = 1.0;  // community fitness exponent
  double r = 1.0;      // community score exponent
};

/// All five measures with their natural signs.
struct RawObjectives {
  double kkm = 0.0;
  double rc = 0.0;
  double cf = 0.0;
  double cs = 0.0;
  double q = 0.0;

  friend bool operator==(const RawObjectives&, const RawObjectives&) = default;
};

using ObjectivePoint = std::array<double, 3>;

/// Three objectives, all to be minimised. KRM maps to (KKM, RC, -Q) and CCM to
/// (-CF, -CS, -Q). `raw` keeps the signed values for reporting.
struct ObjectiveVector {
  Variant variant = Variant::KRM;
  ObjectivePoint values{};
  RawObjectives raw;

  friend bool operator==(const ObjectiveVector&, const ObjectiveVector&) = default;
};

double kernel_kmeans(const Graph& graph, const Partition& p);
double ratio_cut(const Graph& graph, const Partition& p);
double community_fitness(const Graph& graph, const Partition& p, double alpha = 1.0);
double community_score(const Graph& graph, const Partition& p, double r = 1.0);
/// Throws ModularityUndefined when the graph has no edges.
double modularity(const Graph& graph, const Partition& p);

/// Single pass over the graph computing every measure.
RawObjectives compute_objectives(const Graph& graph, const Partition& p, const ObjectiveParams& params = {});

ObjectiveVector make_objective_vector(Variant variant, const RawObjectives& raw);

ObjectiveVector evaluate(Variant variant, const Graph& graph, const Partition& p, const ObjectiveParams& params = {});
ObjectiveVector evaluate(Variant variant, const Graph& graph, const Genotype& g, const ObjectiveParams& params = {});

}  // namespace moocd
