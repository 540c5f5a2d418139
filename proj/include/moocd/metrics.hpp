#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "moocd/graph.hpp"
#include "moocd/moea.hpp"
#include "moocd/objectives.hpp"

namespace moocd {

/// Normalised mutual information with natural logs. Returns 1 when both
/// partitions are the single all-node cluster.
double nmi(const Partition& a, const Partition& b);

/// Mean, over reference points, of the Euclidean distance to the nearest front point.
double igd(std::span<const ObjectivePoint> front, std::span<const ObjectivePoint> reference);

/// Exact 3-D hypervolume in maximisation orientation: the volume of the union
/// of boxes [reference_point, p]. Points not weakly above the reference point
/// in every coordinate contribute nothing.
double hypervolume(std::span<const ObjectivePoint> front, const ObjectivePoint& reference_point);

/// Hypervolume of a minimisation-convention front measured from `nadir`,
/// i.e. hypervolume of (nadir - f) with the origin as reference.
double hypervolume_from_nadir(std::span<const ObjectivePoint> front, const ObjectivePoint& nadir);

/// Componentwise worst over both sets, pushed out by 10% of the spread.
ObjectivePoint hv_reference_point(std::span<const ObjectivePoint> front, std::span<const ObjectivePoint> reference);

inline constexpr double kInfiniteRatio = std::numeric_limits<double>::infinity();

/// hypervolume_from_nadir(front, nadir) / igd(front, reference); infinity when IGD is 0.
double hv_igd_ratio(std::span<const ObjectivePoint> front, std::span<const ObjectivePoint> reference,
                    const ObjectivePoint& nadir);

/// Approximate Pareto surface used as the IGD reference for one dataset/variant.
struct ReferenceFront {
  std::string dataset;
  Variant variant = Variant::KRM;
  std::uint64_t seed = 0;
  int population = 500;
  int generations = 500;
  double crossover_prob = 0.9;
  double mutation_prob = 0.0;
  std::vector<ObjectivePoint> points;

  friend bool operator==(const ReferenceFront&, const ReferenceFront&) = default;
};

struct ReferenceFrontOptions {
  int population = 500;
  int generations = 500;
  double crossover_prob = 0.9;
  ObjectiveParams params;
};

ReferenceFront build_reference_front(const Graph& graph, const std::string& dataset, Variant variant,
                                     std::uint64_t seed, const ReferenceFrontOptions& options = {});

void write_reference_front(std::ostream& out, const ReferenceFront& front);
ReferenceFront read_reference_front(std::istream& in);

/// `<dataset>_<variant>_s<seed>.ref`
std::string reference_front_filename(const std::string& dataset, Variant variant, std::uint64_t seed);

/// Loads the cached front from `directory` if present, otherwise builds and writes it.
ReferenceFront cached_reference_front(const std::string& directory, const Graph& graph, const std::string& dataset,
                                      Variant variant, std::uint64_t seed, const ReferenceFrontOptions& options = {});

std::vector<ObjectivePoint> objective_points(std::span<const Individual> individuals);

}  // namespace moocd
