#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "moocd/encoding.hpp"
#include "moocd/objectives.hpp"
#include "moocd/pareto.hpp"
#include "moocd/random.hpp"

namespace moocd {

enum class Algorithm { NSGA3, MOEAD };

std::string_view to_string(Algorithm a);
Algorithm parse_algorithm(std::string_view text);

struct RunConfig {
  Variant variant = Variant::KRM;
  Algorithm algorithm = Algorithm::NSGA3;
  int population_size = 100;
  int generations = 100;
  double crossover_prob = 0.8;
  /// Per-gene rate. Negative means 1/n for the graph being optimised.
  double mutation_prob = -1.0;
  std::uint64_t seed = 1;
  ObjectiveParams params;
  int moead_neighbors = 20;
  double pbi_theta = 5.0;

  /// Throws ValidationError on out-of-range fields.
  void validate() const;
  double mutation_rate_for(const Graph& graph) const;
};

struct Individual {
  Genotype genotype;
  Partition partition;
  ObjectiveVector objectives;
};

struct RunResult {
  std::vector<Individual> final_front;
  std::vector<Individual> final_population;
  /// Best raw modularity among the population after each generation.
  std::vector<double> history;
  RunConfig config;
  double wall_time_seconds = 0.0;
};

/// Called with the surviving population after initialisation (generation 0)
/// and after every generation.
using GenerationObserver = std::function<void(int generation, std::span<const Individual> population)>;

Individual make_individual(const Graph& graph, Genotype genotype, Variant variant, const ObjectiveParams& params);

/// NSGA-III survivor selection over an evaluated pool. Returns `target` indices
/// into `pool`: whole fronts while they fit, then niche-preserving picks from
/// the splitting front against `reference_points`. Ties are broken with `rng`.
std::vector<std::size_t> nsga3_environmental_selection(std::span<const ObjectivePoint> pool,
                                                        std::span<const ObjectivePoint> reference_points,
                                                        std::size_t target, Rng& rng);

RunResult nsga3_run(const Graph& graph, const RunConfig& config, const GenerationObserver& observer = {});

/// Penalty-based boundary intersection: d1 + theta * d2 relative to `ideal`.
double pbi_scalarize(const ObjectivePoint& f, const ObjectivePoint& weight, const ObjectivePoint& ideal, double theta);

/// Weight vectors for a MOEA/D population: the simplex lattice for the largest
/// fitting division count, padded with uniformly random simplex points.
std::vector<ObjectivePoint> moead_weights(std::size_t population, Rng& rng);

RunResult moead_run(const Graph& graph, const RunConfig& config, const GenerationObserver& observer = {});

/// Dispatches on config.algorithm.
RunResult run(const Graph& graph, const RunConfig& config, const GenerationObserver& observer = {});

}  // namespace moocd
