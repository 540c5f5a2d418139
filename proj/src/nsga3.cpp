#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "moocd/moea.hpp"

namespace moocd {

std::string_view to_string(Algorithm a) { return a == Algorithm::NSGA3 ? "nsga3" : "moead"; }

Algorithm parse_algorithm(std::string_view text) {
  if (text == "nsga3" || text == "NSGA3" || text == "nsga-iii") return Algorithm::NSGA3;
  if (text == "moead" || text == "MOEAD" || text == "moea/d") return Algorithm::MOEAD;
  throw ValidationError("unknown algorithm '" + std::string(text) + "' (expected nsga3 or moead)");
}

void RunConfig::validate() const {
  if (population_size < 4) throw ValidationError("population size must be at least 4");
  if (generations < 1) throw ValidationError("generations must be at least 1");
  if (!(crossover_prob >= 0.0 && crossover_prob <= 1.0)) throw ValidationError("crossover probability must lie in [0,1]");
  if (mutation_prob > 1.0 || std::isnan(mutation_prob)) throw ValidationError("mutation probability must lie in [0,1]");
  if (!(params.alpha > 0.0)) throw ValidationError("alpha must be positive");
  if (!(params.r > 0.0)) throw ValidationError("r must be positive");
  if (moead_neighbors < 2) throw ValidationError("MOEA/D needs at least 2 neighbours");
  if (!(pbi_theta >= 0.0)) throw ValidationError("PBI theta must be non-negative");
}

double RunConfig::mutation_rate_for(const Graph& graph) const {
  return mutation_prob < 0.0 ? 1.0 / static_cast<double>(graph.node_count()) : mutation_prob;
}

Individual make_individual(const Graph& graph, Genotype genotype, Variant variant, const ObjectiveParams& params) {
  Partition p = decode(graph, genotype);
  ObjectiveVector obj = evaluate(variant, graph, p, params);
  return Individual{std::move(genotype), std::move(p), obj};
}

namespace {

constexpr double kExtremeWeightFloor = 1e-6;
constexpr double kInterceptFloor = 1e-10;

// Solves the 3x3 system rows * x = 1 with partial pivoting.
bool solve_hyperplane(std::array<ObjectivePoint, 3> rows, ObjectivePoint& x) {
  std::array<double, 3> rhs{1.0, 1.0, 1.0};
  for (int col = 0; col < 3; ++col) {
    int pivot = col;
    for (int r = col + 1; r < 3; ++r) {
      if (std::abs(rows[r][col]) > std::abs(rows[pivot][col])) pivot = r;
    }
    if (std::abs(rows[pivot][col]) < 1e-12) return false;
    std::swap(rows[pivot], rows[col]);
    std::swap(rhs[pivot], rhs[col]);
    for (int r = col + 1; r < 3; ++r) {
      double f = rows[r][col] / rows[col][col];
      for (int c = col; c < 3; ++c) rows[r][c] -= f * rows[col][c];
      rhs[r] -= f * rhs[col];
    }
  }
  for (int r = 2; r >= 0; --r) {
    double s = rhs[r];
    for (int c = r + 1; c < 3; ++c) s -= rows[r][c] * x[c];
    x[r] = s / rows[r][r];
  }
  return true;
}

// Translates by the ideal point and divides by hyperplane intercepts, falling
// back to the per-objective range (or 1) when the extremes are degenerate.
std::vector<ObjectivePoint> normalize(std::span<const ObjectivePoint> pool, std::span<const std::size_t> members) {
  ObjectivePoint ideal;
  ideal.fill(std::numeric_limits<double>::infinity());
  ObjectivePoint worst;
  worst.fill(-std::numeric_limits<double>::infinity());
  for (std::size_t m : members) {
    for (int j = 0; j < 3; ++j) {
      ideal[j] = std::min(ideal[j], pool[m][j]);
      worst[j] = std::max(worst[j], pool[m][j]);
    }
  }
  std::vector<ObjectivePoint> translated;
  translated.reserve(members.size());
  for (std::size_t m : members) {
    translated.push_back({pool[m][0] - ideal[0], pool[m][1] - ideal[1], pool[m][2] - ideal[2]});
  }

  std::array<ObjectivePoint, 3> extremes{};
  for (int axis = 0; axis < 3; ++axis) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& t : translated) {
      double asf = 0.0;
      for (int j = 0; j < 3; ++j) asf = std::max(asf, t[j] / (j == axis ? 1.0 : kExtremeWeightFloor));
      if (asf < best) {
        best = asf;
        extremes[axis] = t;
      }
    }
  }

  ObjectivePoint intercepts;
  ObjectivePoint plane;
  bool ok = solve_hyperplane(extremes, plane);
  for (int j = 0; ok && j < 3; ++j) {
    intercepts[j] = 1.0 / plane[j];
    if (!std::isfinite(intercepts[j]) || intercepts[j] <= kInterceptFloor) ok = false;
  }
  if (!ok) {
    for (int j = 0; j < 3; ++j) {
      double range = worst[j] - ideal[j];
      intercepts[j] = range > kInterceptFloor ? range : 1.0;
    }
  }
  for (auto& t : translated) {
    for (int j = 0; j < 3; ++j) t[j] /= intercepts[j];
  }
  return translated;
}

double perpendicular_distance(const ObjectivePoint& f, const ObjectivePoint& dir) {
  double dot = 0.0, norm2 = 0.0;
  for (int j = 0; j < 3; ++j) {
    dot += f[j] * dir[j];
    norm2 += dir[j] * dir[j];
  }
  double scale = dot / norm2;
  double d2 = 0.0;
  for (int j = 0; j < 3; ++j) {
    double diff = f[j] - scale * dir[j];
    d2 += diff * diff;
  }
  return std::sqrt(d2);
}

}  // namespace

std::vector<std::size_t> nsga3_environmental_selection(std::span<const ObjectivePoint> pool,
                                                        std::span<const ObjectivePoint> reference_points,
                                                        std::size_t target, Rng& rng) {
  if (pool.size() < target) throw ValidationError("selection pool is smaller than the target size");
  if (reference_points.empty()) throw ValidationError("no reference points");

  Fronts fronts = fast_nondominated_sort(pool);
  std::vector<std::size_t> selected;
  selected.reserve(target);
  std::size_t split = 0;
  for (; split < fronts.size(); ++split) {
    if (selected.size() + fronts[split].size() > target) break;
    selected.insert(selected.end(), fronts[split].begin(), fronts[split].end());
  }
  if (selected.size() == target) return selected;

  const auto& last = fronts[split];
  std::vector<std::size_t> members = selected;
  members.insert(members.end(), last.begin(), last.end());
  std::vector<ObjectivePoint> normalized = normalize(pool, members);

  const std::size_t refs = reference_points.size();
  std::vector<std::size_t> niche_count(refs, 0);
  // Candidates from the splitting front, bucketed by reference direction.
  std::vector<std::vector<std::pair<double, std::size_t>>> candidates(refs);
  for (std::size_t k = 0; k < members.size(); ++k) {
    std::size_t best_ref = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < refs; ++r) {
      double d = perpendicular_distance(normalized[k], reference_points[r]);
      if (d < best_d) {
        best_d = d;
        best_ref = r;
      }
    }
    if (k < selected.size()) ++niche_count[best_ref];
    else candidates[best_ref].emplace_back(best_d, members[k]);
  }

  std::vector<bool> active(refs, true);
  std::size_t remaining = target - selected.size();
  std::vector<std::size_t> ties;
  while (remaining > 0) {
    std::size_t min_count = std::numeric_limits<std::size_t>::max();
    ties.clear();
    for (std::size_t r = 0; r < refs; ++r) {
      if (!active[r]) continue;
      if (niche_count[r] < min_count) {
        min_count = niche_count[r];
        ties.assign(1, r);
      } else if (niche_count[r] == min_count) {
        ties.push_back(r);
      }
    }
    // There are always enough candidates left in the splitting front.
    std::size_t r = ties[uniform_index(rng, ties.size())];
    auto& bucket = candidates[r];
    if (bucket.empty()) {
      active[r] = false;
      continue;
    }
    std::size_t pick;
    if (niche_count[r] == 0) {
      pick = static_cast<std::size_t>(std::min_element(bucket.begin(), bucket.end()) - bucket.begin());
    } else {
      pick = uniform_index(rng, bucket.size());
    }
    selected.push_back(bucket[pick].second);
    bucket.erase(bucket.begin() + static_cast<std::ptrdiff_t>(pick));
    ++niche_count[r];
    --remaining;
  }
  return selected;
}

namespace {

double best_modularity(std::span<const Individual> population) {
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& ind : population) best = std::max(best, ind.objectives.raw.q);
  return best;
}

std::vector<Individual> rank_one(const std::vector<Individual>& population) {
  std::vector<ObjectivePoint> points;
  points.reserve(population.size());
  for (const auto& ind : population) points.push_back(ind.objectives.values);
  Fronts fronts = fast_nondominated_sort(points);
  std::vector<Individual> out;
  if (fronts.empty()) return out;
  for (std::size_t i : fronts.front()) out.push_back(population[i]);
  return out;
}

}  // namespace

RunResult nsga3_run(const Graph& graph, const RunConfig& config, const GenerationObserver& observer) {
  config.validate();
  if (config.algorithm != Algorithm::NSGA3) throw ValidationError("nsga3_run called with a non-NSGA3 config");
  auto started = std::chrono::steady_clock::now();

  Rng rng(config.seed);
  const auto n_pop = static_cast<std::size_t>(config.population_size);
  const double p_m = config.mutation_rate_for(graph);
  const auto refs = das_dennis_reference_points(reference_divisions_for(n_pop));

  std::vector<Genotype> genotypes;
  genotypes.reserve(n_pop);
  for (std::size_t i = 0; i < n_pop; ++i) genotypes.push_back(random_genotype(graph, rng));
  genotypes = dedupe_and_exclude(std::move(genotypes), graph, rng);

  std::vector<Individual> population;
  population.reserve(n_pop);
  for (auto& g : genotypes) population.push_back(make_individual(graph, std::move(g), config.variant, config.params));

  RunResult result;
  result.config = config;
  result.history.reserve(static_cast<std::size_t>(config.generations));
  if (observer) observer(0, population);

  std::vector<std::size_t> order(n_pop);
  for (int gen = 1; gen <= config.generations; ++gen) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::shuffle(order.begin(), order.end(), rng);
    if (order.size() % 2 == 1) order.push_back(uniform_index(rng, n_pop));

    std::vector<Genotype> pool;
    pool.reserve(2 * n_pop + 1);
    for (const auto& ind : population) pool.push_back(ind.genotype);
    for (std::size_t k = 0; k + 1 < order.size() && pool.size() < 2 * n_pop; k += 2) {
      const Genotype& a = population[order[k]].genotype;
      const Genotype& b = population[order[k + 1]].genotype;
      auto children = bernoulli(rng, config.crossover_prob) ? uniform_crossover(a, b, rng) : std::pair{a, b};
      pool.push_back(neighbor_mutation(graph, children.first, p_m, rng));
      if (pool.size() < 2 * n_pop) pool.push_back(neighbor_mutation(graph, children.second, p_m, rng));
    }
    order.resize(n_pop);

    std::vector<std::size_t> replaced;
    pool = dedupe_and_exclude(std::move(pool), graph, rng, &replaced);
    std::vector<bool> fresh(pool.size(), false);
    for (std::size_t i : replaced) fresh[i] = true;

    std::vector<Individual> evaluated;
    evaluated.reserve(pool.size());
    for (std::size_t i = 0; i < pool.size(); ++i) {
      if (i < n_pop && !fresh[i]) evaluated.push_back(std::move(population[i]));
      else evaluated.push_back(make_individual(graph, std::move(pool[i]), config.variant, config.params));
    }

    std::vector<ObjectivePoint> points;
    points.reserve(evaluated.size());
    for (const auto& ind : evaluated) points.push_back(ind.objectives.values);
    auto survivors = nsga3_environmental_selection(points, refs, n_pop, rng);

    population.clear();
    for (std::size_t i : survivors) population.push_back(std::move(evaluated[i]));
    result.history.push_back(best_modularity(population));
    if (observer) observer(gen, population);
  }

  result.final_front = rank_one(population);
  result.final_population = std::move(population);
  result.wall_time_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return result;
}

RunResult run(const Graph& graph, const RunConfig& config, const GenerationObserver& observer) {
  return config.algorithm == Algorithm::NSGA3 ? nsga3_run(graph, config, observer) : moead_run(graph, config, observer);
}

}  // namespace moocd
