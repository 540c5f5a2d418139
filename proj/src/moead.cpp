#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>

#include "moocd/moea.hpp"

namespace moocd {

namespace {

// A child may overwrite at most this many neighbouring subproblems per update.
constexpr int kReplacementCap = 2;

class Archive {
 public:
  void offer(const Individual& ind) {
    Signature sig = signature(ind.partition);
    for (const auto& s : signatures_) {
      if (s == sig) return;
    }
    for (const auto& m : members_) {
      if (dominates(m.objectives.values, ind.objectives.values)) return;
    }
    std::size_t keep = 0;
    for (std::size_t i = 0; i < members_.size(); ++i) {
      if (dominates(ind.objectives.values, members_[i].objectives.values)) continue;
      if (keep != i) {
        members_[keep] = std::move(members_[i]);
        signatures_[keep] = std::move(signatures_[i]);
      }
      ++keep;
    }
    members_.resize(keep);
    signatures_.resize(keep);
    members_.push_back(ind);
    signatures_.push_back(std::move(sig));
  }

  const std::vector<Individual>& members() const { return members_; }

 private:
  std::vector<Individual> members_;
  std::vector<Signature> signatures_;
};

}  // namespace

double pbi_scalarize(const ObjectivePoint& f, const ObjectivePoint& weight, const ObjectivePoint& ideal, double theta) {
  double norm = 0.0;
  for (double w : weight) norm += w * w;
  norm = std::sqrt(norm);
  if (!(norm > 0.0)) throw ValidationError("PBI weight vector must be non-zero");
  double projection = 0.0;
  for (int j = 0; j < 3; ++j) projection += (f[j] - ideal[j]) * weight[j];
  double d1 = std::abs(projection) / norm;
  double d2 = 0.0;
  for (int j = 0; j < 3; ++j) {
    double diff = f[j] - ideal[j] - d1 * weight[j] / norm;
    d2 += diff * diff;
  }
  return d1 + theta * std::sqrt(d2);
}

std::vector<ObjectivePoint> moead_weights(std::size_t population, Rng& rng) {
  auto weights = das_dennis_reference_points(reference_divisions_for(population));
  if (weights.size() > population) weights.resize(population);
  std::exponential_distribution<double> gamma1(1.0);
  while (weights.size() < population) {
    ObjectivePoint w{gamma1(rng), gamma1(rng), gamma1(rng)};
    double s = w[0] + w[1] + w[2];
    for (double& x : w) x /= s;
    weights.push_back(w);
  }
  return weights;
}

RunResult moead_run(const Graph& graph, const RunConfig& config, const GenerationObserver& observer) {
  config.validate();
  if (config.algorithm != Algorithm::MOEAD) throw ValidationError("moead_run called with a non-MOEAD config");
  auto started = std::chrono::steady_clock::now();

  Rng rng(config.seed);
  const auto n_pop = static_cast<std::size_t>(config.population_size);
  const double p_m = config.mutation_rate_for(graph);
  const auto weights = moead_weights(n_pop, rng);
  const std::size_t t_size = std::min<std::size_t>(static_cast<std::size_t>(config.moead_neighbors), n_pop);

  std::vector<std::vector<std::size_t>> neighborhood(n_pop);
  for (std::size_t i = 0; i < n_pop; ++i) {
    std::vector<std::pair<double, std::size_t>> dist;
    dist.reserve(n_pop);
    for (std::size_t j = 0; j < n_pop; ++j) {
      double d = 0.0;
      for (int k = 0; k < 3; ++k) d += (weights[i][k] - weights[j][k]) * (weights[i][k] - weights[j][k]);
      dist.emplace_back(d, j);
    }
    std::sort(dist.begin(), dist.end());
    for (std::size_t k = 0; k < t_size; ++k) neighborhood[i].push_back(dist[k].second);
  }

  std::vector<Genotype> genotypes;
  genotypes.reserve(n_pop);
  for (std::size_t i = 0; i < n_pop; ++i) genotypes.push_back(random_genotype(graph, rng));
  genotypes = dedupe_and_exclude(std::move(genotypes), graph, rng);

  std::vector<Individual> population;
  population.reserve(n_pop);
  ObjectivePoint ideal;
  ideal.fill(std::numeric_limits<double>::infinity());
  Archive archive;
  for (auto& g : genotypes) {
    population.push_back(make_individual(graph, std::move(g), config.variant, config.params));
    for (int j = 0; j < 3; ++j) ideal[j] = std::min(ideal[j], population.back().objectives.values[j]);
    archive.offer(population.back());
  }

  RunResult result;
  result.config = config;
  if (observer) observer(0, population);

  std::vector<std::size_t> visit;
  for (int gen = 1; gen <= config.generations; ++gen) {
    for (std::size_t i = 0; i < n_pop; ++i) {
      const auto& hood = neighborhood[i];
      std::size_t a = hood[uniform_index(rng, hood.size())];
      std::size_t b = hood[uniform_index(rng, hood.size())];
      while (b == a && hood.size() > 1) b = hood[uniform_index(rng, hood.size())];

      Genotype child = bernoulli(rng, config.crossover_prob)
                           ? uniform_crossover(population[a].genotype, population[b].genotype, rng).first
                           : population[a].genotype;
      child = neighbor_mutation(graph, child, p_m, rng);
      if (graph.node_count() >= 2 && decode(graph, child).community_count() == 1) {
        std::vector<Genotype> single{std::move(child)};
        child = std::move(dedupe_and_exclude(std::move(single), graph, rng).front());
      }
      Individual offspring = make_individual(graph, std::move(child), config.variant, config.params);
      for (int j = 0; j < 3; ++j) ideal[j] = std::min(ideal[j], offspring.objectives.values[j]);

      visit = hood;
      std::shuffle(visit.begin(), visit.end(), rng);
      int replaced = 0;
      for (std::size_t j : visit) {
        double mine = pbi_scalarize(offspring.objectives.values, weights[j], ideal, config.pbi_theta);
        double theirs = pbi_scalarize(population[j].objectives.values, weights[j], ideal, config.pbi_theta);
        if (mine < theirs) {
          population[j] = offspring;
          if (++replaced >= kReplacementCap) break;
        }
      }
      archive.offer(offspring);
    }
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& ind : population) best = std::max(best, ind.objectives.raw.q);
    result.history.push_back(best);
    if (observer) observer(gen, population);
  }

  result.final_front = archive.members();
  result.final_population = std::move(population);
  result.wall_time_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return result;
}

}  // namespace moocd
