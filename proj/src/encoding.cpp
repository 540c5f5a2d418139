#include "moocd/encoding.hpp"

#include <numeric>
#include <string>
#include <unordered_set>

namespace moocd {

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), NodeId{0}); }

  NodeId find(NodeId v) {
    while (parent_[v] != v) {
      parent_[v] = parent_[parent_[v]];
      v = parent_[v];
    }
    return v;
  }

  // Union toward the smaller root so each root is its component's minimum.
  void unite(NodeId a, NodeId b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a < b) parent_[b] = a;
    else parent_[a] = b;
  }

 private:
  std::vector<NodeId> parent_;
};

NodeId random_allele(const Graph& graph, NodeId v, Rng& rng) {
  auto nbrs = graph.neighbors(v);
  std::size_t pick = uniform_index(rng, nbrs.size() + 1);
  return pick == 0 ? v : nbrs[pick - 1];
}

}  // namespace

std::size_t SignatureHash::operator()(const Signature& s) const noexcept {
  // FNV-1a over the node ids
  std::size_t h = 1469598103934665603ull;
  for (NodeId v : s.data) {
    h ^= static_cast<std::size_t>(static_cast<std::uint32_t>(v));
    h *= 1099511628211ull;
  }
  return h;
}

bool is_feasible(const Graph& graph, const Genotype& g) {
  if (g.size() != graph.node_count()) return false;
  for (std::size_t i = 0; i < g.size(); ++i) {
    NodeId gene = g.genes[i];
    if (gene == static_cast<NodeId>(i)) continue;
    if (gene < 0 || static_cast<std::size_t>(gene) >= graph.node_count()) return false;
    if (!graph.has_edge(static_cast<NodeId>(i), gene)) return false;
  }
  return true;
}

Genotype all_self_genotype(std::size_t n) {
  Genotype g;
  g.genes.resize(n);
  std::iota(g.genes.begin(), g.genes.end(), NodeId{0});
  return g;
}

Genotype random_genotype(const Graph& graph, Rng& rng) {
  Genotype g;
  g.genes.resize(graph.node_count());
  for (std::size_t i = 0; i < g.size(); ++i) g.genes[i] = random_allele(graph, static_cast<NodeId>(i), rng);
  return g;
}

Partition decode(const Graph& graph, const Genotype& g) {
  if (g.size() != graph.node_count()) throw ValidationError("genotype length does not match node count");
  DisjointSets sets(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    NodeId gene = g.genes[i];
    if (gene == static_cast<NodeId>(i)) continue;
    if (gene < 0 || static_cast<std::size_t>(gene) >= g.size() || !graph.has_edge(static_cast<NodeId>(i), gene)) {
      throw ValidationError("infeasible gene at locus " + std::to_string(i));
    }
    sets.unite(static_cast<NodeId>(i), gene);
  }
  std::vector<NodeId> roots(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) roots[i] = sets.find(static_cast<NodeId>(i));
  return Partition(roots);
}

std::pair<Genotype, Genotype> uniform_crossover(const Genotype& a, const Genotype& b, Rng& rng) {
  if (a.size() != b.size()) throw ValidationError("crossover parents differ in length");
  std::pair<Genotype, Genotype> children{a, b};
  std::bernoulli_distribution coin(0.5);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (coin(rng)) std::swap(children.first.genes[i], children.second.genes[i]);
  }
  return children;
}

Genotype neighbor_mutation(const Graph& graph, const Genotype& g, double p_m, Rng& rng) {
  Genotype out = g;
  if (p_m <= 0.0) return out;
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (bernoulli(rng, p_m)) out.genes[i] = random_allele(graph, static_cast<NodeId>(i), rng);
  }
  return out;
}

Signature signature(const Partition& p) {
  // Partition ids already follow smallest-member order, so communities() is canonical.
  Signature s;
  s.data.reserve(p.size() + p.community_count());
  for (const auto& members : p.communities()) {
    s.data.insert(s.data.end(), members.begin(), members.end());
    s.data.push_back(-1);
  }
  return s;
}

Signature signature(const Graph& graph, const Genotype& g) { return signature(decode(graph, g)); }

std::vector<Genotype> dedupe_and_exclude(std::vector<Genotype> population, const Graph& graph, Rng& rng,
                                         std::vector<std::size_t>* replaced) {
  const bool exclude_single = graph.node_count() >= 2;
  std::unordered_set<Signature, SignatureHash> seen;
  seen.reserve(population.size() * 2);

  auto acceptable = [&](const Partition& p, const Signature& s) {
    if (exclude_single && p.community_count() == 1) return false;
    return !seen.contains(s);
  };

  for (std::size_t slot = 0; slot < population.size(); ++slot) {
    Partition p = decode(graph, population[slot]);
    Signature s = signature(p);
    if (acceptable(p, s)) {
      seen.insert(std::move(s));
      continue;
    }
    if (replaced) replaced->push_back(slot);

    bool done = false;
    for (int attempt = 0; attempt < kMaxResampleAttempts && !done; ++attempt) {
      Genotype candidate = random_genotype(graph, rng);
      Partition cp = decode(graph, candidate);
      Signature cs = signature(cp);
      if (acceptable(cp, cs)) {
        population[slot] = std::move(candidate);
        seen.insert(std::move(cs));
        done = true;
      }
    }
    if (done) continue;

    Genotype fallback = all_self_genotype(graph.node_count());
    Signature fs = signature(graph, fallback);
    if (!seen.contains(fs)) {
      population[slot] = std::move(fallback);
      seen.insert(std::move(fs));
      continue;
    }
    Genotype work = fallback;
    for (int attempt = 0; attempt < kMaxResampleAttempts && !done; ++attempt) {
      auto v = static_cast<NodeId>(uniform_index(rng, graph.node_count()));
      auto nbrs = graph.neighbors(v);
      if (nbrs.empty()) continue;
      work.genes[v] = nbrs[uniform_index(rng, nbrs.size())];
      Partition wp = decode(graph, work);
      Signature ws = signature(wp);
      if (acceptable(wp, ws)) {
        population[slot] = work;
        seen.insert(std::move(ws));
        done = true;
      }
    }
    if (!done) population[slot] = std::move(fallback);
  }
  return population;
}

}  // namespace moocd
