#pragma once

#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

#include "moocd/graph.hpp"
#include "moocd/random.hpp"

namespace moocd {

/// Locus-based encoding: gene i is node i itself or one of its neighbours.
/// Communities are the connected components of the links {i, genes[i]}.
struct Genotype {
  std::vector<NodeId> genes;

  std::size_t size() const noexcept { return genes.size(); }
  friend bool operator==(const Genotype&, const Genotype&) = default;
};

/// Canonical, relabelling-invariant form of a decoded partition: communities
/// ordered by smallest member, each as a sorted member list, separated by -1.
struct Signature {
  std::vector<NodeId> data;

  friend bool operator==(const Signature&, const Signature&) = default;
};

struct SignatureHash {
  std::size_t operator()(const Signature& s) const noexcept;
};

/// Attempts per slot before dedupe_and_exclude falls back to the all-self genotype.
inline constexpr int kMaxResampleAttempts = 50;

bool is_feasible(const Graph& graph, const Genotype& g);

Genotype all_self_genotype(std::size_t n);
Genotype random_genotype(const Graph& graph, Rng& rng);

/// Throws ValidationError if a gene is neither self nor a neighbour.
Partition decode(const Graph& graph, const Genotype& g);

/// Per locus, the children swap parent genes with probability 1/2.
std::pair<Genotype, Genotype> uniform_crossover(const Genotype& a, const Genotype& b, Rng& rng);

/// Each gene is resampled from {i} ∪ adj(i) with probability p_m.
Genotype neighbor_mutation(const Graph& graph, const Genotype& g, double p_m, Rng& rng);

Signature signature(const Partition& p);
Signature signature(const Graph& graph, const Genotype& g);

/// Keep-first duplicate filter plus single-community exclusion.
///
/// Walks the population in order. A member whose signature was already seen,
/// or (for n >= 2) whose decoding is one community, is replaced by fresh random
/// genotypes until one passes, for up to kMaxResampleAttempts tries. After that
/// the all-self genotype is used; if that signature is taken too, single random
/// genes are redirected to neighbours until the signature is new, giving up
/// after the same attempt budget.
///
/// The optional `replaced` output receives the indices of rewritten slots.
std::vector<Genotype> dedupe_and_exclude(std::vector<Genotype> population, const Graph& graph, Rng& rng,
                                         std::vector<std::size_t>* replaced = nullptr);

}  // namespace moocd
