#pragma once

// Slow, obviously-correct reference implementations used only by tests.

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "moocd/graph.hpp"
#include "moocd/objectives.hpp"

namespace oracle {

using moocd::Graph;
using moocd::NodeId;
using moocd::ObjectivePoint;
using Matrix = std::vector<std::vector<int>>;

inline Matrix adjacency(const Graph& g) {
  const std::size_t n = g.node_count();
  Matrix a(n, std::vector<int>(n, 0));
  for (auto [u, v] : g.edges()) a[u][v] = a[v][u] = 1;
  return a;
}

inline Graph random_graph(std::size_t n, double density, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(density);
  std::vector<Graph::Edge> edges;
  for (NodeId u = 0; u < static_cast<NodeId>(n); ++u) {
    for (NodeId v = u + 1; v < static_cast<NodeId>(n); ++v) {
      if (coin(rng)) edges.emplace_back(u, v);
    }
  }
  return Graph::from_edges(n, edges);
}

// Every set partition of {0..n-1} as restricted growth strings.
inline void for_each_set_partition(std::size_t n, const std::function<void(const std::vector<NodeId>&)>& visit) {
  std::vector<NodeId> a(n, 0);
  std::function<void(std::size_t, NodeId)> rec = [&](std::size_t i, NodeId max_used) {
    if (i == n) {
      visit(a);
      return;
    }
    for (NodeId c = 0; c <= max_used + 1; ++c) {
      a[i] = c;
      rec(i + 1, std::max(max_used, c));
    }
  };
  if (n == 0) return;
  a[0] = 0;
  rec(1, 0);
}

inline std::vector<NodeId> random_assignment(std::size_t n, std::size_t max_k, std::mt19937_64& rng) {
  std::uniform_int_distribution<NodeId> pick(0, static_cast<NodeId>(max_k) - 1);
  std::vector<NodeId> a(n);
  for (auto& x : a) x = pick(rng);
  return a;
}

// Objectives as literal sums over the adjacency matrix.
struct Naive {
  double kkm, rc, cf, cs, q;
};

inline Naive naive_objectives(const Graph& g, const std::vector<NodeId>& assign, double alpha = 1.0, double r = 1.0) {
  const Matrix a = adjacency(g);
  const std::size_t n = a.size();
  NodeId k = 0;
  for (NodeId c : assign) k = std::max(k, static_cast<NodeId>(c + 1));
  std::vector<std::vector<std::size_t>> comms(static_cast<std::size_t>(k));
  for (std::size_t i = 0; i < n; ++i) comms[static_cast<std::size_t>(assign[i])].push_back(i);
  std::erase_if(comms, [](auto& c) { return c.empty(); });

  Naive out{};
  double m = 0;
  std::vector<double> deg(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) deg[i] += a[i][j];
    m += deg[i];
  }
  m /= 2;

  double internal_sum = 0;
  for (const auto& c : comms) {
    double size = static_cast<double>(c.size());
    double l_in = 0, l_out = 0;
    for (std::size_t i : c) {
      for (std::size_t j = 0; j < n; ++j) {
        bool same = assign[i] == assign[j];
        if (same) l_in += a[i][j];
        else l_out += a[i][j];
      }
    }
    internal_sum += l_in / size;
    out.rc += l_out / size;

    double mu_sum = 0;
    for (std::size_t i : c) {
      double kin = 0, kout = 0;
      for (std::size_t j = 0; j < n; ++j) {
        if (assign[i] == assign[j]) kin += a[i][j];
        else kout += a[i][j];
      }
      if (kin + kout > 0) out.cf += kin / std::pow(kin + kout, alpha);
      mu_sum += std::pow(kin / size, r);
    }
    out.cs += (mu_sum / size) * l_in;
  }
  out.kkm = 2.0 * static_cast<double>(n - comms.size()) - internal_sum;

  // Newman's form: (1/2m) sum_ij (A_ij - k_i k_j / 2m) delta(c_i, c_j).
  if (m > 0) {
    double q = 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (assign[i] == assign[j]) q += a[i][j] - deg[i] * deg[j] / (2 * m);
      }
    }
    out.q = q / (2 * m);
  }
  return out;
}

inline bool dominates(const ObjectivePoint& a, const ObjectivePoint& b) {
  bool strict = false;
  for (int j = 0; j < 3; ++j) {
    if (a[j] > b[j]) return false;
    if (a[j] < b[j]) strict = true;
  }
  return strict;
}

// Repeatedly peels off the points no remaining point dominates.
inline std::vector<std::vector<std::size_t>> peel_fronts(const std::vector<ObjectivePoint>& pts) {
  std::vector<std::vector<std::size_t>> fronts;
  std::vector<bool> done(pts.size(), false);
  std::size_t left = pts.size();
  while (left > 0) {
    std::vector<std::size_t> front;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (done[i]) continue;
      bool dominated = false;
      for (std::size_t j = 0; j < pts.size() && !dominated; ++j) {
        dominated = !done[j] && dominates(pts[j], pts[i]);
      }
      if (!dominated) front.push_back(i);
    }
    for (std::size_t i : front) done[i] = true;
    left -= front.size();
    fronts.push_back(front);
  }
  return fronts;
}

struct MonteCarlo {
  double estimate;
  double sigma;
};

// Hypervolume (maximise, origin reference) by uniform sampling of the bounding box.
inline MonteCarlo monte_carlo_hv(const std::vector<ObjectivePoint>& pts, std::size_t samples, std::mt19937_64& rng) {
  ObjectivePoint hi{0, 0, 0};
  for (const auto& p : pts) {
    for (int j = 0; j < 3; ++j) hi[j] = std::max(hi[j], p[j]);
  }
  const double box = hi[0] * hi[1] * hi[2];
  if (box == 0) return {0, 0};
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::size_t inside = 0;
  for (std::size_t s = 0; s < samples; ++s) {
    ObjectivePoint x{u(rng) * hi[0], u(rng) * hi[1], u(rng) * hi[2]};
    for (const auto& p : pts) {
      if (x[0] <= p[0] && x[1] <= p[1] && x[2] <= p[2]) {
        ++inside;
        break;
      }
    }
  }
  double frac = static_cast<double>(inside) / static_cast<double>(samples);
  return {frac * box, box * std::sqrt(frac * (1 - frac) / static_cast<double>(samples))};
}

inline double naive_igd(const std::vector<ObjectivePoint>& front, const std::vector<ObjectivePoint>& ref) {
  double total = 0;
  for (const auto& z : ref) {
    double best = INFINITY;
    for (const auto& a : front) {
      best = std::min(best, std::hypot(z[0] - a[0], z[1] - a[1], z[2] - a[2]));
    }
    total += best;
  }
  return total / static_cast<double>(ref.size());
}

}  // namespace oracle
