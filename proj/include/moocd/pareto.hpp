#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "moocd/objectives.hpp"

namespace moocd {

/// Minimisation dominance: a <= b everywhere and a < b somewhere.
bool dominates(const ObjectivePoint& a, const ObjectivePoint& b);

using Fronts = std::vector<std::vector<std::size_t>>;

/// Deb's fast non-dominated sort. Indices inside a front are ascending.
Fronts fast_nondominated_sort(std::span<const ObjectivePoint> points);
Fronts fast_nondominated_sort(std::span<const ObjectiveVector> points);

/// Uniform simplex lattice: every (i/p, j/p, k/p) with i+j+k = p, C(p+2,2) points.
std::vector<ObjectivePoint> das_dennis_reference_points(int divisions);

/// Largest p >= 1 with C(p+2,2) <= population (1 if population < 3).
int reference_divisions_for(std::size_t population);

}  // namespace moocd
