#include "moocd/pareto.hpp"

#include <algorithm>

namespace moocd {

bool dominates(const ObjectivePoint& a, const ObjectivePoint& b) {
  bool strictly = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) return false;
    if (a[i] < b[i]) strictly = true;
  }
  return strictly;
}

Fronts fast_nondominated_sort(std::span<const ObjectivePoint> points) {
  const std::size_t n = points.size();
  std::vector<std::vector<std::size_t>> dominated_by_me(n);
  std::vector<std::size_t> domination_count(n, 0);
  Fronts fronts;
  std::vector<std::size_t> current;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (dominates(points[i], points[j])) {
        dominated_by_me[i].push_back(j);
        ++domination_count[j];
      } else if (dominates(points[j], points[i])) {
        dominated_by_me[j].push_back(i);
        ++domination_count[i];
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (domination_count[i] == 0) current.push_back(i);
  }
  while (!current.empty()) {
    std::vector<std::size_t> next;
    for (std::size_t i : current) {
      for (std::size_t j : dominated_by_me[i]) {
        if (--domination_count[j] == 0) next.push_back(j);
      }
    }
    std::sort(next.begin(), next.end());
    fronts.push_back(std::move(current));
    current = std::move(next);
  }
  return fronts;
}

Fronts fast_nondominated_sort(std::span<const ObjectiveVector> points) {
  std::vector<ObjectivePoint> values;
  values.reserve(points.size());
  for (const auto& p : points) values.push_back(p.values);
  return fast_nondominated_sort(values);
}

std::vector<ObjectivePoint> das_dennis_reference_points(int divisions) {
  if (divisions < 1) throw ValidationError("reference point divisions must be >= 1");
  std::vector<ObjectivePoint> out;
  const double p = divisions;
  for (int i = divisions; i >= 0; --i) {
    for (int j = divisions - i; j >= 0; --j) {
      int k = divisions - i - j;
      out.push_back({i / p, j / p, k / p});
    }
  }
  return out;
}

int reference_divisions_for(std::size_t population) {
  int p = 1;
  while (static_cast<std::size_t>((p + 3) * (p + 2) / 2) <= population) ++p;
  return p;
}

}  // namespace moocd
