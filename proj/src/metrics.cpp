#include "moocd/metrics.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>

namespace moocd {

double nmi(const Partition& a, const Partition& b) {
  if (a.size() != b.size()) throw ValidationError("NMI needs partitions over the same nodes");
  if (a.size() == 0) throw ValidationError("NMI of empty partitions");
  const std::size_t ka = a.community_count(), kb = b.community_count();
  const double n = static_cast<double>(a.size());

  std::unordered_map<std::uint64_t, double> joint;
  for (std::size_t v = 0; v < a.size(); ++v) {
    auto key = static_cast<std::uint64_t>(a.community_of(static_cast<NodeId>(v))) * kb +
               static_cast<std::uint64_t>(b.community_of(static_cast<NodeId>(v)));
    joint[key] += 1.0;
  }
  // A one-to-one contingency table means identical structures.
  if (ka == kb && joint.size() == ka) return 1.0;

  double denominator = 0.0;
  for (std::size_t i = 0; i < ka; ++i) {
    double c = static_cast<double>(a.community_size(static_cast<NodeId>(i)));
    denominator += c * std::log(c / n);
  }
  for (std::size_t j = 0; j < kb; ++j) {
    double c = static_cast<double>(b.community_size(static_cast<NodeId>(j)));
    denominator += c * std::log(c / n);
  }
  if (denominator == 0.0) return 1.0;

  double numerator = 0.0;
  for (const auto& [key, count] : joint) {
    double ci = static_cast<double>(a.community_size(static_cast<NodeId>(key / kb)));
    double cj = static_cast<double>(b.community_size(static_cast<NodeId>(key % kb)));
    numerator += count * std::log(count * n / (ci * cj));
  }
  return -2.0 * numerator / denominator;
}

double igd(std::span<const ObjectivePoint> front, std::span<const ObjectivePoint> reference) {
  if (front.empty() || reference.empty()) throw ValidationError("IGD needs non-empty front and reference sets");
  double total = 0.0;
  for (const auto& z : reference) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& a : front) {
      double d2 = 0.0;
      for (int j = 0; j < 3; ++j) d2 += (z[j] - a[j]) * (z[j] - a[j]);
      best = std::min(best, d2);
    }
    total += std::sqrt(best);
  }
  return total / static_cast<double>(reference.size());
}

namespace {

// Union area of boxes [0,x] x [0,y].
double staircase_area(std::vector<std::pair<double, double>>& boxes) {
  std::sort(boxes.begin(), boxes.end(), [](auto& l, auto& r) { return l.first > r.first; });
  double area = 0.0, reach = 0.0;
  for (auto [x, y] : boxes) {
    if (y > reach) {
      area += x * (y - reach);
      reach = y;
    }
  }
  return area;
}

}  // namespace

double hypervolume(std::span<const ObjectivePoint> front, const ObjectivePoint& reference_point) {
  std::vector<ObjectivePoint> pts;
  pts.reserve(front.size());
  for (const auto& p : front) {
    ObjectivePoint q{p[0] - reference_point[0], p[1] - reference_point[1], p[2] - reference_point[2]};
    if (q[0] < 0.0 || q[1] < 0.0 || q[2] < 0.0) continue;
    pts.push_back(q);
  }
  // Drop points covered by another (keeping one copy of repeats). A covered point
  // would only split slabs, so removing it keeps the sum bit-identical.
  std::vector<ObjectivePoint> kept;
  kept.reserve(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    bool covered = false;
    for (std::size_t j = 0; j < pts.size() && !covered; ++j) {
      if (i == j) continue;
      const auto& a = pts[i];
      const auto& b = pts[j];
      bool weak = b[0] >= a[0] && b[1] >= a[1] && b[2] >= a[2];
      covered = weak && (b != a || j < i);
    }
    if (!covered) kept.push_back(pts[i]);
  }
  pts = std::move(kept);
  std::stable_sort(pts.begin(), pts.end(), [](auto& l, auto& r) { return l[2] > r[2]; });

  // Sweep down the third axis; each slab is the union of boxes reaching it.
  double volume = 0.0;
  std::vector<std::pair<double, double>> boxes;
  for (std::size_t i = 0; i < pts.size();) {
    double level = pts[i][2];
    while (i < pts.size() && pts[i][2] == level) {
      boxes.emplace_back(pts[i][0], pts[i][1]);
      ++i;
    }
    double below = i < pts.size() ? pts[i][2] : 0.0;
    auto slab = boxes;
    volume += staircase_area(slab) * (level - below);
  }
  return volume;
}

double hypervolume_from_nadir(std::span<const ObjectivePoint> front, const ObjectivePoint& nadir) {
  std::vector<ObjectivePoint> flipped;
  flipped.reserve(front.size());
  for (const auto& f : front) flipped.push_back({nadir[0] - f[0], nadir[1] - f[1], nadir[2] - f[2]});
  return hypervolume(flipped, {0.0, 0.0, 0.0});
}

ObjectivePoint hv_reference_point(std::span<const ObjectivePoint> front, std::span<const ObjectivePoint> reference) {
  ObjectivePoint worst, best;
  worst.fill(-std::numeric_limits<double>::infinity());
  best.fill(std::numeric_limits<double>::infinity());
  for (auto set : {front, reference}) {
    for (const auto& p : set) {
      for (int j = 0; j < 3; ++j) {
        worst[j] = std::max(worst[j], p[j]);
        best[j] = std::min(best[j], p[j]);
      }
    }
  }
  if (!std::isfinite(worst[0])) throw ValidationError("HV reference point needs at least one point");
  ObjectivePoint nadir;
  for (int j = 0; j < 3; ++j) {
    double spread = worst[j] - best[j];
    nadir[j] = worst[j] + (spread > 0.0 ? 0.1 * spread : 0.1 * std::max(1.0, std::abs(worst[j])));
  }
  return nadir;
}

double hv_igd_ratio(std::span<const ObjectivePoint> front, std::span<const ObjectivePoint> reference,
                    const ObjectivePoint& nadir) {
  double distance = igd(front, reference);
  if (distance == 0.0) return kInfiniteRatio;
  return hypervolume_from_nadir(front, nadir) / distance;
}

std::vector<ObjectivePoint> objective_points(std::span<const Individual> individuals) {
  std::vector<ObjectivePoint> out;
  out.reserve(individuals.size());
  for (const auto& ind : individuals) out.push_back(ind.objectives.values);
  return out;
}

ReferenceFront build_reference_front(const Graph& graph, const std::string& dataset, Variant variant,
                                     std::uint64_t seed, const ReferenceFrontOptions& options) {
  RunConfig config;
  config.variant = variant;
  config.algorithm = Algorithm::NSGA3;
  config.population_size = options.population;
  config.generations = options.generations;
  config.crossover_prob = options.crossover_prob;
  config.mutation_prob = 1.0 / static_cast<double>(graph.node_count());
  config.seed = seed;
  config.params = options.params;
  RunResult result = nsga3_run(graph, config);

  ReferenceFront ref;
  ref.dataset = dataset;
  ref.variant = variant;
  ref.seed = seed;
  ref.population = options.population;
  ref.generations = options.generations;
  ref.crossover_prob = options.crossover_prob;
  ref.mutation_prob = config.mutation_prob;
  ref.points = objective_points(result.final_front);
  return ref;
}

namespace {

std::string format_double(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& s, std::size_t line) {
  double x = 0.0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), x);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) throw ParseError("bad number '" + s + "'", line);
  return x;
}

}  // namespace

void write_reference_front(std::ostream& out, const ReferenceFront& front) {
  out << "# moocd reference front\n"
      << "# dataset " << front.dataset << '\n'
      << "# variant " << to_string(front.variant) << '\n'
      << "# seed " << front.seed << '\n'
      << "# population " << front.population << '\n'
      << "# generations " << front.generations << '\n'
      << "# crossover " << format_double(front.crossover_prob) << '\n'
      << "# mutation " << format_double(front.mutation_prob) << '\n';
  for (const auto& p : front.points) {
    out << format_double(p[0]) << ' ' << format_double(p[1]) << ' ' << format_double(p[2]) << '\n';
  }
}

ReferenceFront read_reference_front(std::istream& in) {
  ReferenceFront front;
  std::string line;
  std::size_t lineno = 0;
  bool saw_magic = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream fields(line);
    if (line[0] == '#') {
      std::string hash, key, value;
      fields >> hash >> key;
      std::getline(fields >> std::ws, value);
      if (key == "moocd") saw_magic = true;
      else if (key == "dataset") front.dataset = value;
      else if (key == "variant") front.variant = parse_variant(value);
      else if (key == "seed") front.seed = std::stoull(value);
      else if (key == "population") front.population = std::stoi(value);
      else if (key == "generations") front.generations = std::stoi(value);
      else if (key == "crossover") front.crossover_prob = parse_double(value, lineno);
      else if (key == "mutation") front.mutation_prob = parse_double(value, lineno);
      continue;
    }
    std::string a, b, c;
    if (!(fields >> a >> b >> c)) throw ParseError("expected three objective values", lineno);
    front.points.push_back({parse_double(a, lineno), parse_double(b, lineno), parse_double(c, lineno)});
  }
  if (!saw_magic) throw ParseError("not a reference front file", 0);
  return front;
}

std::string reference_front_filename(const std::string& dataset, Variant variant, std::uint64_t seed) {
  return dataset + "_" + std::string(to_string(variant)) + "_s" + std::to_string(seed) + ".ref";
}

ReferenceFront cached_reference_front(const std::string& directory, const Graph& graph, const std::string& dataset,
                                      Variant variant, std::uint64_t seed, const ReferenceFrontOptions& options) {
  namespace fs = std::filesystem;
  fs::path path = fs::path(directory) / reference_front_filename(dataset, variant, seed);
  if (fs::exists(path)) {
    std::ifstream in(path);
    return read_reference_front(in);
  }
  ReferenceFront front = build_reference_front(graph, dataset, variant, seed, options);
  fs::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write reference front " + path.string());
  write_reference_front(out, front);
  return front;
}

}  // namespace moocd
