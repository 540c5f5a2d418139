// moocd: command-line front end for runs, sweeps, metric recomputation and
// reference front construction.
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "moocd/harness.hpp"

namespace fs = std::filesystem;
using namespace moocd;

namespace {

constexpr int kExitValidation = 1;
constexpr int kExitRuntime = 2;

struct Options {
  std::string dataset;
  std::string ground_truth;
  std::string variant = "krm";
  std::string algorithm = "nsga3";
  std::vector<int> populations{100};
  std::vector<int> generations{100};
  std::vector<std::string> crossovers{"0.8"};
  std::vector<std::string> mutations{"1/n"};
  int runs = 10;
  std::uint64_t seed = 1;
  int workers = 1;
  std::string out_dir = "results";
  double alpha = 1.0;
  double r = 1.0;
  double pbi_theta = 5.0;
  int moead_neighbors = 20;
  std::string reference;
  std::string reference_dir;
  std::vector<std::string> fronts;
};

double parse_mutation(const std::string& text) {
  if (text == "1/n") return -1.0;
  return parse_rate(text);
}

ExperimentSpec make_spec(const Options& o) {
  ExperimentSpec spec;
  spec.variant = parse_variant(o.variant);
  spec.algorithm = parse_algorithm(o.algorithm);
  spec.populations = o.populations;
  spec.generations = o.generations;
  spec.crossovers.clear();
  for (const auto& c : o.crossovers) spec.crossovers.push_back(parse_rate(c));
  spec.mutations.clear();
  for (const auto& m : o.mutations) spec.mutations.push_back(parse_mutation(m));
  spec.runs = o.runs;
  spec.base_seed = o.seed;
  spec.params = {o.alpha, o.r};
  spec.moead_neighbors = o.moead_neighbors;
  spec.pbi_theta = o.pbi_theta;
  spec.workers = o.workers;
  spec.out_dir = o.out_dir;
  return spec;
}

ReferenceFront read_reference_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open reference front " + path);
  return read_reference_front(in);
}

std::optional<ReferenceFront> reference_for(const Options& o, const Dataset& ds, Variant variant) {
  if (!o.reference.empty()) return read_reference_file(o.reference);
  if (!o.reference_dir.empty()) return cached_reference_front(o.reference_dir, ds.graph, ds.id, variant, 1);
  return std::nullopt;
}

void print_summary(const SweepReport& report) {
  for (const auto& row : report.rows) {
    std::cout << "combo " << row.index << " pop=" << row.config.population_size
              << " gens=" << row.config.generations << " pc=" << format_number(row.config.crossover_prob)
              << " pm=" << format_number(row.config.mutation_prob);
    if (row.error) {
      std::cout << " error: " << *row.error << '\n';
      continue;
    }
    std::cout << " Qmax=" << format_number(row.q_max) << " Qavg=" << format_number(row.q_avg);
    if (row.nmi_max) std::cout << " NMImax=" << format_number(*row.nmi_max) << " NMIavg=" << format_number(*row.nmi_avg);
    if (row.ratio_avg) std::cout << " HV/IGD=" << format_number(*row.ratio_avg);
    std::cout << '\n';
  }
  if (report.best) std::cout << "best combo " << *report.best << '\n';
}

int do_sweep(const Options& o) {
  Dataset ds = load_dataset(o.dataset, o.ground_truth);
  ExperimentSpec spec = make_spec(o);
  auto ref = reference_for(o, ds, spec.variant);
  SweepReport report = sweep(spec, ds, ref ? &*ref : nullptr);
  print_summary(report);
  render_report(report, ds, o.out_dir);
  bool any_error = std::any_of(report.rows.begin(), report.rows.end(), [](auto& r) { return r.error.has_value(); });
  return any_error ? kExitRuntime : 0;
}

// Recomputes per-run indicators from persisted front files.
int do_metrics(const Options& o) {
  Dataset ds = load_dataset(o.dataset, o.ground_truth);
  std::optional<ReferenceFront> ref;
  if (!o.reference.empty()) ref = read_reference_file(o.reference);
  std::cout << "front,front_size,max_q,max_nmi,hypervolume,igd,hv_igd\n";
  for (const auto& path : o.fronts) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open front " + path);
    nlohmann::json doc = nlohmann::json::parse(in);
    std::vector<ObjectivePoint> points;
    double max_q = -std::numeric_limits<double>::infinity();
    std::optional<double> max_nmi;
    for (const auto& m : doc.at("members")) {
      points.push_back(m.at("objectives").get<ObjectivePoint>());
      max_q = std::max(max_q, m.at("raw").at("q").get<double>());
      if (ds.ground_truth) {
        Partition p(m.at("assignment").get<std::vector<NodeId>>());
        if (p.size() != ds.graph.node_count()) throw ValidationError(path + ": front does not match the dataset");
        max_nmi = std::max(max_nmi.value_or(-1.0), nmi(*ds.ground_truth, p));
      }
    }
    if (points.empty()) throw ValidationError(path + ": empty front");
    std::cout << path << ',' << points.size() << ',' << format_number(max_q) << ','
              << (max_nmi ? format_number(*max_nmi) : "");
    if (ref) {
      ObjectivePoint nadir = hv_reference_point(points, ref->points);
      std::cout << ',' << format_number(hypervolume_from_nadir(points, nadir)) << ','
                << format_number(igd(points, ref->points)) << ','
                << format_number(hv_igd_ratio(points, ref->points, nadir));
    } else {
      std::cout << ",,,";
    }
    std::cout << '\n';
  }
  return 0;
}

int do_build_ref(const Options& o) {
  Dataset ds = load_dataset(o.dataset);
  ReferenceFrontOptions opts;
  opts.population = o.populations.front();
  opts.generations = o.generations.front();
  opts.crossover_prob = parse_rate(o.crossovers.front());
  opts.params = {o.alpha, o.r};
  Variant variant = parse_variant(o.variant);
  ReferenceFront front = build_reference_front(ds.graph, ds.id, variant, o.seed, opts);
  fs::path path = fs::path(o.out_dir) / reference_front_filename(ds.id, variant, o.seed);
  fs::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_reference_front(out, front);
  std::cout << path.string() << ": " << front.points.size() << " points\n";
  return 0;
}

void add_common(CLI::App* app, Options& o) {
  app->add_option("--dataset", o.dataset, "Graph file (.gml or edge list)")->required();
  app->add_option("--variant", o.variant, "Objective set: krm or ccm")->check(CLI::IsMember({"krm", "ccm"}));
  app->add_option("--alpha", o.alpha, "Community fitness exponent");
  app->add_option("--r", o.r, "Community score exponent");
}

void add_search(CLI::App* app, Options& o, bool grid) {
  app->add_option("--ground-truth", o.ground_truth, "Labels file with the true communities");
  app->add_option("--algorithm", o.algorithm, "nsga3 or moead")->check(CLI::IsMember({"nsga3", "moead"}));
  if (grid) {
    app->add_option("--population", o.populations, "Population sizes")->delimiter(',');
    app->add_option("--generations", o.generations, "Generation counts")->delimiter(',');
    app->add_option("--crossover", o.crossovers, "Crossover probabilities")->delimiter(',');
    app->add_option("--mutation", o.mutations, "Per-gene mutation rates, e.g. 1/34; 1/n is the default")
        ->delimiter(',');
  } else {
    app->add_option("--population", o.populations, "Population size")->expected(1);
    app->add_option("--generations", o.generations, "Generations")->expected(1);
    app->add_option("--crossover", o.crossovers, "Crossover probability")->expected(1);
    app->add_option("--mutation", o.mutations, "Per-gene mutation rate, e.g. 1/34")->expected(1);
  }
  app->add_option("--runs", o.runs, "Runs per combination");
  app->add_option("--seed", o.seed, "Base seed; run k uses seed + k");
  app->add_option("--workers", o.workers, "Parallel runs")->check(CLI::PositiveNumber);
  app->add_option("--out-dir", o.out_dir, "Output directory");
  app->add_option("--pbi-theta", o.pbi_theta, "MOEA/D penalty parameter");
  app->add_option("--moead-neighbors", o.moead_neighbors, "MOEA/D neighbourhood size");
  auto* ref = app->add_option("--reference", o.reference, "Reference front file for HV and IGD");
  app->add_option("--reference-dir", o.reference_dir, "Reference front cache, built on demand")->excludes(ref);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-objective community detection"};
  app.require_subcommand(1);
  Options o;

  auto* run_cmd = app.add_subcommand("run", "Run one configuration");
  add_common(run_cmd, o);
  add_search(run_cmd, o, false);
  auto* sweep_cmd = app.add_subcommand("sweep", "Run a parameter grid");
  add_common(sweep_cmd, o);
  add_search(sweep_cmd, o, true);

  auto* metrics_cmd = app.add_subcommand("metrics", "Recompute NMI, HV and IGD for saved fronts");
  add_common(metrics_cmd, o);
  metrics_cmd->add_option("--ground-truth", o.ground_truth, "Labels file with the true communities");
  metrics_cmd->add_option("--reference", o.reference, "Reference front file");
  metrics_cmd->add_option("fronts", o.fronts, "Front JSON files")->required()->check(CLI::ExistingFile);

  auto* ref_cmd = app.add_subcommand("build-ref", "Build a reference front");
  add_common(ref_cmd, o);
  o.populations = {500};
  o.generations = {500};
  o.crossovers = {"0.9"};
  ref_cmd->add_option("--population", o.populations, "Population size")->expected(1);
  ref_cmd->add_option("--generations", o.generations, "Generations")->expected(1);
  ref_cmd->add_option("--crossover", o.crossovers, "Crossover probability")->expected(1);
  ref_cmd->add_option("--seed", o.seed, "Seed");
  ref_cmd->add_option("--out-dir", o.out_dir, "Directory for the .ref file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }
  // build-ref keeps the large defaults; run and sweep fall back to the usual ones.
  if (!ref_cmd->parsed()) {
    auto* active = run_cmd->parsed() ? run_cmd : sweep_cmd;
    if (active->count("--population") == 0) o.populations = {100};
    if (active->count("--generations") == 0) o.generations = {100};
    if (active->count("--crossover") == 0) o.crossovers = {"0.8"};
  }
  if (run_cmd->parsed() && run_cmd->count("--runs") == 0) o.runs = 1;

  try {
    if (run_cmd->parsed() || sweep_cmd->parsed()) return do_sweep(o);
    if (metrics_cmd->parsed()) return do_metrics(o);
    return do_build_ref(o);
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
}
