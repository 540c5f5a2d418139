#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "moocd/graph.hpp"
#include "moocd/metrics.hpp"
#include "moocd/moea.hpp"

namespace moocd {

struct Dataset {
  std::string id;  // file stem, e.g. "karate"
  Graph graph;
  std::optional<Partition> ground_truth;
};

/// Loads a graph file and, if given, a labels file. A labels file takes
/// precedence over ground truth embedded in GML node values.
Dataset load_dataset(const std::string& path, const std::string& ground_truth_path = {});

struct RunRecord {
  std::string dataset;
  std::size_t combo = 0;
  RunConfig config;  // config.seed is this run's seed
  std::size_t front_size = 0;
  double max_q = 0.0;
  Partition best_q_partition;
  std::optional<double> max_nmi;
  std::optional<Partition> best_nmi_partition;
  std::optional<double> hypervolume;
  std::optional<double> igd;
  std::optional<double> hv_igd;
  std::vector<Individual> front;
};

/// Runs one configuration and extracts the per-run summary from its final front.
/// HV and IGD are filled only when a reference front is supplied.
RunRecord run_experiment(const RunConfig& config, const Dataset& dataset, const ReferenceFront* reference = nullptr,
                         std::size_t combo = 0);

/// Writes fronts/<stem>.json and partitions/<stem>_bestq.labels (+ _bestnmi) under `out_dir`.
void persist_run(const RunRecord& record, const Dataset& dataset, const std::string& out_dir);

std::string run_stem(const RunRecord& record);

/// Structured front dump (members with objectives, genes and assignment).
std::string front_to_json(const RunRecord& record);

struct ExperimentSpec {
  Variant variant = Variant::KRM;
  Algorithm algorithm = Algorithm::NSGA3;
  std::vector<int> populations{100};
  std::vector<double> crossovers{0.8};
  /// Negative entries mean 1/n.
  std::vector<double> mutations{-1.0};
  std::vector<int> generations{100};
  int runs = 10;
  std::uint64_t base_seed = 1;
  ObjectiveParams params;
  int moead_neighbors = 20;
  double pbi_theta = 5.0;
  int workers = 1;
  std::string out_dir;  // empty: nothing persisted per run

  /// Cross product in (population, crossover, mutation, generations) order; seeds unset.
  std::vector<RunConfig> cells() const;
};

struct ComboRow {
  std::size_t index = 0;
  RunConfig config;
  std::vector<RunRecord> runs;  // ordered by seed
  std::optional<std::string> error;

  double q_max = 0.0;
  double q_avg = 0.0;
  std::optional<double> nmi_max;
  std::optional<double> nmi_avg;
  std::optional<double> product_avg;  // mean over runs of max_q * max_nmi
  std::optional<double> ratio_avg;
  std::optional<double> ratio_max;
};

struct SweepReport {
  std::string dataset;
  Variant variant = Variant::KRM;
  Algorithm algorithm = Algorithm::NSGA3;
  std::vector<ComboRow> rows;
  std::optional<std::size_t> best;  // index into rows
  bool selected_by_product = false;
};

/// Fills the aggregate fields of a row from its runs.
void aggregate(ComboRow& row);

/// Argmax of mean (Q x NMI) when every completed row has NMI, else of mean max Q.
/// Ties go to the lowest combo index.
void select_best(SweepReport& report);

/// Runs every cell `runs` times with seeds base..base+runs-1. Cell failures are
/// recorded on the row and the sweep continues.
SweepReport sweep(const ExperimentSpec& spec, const Dataset& dataset, const ReferenceFront* reference = nullptr);

/// Writes runs.csv, runs.jsonl, sweep.csv, modularity.{txt,csv}, nmi.{txt,csv},
/// hv_igd.{txt,csv} and best-combo partitions under `out_dir`.
void render_report(const SweepReport& report, const Dataset& dataset, const std::string& out_dir);

/// Literature modularity values for the four benchmark datasets, shipped as
/// static comparison data. Nothing here is computed.
struct PublishedModularity {
  std::string algorithm;
  double q_max;
  double q_avg;
};

/// Maps "karate"/"dolphins"/"football"/"polbooks" (or d1..d4) to published rows.
std::optional<std::string> benchmark_code(const std::string& dataset);
std::vector<PublishedModularity> published_modularity(const std::string& dataset);

struct PublishedNmi {
  std::string algorithm;
  double nmi_max;
  double nmi_avg;
};
std::vector<PublishedNmi> published_nmi(const std::string& dataset);

/// Parses "0.25", "1/34" or "2/62".
double parse_rate(const std::string& text);

std::string format_number(double x);

}  // namespace moocd
