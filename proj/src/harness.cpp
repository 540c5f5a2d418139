#include "moocd/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <sstream>
#include <thread>

#include "json.hpp"

namespace moocd {

namespace fs = std::filesystem;
using nlohmann::json;

std::string format_number(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return "nan";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

double parse_rate(const std::string& text) {
  auto slash = text.find('/');
  try {
    std::size_t used = 0;
    if (slash == std::string::npos) {
      double v = std::stod(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      return v;
    }
    std::string num = text.substr(0, slash), den = text.substr(slash + 1);
    double a = std::stod(num, &used);
    if (used != num.size()) throw std::invalid_argument(text);
    double b = std::stod(den, &used);
    if (used != den.size() || b == 0.0) throw std::invalid_argument(text);
    return a / b;
  } catch (const std::logic_error&) {
    throw ValidationError("cannot parse rate '" + text + "'");
  }
}

Dataset load_dataset(const std::string& path, const std::string& ground_truth_path) {
  LoadedGraph loaded = load_graph_file(path);
  Dataset ds;
  ds.id = fs::path(path).stem().string();
  ds.graph = std::move(loaded.graph);
  ds.ground_truth = std::move(loaded.ground_truth);
  if (!ground_truth_path.empty()) ds.ground_truth = load_labels_file(ground_truth_path, ds.graph);
  return ds;
}

RunRecord run_experiment(const RunConfig& config, const Dataset& dataset, const ReferenceFront* reference,
                         std::size_t combo) {
  RunResult result = run(dataset.graph, config);
  RunRecord rec;
  rec.dataset = dataset.id;
  rec.combo = combo;
  rec.config = config;
  rec.config.mutation_prob = config.mutation_rate_for(dataset.graph);
  rec.front_size = result.final_front.size();
  if (result.final_front.empty()) throw std::runtime_error("run produced an empty front");

  std::size_t best_q = 0;
  for (std::size_t i = 1; i < result.final_front.size(); ++i) {
    if (result.final_front[i].objectives.raw.q > result.final_front[best_q].objectives.raw.q) best_q = i;
  }
  rec.max_q = result.final_front[best_q].objectives.raw.q;
  rec.best_q_partition = result.final_front[best_q].partition;

  if (dataset.ground_truth) {
    std::size_t best = 0;
    double best_nmi = -1.0;
    for (std::size_t i = 0; i < result.final_front.size(); ++i) {
      double v = nmi(*dataset.ground_truth, result.final_front[i].partition);
      if (v > best_nmi) {
        best_nmi = v;
        best = i;
      }
    }
    rec.max_nmi = best_nmi;
    rec.best_nmi_partition = result.final_front[best].partition;
  }

  if (reference && !reference->points.empty()) {
    auto points = objective_points(result.final_front);
    ObjectivePoint nadir = hv_reference_point(points, reference->points);
    rec.hypervolume = hypervolume_from_nadir(points, nadir);
    rec.igd = igd(points, reference->points);
    rec.hv_igd = *rec.igd == 0.0 ? kInfiniteRatio : *rec.hypervolume / *rec.igd;
  }
  rec.front = std::move(result.final_front);
  return rec;
}

std::string run_stem(const RunRecord& record) {
  std::ostringstream s;
  s << record.dataset << '_' << to_string(record.config.variant) << '_' << to_string(record.config.algorithm) << "_c"
    << record.combo << "_s" << record.config.seed;
  return s.str();
}

namespace {

json config_json(const RunConfig& c) {
  return json{{"variant", to_string(c.variant)},
              {"algorithm", to_string(c.algorithm)},
              {"population", c.population_size},
              {"generations", c.generations},
              {"crossover", c.crossover_prob},
              {"mutation", c.mutation_prob},
              {"seed", c.seed},
              {"alpha", c.params.alpha},
              {"r", c.params.r},
              {"moead_neighbors", c.moead_neighbors},
              {"pbi_theta", c.pbi_theta}};
}

json optional_json(const std::optional<double>& v) {
  if (!v) return nullptr;
  if (!std::isfinite(*v)) return format_number(*v);
  return *v;
}

void write_file(const fs::path& path, const std::string& content) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

std::string labels_text(const Graph& graph, const Partition& p) {
  std::ostringstream s;
  write_labels(s, graph, p);
  return s.str();
}

std::string csv_optional(const std::optional<double>& v) { return v ? format_number(*v) : std::string(); }

std::string fixed(double x, int digits = 4) {
  if (!std::isfinite(x)) return format_number(x);
  std::ostringstream s;
  s << std::fixed << std::setprecision(digits) << x;
  return s.str();
}

std::string fixed(const std::optional<double>& v, int digits = 4) { return v ? fixed(*v, digits) : "-"; }

// Plain-text table with left-aligned first column and right-aligned others.
std::string aligned(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width;
  for (const auto& r : rows) {
    if (width.size() < r.size()) width.resize(r.size(), 0);
    for (std::size_t i = 0; i < r.size(); ++i) width[i] = std::max(width[i], r[i].size());
  }
  std::ostringstream s;
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (i == 0) s << std::left << std::setw(static_cast<int>(width[i])) << r[i];
      else s << "  " << std::right << std::setw(static_cast<int>(width[i])) << r[i];
    }
    s << '\n';
  }
  return s.str();
}

std::string csv(const std::vector<std::vector<std::string>>& rows) {
  std::ostringstream s;
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) s << (i ? "," : "") << r[i];
    s << '\n';
  }
  return s.str();
}

std::string method_name(const SweepReport& report) {
  std::string alg = report.algorithm == Algorithm::NSGA3 ? "NSGA-III" : "MOEA/D";
  std::string var = report.variant == Variant::KRM ? "KRM" : "CCM";
  return alg + "-" + var;
}

}  // namespace

std::string front_to_json(const RunRecord& record) {
  json members = json::array();
  for (const auto& ind : record.front) {
    const auto& raw = ind.objectives.raw;
    members.push_back(json{{"objectives", ind.objectives.values},
                           {"raw", {{"kkm", raw.kkm}, {"rc", raw.rc}, {"cf", raw.cf}, {"cs", raw.cs}, {"q", raw.q}}},
                           {"communities", ind.partition.community_count()},
                           {"genes", ind.genotype.genes},
                           {"assignment", ind.partition.assignment()}});
  }
  json doc{{"format", "moocd-front"},
           {"dataset", record.dataset},
           {"combo", record.combo},
           {"config", config_json(record.config)},
           {"members", std::move(members)}};
  return doc.dump(1) + "\n";
}

void persist_run(const RunRecord& record, const Dataset& dataset, const std::string& out_dir) {
  fs::path root(out_dir);
  std::string stem = run_stem(record);
  write_file(root / "fronts" / (stem + ".json"), front_to_json(record));
  write_file(root / "partitions" / (stem + "_bestq.labels"), labels_text(dataset.graph, record.best_q_partition));
  if (record.best_nmi_partition) {
    write_file(root / "partitions" / (stem + "_bestnmi.labels"), labels_text(dataset.graph, *record.best_nmi_partition));
  }
}

std::vector<RunConfig> ExperimentSpec::cells() const {
  std::vector<RunConfig> out;
  for (int pop : populations) {
    for (double pc : crossovers) {
      for (double pm : mutations) {
        for (int gens : generations) {
          RunConfig c;
          c.variant = variant;
          c.algorithm = algorithm;
          c.population_size = pop;
          c.generations = gens;
          c.crossover_prob = pc;
          c.mutation_prob = pm;
          c.params = params;
          c.moead_neighbors = moead_neighbors;
          c.pbi_theta = pbi_theta;
          c.seed = base_seed;
          out.push_back(c);
        }
      }
    }
  }
  return out;
}

void aggregate(ComboRow& row) {
  row.q_max = row.q_avg = 0.0;
  row.nmi_max = row.nmi_avg = row.product_avg = row.ratio_avg = row.ratio_max = std::nullopt;
  if (row.runs.empty()) return;
  const double count = static_cast<double>(row.runs.size());
  double q_sum = 0.0;
  row.q_max = -std::numeric_limits<double>::infinity();
  bool have_nmi = true, have_ratio = true;
  for (const auto& r : row.runs) {
    q_sum += r.max_q;
    row.q_max = std::max(row.q_max, r.max_q);
    have_nmi = have_nmi && r.max_nmi.has_value();
    have_ratio = have_ratio && r.hv_igd.has_value();
  }
  row.q_avg = q_sum / count;
  if (have_nmi) {
    double nmi_sum = 0.0, product_sum = 0.0, best = -1.0;
    for (const auto& r : row.runs) {
      nmi_sum += *r.max_nmi;
      product_sum += r.max_q * *r.max_nmi;
      best = std::max(best, *r.max_nmi);
    }
    row.nmi_max = best;
    row.nmi_avg = nmi_sum / count;
    row.product_avg = product_sum / count;
  }
  if (have_ratio) {
    double sum = 0.0, best = -std::numeric_limits<double>::infinity();
    for (const auto& r : row.runs) {
      sum += *r.hv_igd;
      best = std::max(best, *r.hv_igd);
    }
    row.ratio_avg = sum / count;
    row.ratio_max = best;
  }
}

void select_best(SweepReport& report) {
  report.best.reset();
  bool all_products = true, any = false;
  for (const auto& row : report.rows) {
    if (row.error || row.runs.empty()) continue;
    any = true;
    all_products = all_products && row.product_avg.has_value();
  }
  report.selected_by_product = any && all_products;
  double best_score = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < report.rows.size(); ++i) {
    const auto& row = report.rows[i];
    if (row.error || row.runs.empty()) continue;
    double score = report.selected_by_product ? *row.product_avg : row.q_avg;
    if (!report.best || score > best_score) {
      report.best = i;
      best_score = score;
    }
  }
}

SweepReport sweep(const ExperimentSpec& spec, const Dataset& dataset, const ReferenceFront* reference) {
  if (spec.runs < 1) throw ValidationError("runs per combination must be at least 1");
  auto cells = spec.cells();
  if (cells.empty()) throw ValidationError("parameter grid is empty");
  for (const auto& c : cells) c.validate();

  SweepReport report;
  report.dataset = dataset.id;
  report.variant = spec.variant;
  report.algorithm = spec.algorithm;
  report.rows.resize(cells.size());

  const std::size_t runs = static_cast<std::size_t>(spec.runs);
  const std::size_t tasks = cells.size() * runs;
  std::vector<std::optional<RunRecord>> records(tasks);
  std::vector<std::string> errors(tasks);
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t t = next++; t < tasks; t = next++) {
      std::size_t cell = t / runs, k = t % runs;
      RunConfig config = cells[cell];
      config.seed = spec.base_seed + k;
      try {
        RunRecord rec = run_experiment(config, dataset, reference, cell);
        if (!spec.out_dir.empty()) persist_run(rec, dataset, spec.out_dir);
        rec.front.clear();
        rec.front.shrink_to_fit();
        records[t] = std::move(rec);
      } catch (const std::exception& e) {
        errors[t] = "seed " + std::to_string(config.seed) + ": " + e.what();
      }
    }
  };
  const int workers = std::max(1, spec.workers);
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
  }

  for (std::size_t cell = 0; cell < cells.size(); ++cell) {
    ComboRow& row = report.rows[cell];
    row.index = cell;
    row.config = cells[cell];
    row.config.mutation_prob = cells[cell].mutation_rate_for(dataset.graph);
    for (std::size_t k = 0; k < runs && !row.error; ++k) {
      std::size_t t = cell * runs + k;
      if (!errors[t].empty()) row.error = errors[t];
      else row.runs.push_back(std::move(*records[t]));
    }
    if (row.error) row.runs.clear();
    aggregate(row);
  }
  select_best(report);
  return report;
}

void render_report(const SweepReport& report, const Dataset& dataset, const std::string& out_dir) {
  bool any_run = std::any_of(report.rows.begin(), report.rows.end(), [](auto& r) { return !r.runs.empty(); });
  if (!any_run) throw std::runtime_error("no completed runs to report");
  fs::path root(out_dir);

  // Per-run detail.
  std::vector<std::vector<std::string>> runs_csv{{"dataset", "variant", "algorithm", "combo", "population",
                                                  "generations", "crossover", "mutation", "seed", "front_size",
                                                  "max_q", "best_q_communities", "max_nmi", "hypervolume", "igd",
                                                  "hv_igd"}};
  std::ostringstream jsonl;
  for (const auto& row : report.rows) {
    for (const auto& r : row.runs) {
      const auto& c = r.config;
      runs_csv.push_back({r.dataset, std::string(to_string(c.variant)), std::string(to_string(c.algorithm)),
                          std::to_string(r.combo), std::to_string(c.population_size), std::to_string(c.generations),
                          format_number(c.crossover_prob), format_number(c.mutation_prob), std::to_string(c.seed),
                          std::to_string(r.front_size), format_number(r.max_q),
                          std::to_string(r.best_q_partition.community_count()), csv_optional(r.max_nmi),
                          csv_optional(r.hypervolume), csv_optional(r.igd), csv_optional(r.hv_igd)});
      json rec{{"dataset", r.dataset},
               {"combo", r.combo},
               {"config", config_json(c)},
               {"front_size", r.front_size},
               {"max_q", r.max_q},
               {"best_q_assignment", r.best_q_partition.assignment()},
               {"max_nmi", optional_json(r.max_nmi)},
               {"hypervolume", optional_json(r.hypervolume)},
               {"igd", optional_json(r.igd)},
               {"hv_igd", optional_json(r.hv_igd)}};
      jsonl << rec.dump() << '\n';
    }
  }
  write_file(root / "runs.csv", csv(runs_csv));
  write_file(root / "runs.jsonl", jsonl.str());

  // Per-combination aggregates.
  std::vector<std::vector<std::string>> sweep_csv{{"combo", "population", "generations", "crossover", "mutation",
                                                   "runs", "q_max", "q_avg", "nmi_max", "nmi_avg", "product_avg",
                                                   "hv_igd_avg", "hv_igd_max", "best", "error"}};
  for (const auto& row : report.rows) {
    const auto& c = row.config;
    bool best = report.best && *report.best == row.index;
    std::string error = row.error ? *row.error : "";
    std::replace(error.begin(), error.end(), ',', ';');
    sweep_csv.push_back({std::to_string(row.index), std::to_string(c.population_size), std::to_string(c.generations),
                         format_number(c.crossover_prob), format_number(c.mutation_prob),
                         std::to_string(row.runs.size()), row.runs.empty() ? "" : format_number(row.q_max),
                         row.runs.empty() ? "" : format_number(row.q_avg), csv_optional(row.nmi_max),
                         csv_optional(row.nmi_avg), csv_optional(row.product_avg), csv_optional(row.ratio_avg),
                         csv_optional(row.ratio_max), best ? "1" : "0", error});
  }
  write_file(root / "sweep.csv", csv(sweep_csv));

  // Sensitivity grid of HV/IGD ratios.
  std::vector<std::vector<std::string>> ratio_rows{{"combo", "population", "crossover", "mutation", "HV/IGD mean",
                                                    "HV/IGD max"}};
  for (const auto& row : report.rows) {
    const auto& c = row.config;
    ratio_rows.push_back({std::to_string(row.index), std::to_string(c.population_size), fixed(c.crossover_prob, 2),
                          fixed(c.mutation_prob, 6), fixed(row.ratio_avg), fixed(row.ratio_max)});
  }
  std::string title = report.dataset + " " + method_name(report);
  write_file(root / "hv_igd.txt", "HV/IGD ratio by parameter combination: " + title + "\n" + aligned(ratio_rows));
  for (auto& r : ratio_rows) {
    for (std::size_t i = 1; i < r.size(); ++i) {
      if (r[i] == "-") r[i].clear();
    }
  }
  write_file(root / "hv_igd.csv", csv(ratio_rows));

  if (!report.best) return;
  const ComboRow& best = report.rows[*report.best];

  // Qmax/Qavg: published comparison values, then this tool's best combination.
  std::vector<std::vector<std::string>> q_rows{{"Index"}, {"Qmax"}, {"Qavg"}};
  for (const auto& p : published_modularity(report.dataset)) {
    q_rows[0].push_back(p.algorithm + " (published)");
    q_rows[1].push_back(fixed(p.q_max));
    q_rows[2].push_back(fixed(p.q_avg));
  }
  q_rows[0].push_back(method_name(report));
  q_rows[1].push_back(fixed(best.q_max));
  q_rows[2].push_back(fixed(best.q_avg));
  std::string q_header = "Maximum and average modularity over " + std::to_string(best.runs.size()) +
                         " runs, best combination #" + std::to_string(best.index) + ": " + title + "\n";
  write_file(root / "modularity.txt", q_header + aligned(q_rows));
  std::vector<std::vector<std::string>> q_csv{{"algorithm", "source", "q_max", "q_avg"}};
  for (const auto& p : published_modularity(report.dataset)) {
    q_csv.push_back({p.algorithm, "published", format_number(p.q_max), format_number(p.q_avg)});
  }
  q_csv.push_back({method_name(report), "computed", format_number(best.q_max), format_number(best.q_avg)});
  write_file(root / "modularity.csv", csv(q_csv));

  if (best.nmi_max) {
    std::vector<std::vector<std::string>> n_rows{{"Algorithm", "NMI max", "NMI avg", "source"}};
    std::vector<std::vector<std::string>> n_csv{{"algorithm", "source", "nmi_max", "nmi_avg"}};
    for (const auto& p : published_nmi(report.dataset)) {
      n_rows.push_back({p.algorithm, fixed(p.nmi_max), fixed(p.nmi_avg), "published"});
      n_csv.push_back({p.algorithm, "published", format_number(p.nmi_max), format_number(p.nmi_avg)});
    }
    n_rows.push_back({method_name(report), fixed(*best.nmi_max), fixed(*best.nmi_avg), "computed"});
    n_csv.push_back({method_name(report), "computed", format_number(*best.nmi_max), format_number(*best.nmi_avg)});
    write_file(root / "nmi.txt", "NMI against ground truth: " + title + "\n" + aligned(n_rows));
    write_file(root / "nmi.csv", csv(n_csv));
  }

  // Best partitions of the selected combination.
  const RunRecord* top_q = &best.runs.front();
  const RunRecord* top_nmi = &best.runs.front();
  for (const auto& r : best.runs) {
    if (r.max_q > top_q->max_q) top_q = &r;
    if (r.max_nmi && *r.max_nmi > top_nmi->max_nmi.value_or(-1.0)) top_nmi = &r;
  }
  write_file(root / "best" / (run_stem(*top_q) + "_bestq.labels"), labels_text(dataset.graph, top_q->best_q_partition));
  if (top_nmi->best_nmi_partition) {
    write_file(root / "best" / (run_stem(*top_nmi) + "_bestnmi.labels"),
               labels_text(dataset.graph, *top_nmi->best_nmi_partition));
  }
}

}  // namespace moocd
