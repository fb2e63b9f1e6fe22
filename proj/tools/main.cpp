// Command-line driver for constrained 1-spectral clustering: graph
// construction, constraint generation, clustering, evaluation and sweep
// experiments with plot-ready CSV output.

#include <chrono>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cosc/errors.hpp"
#include "cosc/io.hpp"
#include "cosc/metrics.hpp"
#include "cosc/pipeline.hpp"
#include "cosc/rng.hpp"
#include "json.hpp"

namespace {

using nlohmann::json;

struct ClusterOutcome {
  std::vector<int> labels;
  json metrics;
  double objective = 0.0;  // ncut or multicut
  double fraction_violated = 0.0;
  double gamma_final = 0.0;
};

int distinct_labels(const std::vector<int>& labels) {
  return static_cast<int>(std::set<int>(labels.begin(), labels.end()).size());
}

// bipartition labels with class 0 holding vertex 0
std::vector<int> bipartition_labels(const cosc::Partition& part) {
  std::vector<int> labels(static_cast<std::size_t>(part.n()));
  const bool anchor = part.contains(0);
  for (int v = 0; v < part.n(); ++v)
    labels[static_cast<std::size_t>(v)] = part.contains(v) == anchor ? 0 : 1;
  return labels;
}

ClusterOutcome run_clustering(const cosc::Graph& g, const cosc::ConstraintSet& q,
                              int k, const cosc::CoscConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  ClusterOutcome out;
  if (k <= 2) {
    const auto [part, report] = cosc_bipartition(g, q, cfg);
    out.labels = bipartition_labels(part);
    out.objective = report.ncut;
    out.fraction_violated = report.fraction_violated;
    out.gamma_final = report.gamma_final;
    out.metrics["ncut"] = report.ncut;
    out.metrics["violations_must"] = report.violations_must;
    out.metrics["violations_cannot"] = report.violations_cannot;
    out.metrics["violated_count"] = report.violated_count;
  } else {
    const auto [multi, report] = cosc::multi_partition(g, q, k, cfg);
    out.labels = multi.labels;
    out.objective = report.multicut;
    out.fraction_violated = report.fraction_violated;
    out.gamma_final = report.gamma_final;
    out.metrics["multicut"] = report.multicut;
    out.metrics["violations_must"] = report.violations_must;
    out.metrics["violations_cannot"] = report.violations_cannot;
    out.metrics["violated_count"] = report.violated_count;
  }
  const auto elapsed = std::chrono::steady_clock::now() - start;
  out.metrics["fraction_violated"] = out.fraction_violated;
  out.metrics["gamma_final"] = out.gamma_final;
  out.metrics["wall_time_ms"] =
      std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count();
  return out;
}

std::vector<int> parse_counts(const std::string& csv) {
  std::vector<int> counts;
  std::stringstream ss(csv);
  std::string token;
  while (std::getline(ss, token, ',')) {
    if (token.empty()) continue;
    counts.push_back(std::stoi(token));
  }
  if (counts.empty()) throw CLI::ValidationError("--counts", "no counts given");
  return counts;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Constrained 1-spectral clustering"};
  app.require_subcommand(1);

  std::string graph_file, constraints_file, points_file, labels_file;
  std::string pred_file, truth_file, out_file, out_labels, out_metrics, out_csv;
  std::string mode = "hard", weights = "ratio", counts_csv;
  int k = 2, knn_k = 10, count = 0, trials = 10, restarts = 10, max_violations = 0;
  std::uint64_t seed = 42;

  auto weight_mode = [&]() {
    if (weights == "ratio") return cosc::VertexWeightMode::Ratio;
    if (weights == "normalized") return cosc::VertexWeightMode::Normalized;
    throw CLI::ValidationError("--weights", "expected 'ratio' or 'normalized'");
  };
  auto make_config = [&]() {
    cosc::CoscConfig cfg;
    if (mode == "hard") {
      cfg.mode = cosc::Mode::Hard;
    } else if (mode == "soft") {
      cfg.mode = cosc::Mode::Soft;
      cfg.max_violations = max_violations;
    } else {
      throw CLI::ValidationError("--mode", "expected 'hard' or 'soft'");
    }
    cfg.restarts = restarts;
    cfg.seed = seed;
    return cfg;
  };

  CLI::App* cluster = app.add_subcommand("cluster", "cluster a graph under constraints");
  cluster->add_option("--graph", graph_file)->required();
  cluster->add_option("--constraints", constraints_file)->required();
  cluster->add_option("--k", k)->check(CLI::Range(2, 1 << 20));
  cluster->add_option("--mode", mode);
  cluster->add_option("--max-violations", max_violations)->check(CLI::NonNegativeNumber);
  cluster->add_option("--restarts", restarts)->check(CLI::PositiveNumber);
  cluster->add_option("--seed", seed);
  cluster->add_option("--weights", weights);
  cluster->add_option("--out-labels", out_labels)->required();
  cluster->add_option("--out-metrics", out_metrics)->required();

  CLI::App* knn = app.add_subcommand("knn-graph", "build a k-NN similarity graph");
  knn->add_option("--points", points_file)->required();
  knn->add_option("--k", knn_k)->required()->check(CLI::PositiveNumber);
  knn->add_option("--weights", weights);
  knn->add_option("--out", out_file)->required();

  CLI::App* gen = app.add_subcommand("gen-constraints",
                                     "sample label-derived pairwise constraints");
  gen->add_option("--labels", labels_file)->required();
  gen->add_option("--count", count)->required()->check(CLI::NonNegativeNumber);
  gen->add_option("--seed", seed);
  gen->add_option("--out", out_file)->required();

  CLI::App* eval = app.add_subcommand("eval", "majority-vote clustering error");
  eval->add_option("--pred", pred_file)->required();
  eval->add_option("--truth", truth_file)->required();

  CLI::App* sweep = app.add_subcommand("sweep",
                                       "error/cut/violations versus constraint count");
  sweep->add_option("--graph", graph_file)->required();
  sweep->add_option("--labels", labels_file)->required();
  sweep->add_option("--counts", counts_csv)->required();
  sweep->add_option("--trials", trials)->check(CLI::PositiveNumber);
  sweep->add_option("--seed", seed);
  sweep->add_option("--mode", mode);
  sweep->add_option("--restarts", restarts)->check(CLI::PositiveNumber);
  sweep->add_option("--weights", weights);
  sweep->add_option("--out-csv", out_csv)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (cluster->parsed()) {
      const cosc::Graph g = cosc::load_graph(graph_file, weight_mode());
      const cosc::ConstraintSet q = cosc::load_constraints(constraints_file, g.n());
      const ClusterOutcome outcome = run_clustering(g, q, k, make_config());
      cosc::save_labels(out_labels, outcome.labels);
      std::ofstream metrics(out_metrics);
      if (!metrics) throw std::runtime_error("cannot write " + out_metrics);
      metrics << outcome.metrics.dump(2) << '\n';
    } else if (knn->parsed()) {
      const auto points = cosc::load_points_csv(points_file);
      const cosc::Graph g = cosc::knn_graph(points, knn_k, weight_mode());
      cosc::save_graph(out_file, g);
    } else if (gen->parsed()) {
      const auto labels = cosc::load_labels(labels_file);
      const cosc::ConstraintSet q = cosc::generate_constraints(labels, count, seed);
      cosc::save_constraints(out_file, q);
    } else if (eval->parsed()) {
      const auto pred = cosc::load_labels(pred_file);
      const auto truth = cosc::load_labels(truth_file);
      json doc;
      doc["clustering_error"] = cosc::clustering_error(pred, truth);
      std::cout << doc.dump(2) << '\n';
    } else if (sweep->parsed()) {
      const cosc::Graph g = cosc::load_graph(graph_file, weight_mode());
      const auto truth = cosc::load_labels(labels_file);
      if (static_cast<int>(truth.size()) != g.n())
        throw std::runtime_error("sweep: label count does not match the graph");
      const int classes = distinct_labels(truth);
      if (classes < 2) throw std::runtime_error("sweep: need at least two classes");
      const std::vector<int> counts = parse_counts(counts_csv);

      std::ofstream csv(out_csv);
      if (!csv) throw std::runtime_error("cannot write " + out_csv);
      csv << "n_constraints,trial,ncut,fraction_violated,error,gamma_final\n";
      csv.precision(12);
      for (std::size_t ci = 0; ci < counts.size(); ++ci) {
        double sum_cut = 0.0, sum_frac = 0.0, sum_err = 0.0;
        for (int trial = 0; trial < trials; ++trial) {
          const std::uint64_t trial_seed =
              cosc::derive_seed(seed, ci * 1000 + static_cast<std::uint64_t>(trial));
          const cosc::ConstraintSet q =
              cosc::generate_constraints(truth, counts[ci], trial_seed);
          cosc::CoscConfig cfg = make_config();
          cfg.seed = trial_seed;
          const ClusterOutcome outcome = run_clustering(g, q, classes, cfg);
          const double error = cosc::clustering_error(outcome.labels, truth);
          csv << counts[ci] << ',' << trial << ',' << outcome.objective << ','
              << outcome.fraction_violated << ',' << error << ','
              << outcome.gamma_final << '\n';
          sum_cut += outcome.objective;
          sum_frac += outcome.fraction_violated;
          sum_err += error;
        }
        std::cout << "constraints=" << counts[ci]
                  << " mean_cut=" << sum_cut / trials
                  << " mean_fraction_violated=" << sum_frac / trials
                  << " mean_error=" << sum_err / trials << '\n';
      }
    }
  } catch (const cosc::InfeasibleError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const cosc::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
