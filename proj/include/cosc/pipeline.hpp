#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "cosc/constraints.hpp"
#include "cosc/graph.hpp"
#include "cosc/inner_solver.hpp"

namespace cosc {

enum class Mode { Hard, Soft };

struct GammaSchedule {
  double initial_fraction = 0.05;  // first step as a fraction of the cap
  double growth = 2.0;             // geometric growth factor, > 1
};

struct CoscConfig {
  Mode mode = Mode::Hard;
  int max_violations = 0;  // soft budget l; ignored in hard mode
  int restarts = 10;
  // Default resolves to: on in hard mode, on in soft mode unless any
  // must-link weight is fractional.
  std::optional<bool> merge_must_links;
  GammaSchedule schedule;
  std::uint64_t seed = 42;
  RatioDcaOptions solver;
};

struct BipartitionReport {
  double gamma_final = 0.0;
  double ncut = 0.0;
  double violations_must = 0.0;    // set-function value, twice the weighted count
  double violations_cannot = 0.0;
  int violated_count = 0;          // number of violated stored constraints
  double fraction_violated = 0.0;  // violated_count / total constraints
  std::vector<std::vector<double>> restart_histories;   // gamma = 0 stage
  std::vector<std::vector<double>> schedule_histories;  // one per gamma step
};

// Smallest penalty weight that limits any global minimizer of the penalized
// objective to at most max_violations violated constraints, given the
// normalized cut lambda of some consistent partition.
double gamma_for_violations(double lambda, double gvol_total, int max_violations);

// Constrained bipartitioning: optional must-link pre-merge, an unconstrained
// stage with random restarts, then a geometric penalty schedule warm-started
// from the previous partition until the budget is met. The schedule is capped
// by gamma_for_violations of a consistent 2-coloring; at the cap the run is
// additionally seeded with that 2-coloring, which guarantees termination
// within budget whenever the constraints are feasible.
std::pair<Partition, BipartitionReport> cosc_bipartition(const Graph& g,
                                                         const ConstraintSet& q,
                                                         const CoscConfig& cfg);

struct MultiPartition {
  std::vector<int> labels;  // one label in [0, k) per vertex
  int k = 0;
};

// Sum of per-class normalized cuts. Every label in [0, k) must be used.
double multicut_value(const Graph& g, const MultiPartition& p);

// Expected violations a binary split may incur under the uniform class model:
// floor((k_est - 2)/k_est * cannot_count), clamped at zero.
int violation_budget(double cannot_count, double k_est);

struct MultiLevelReport {
  double multicut = 0.0;
  int violated_count = 0;
};

struct MultiReport {
  std::vector<MultiLevelReport> levels;
  double multicut = 0.0;
  double violations_must = 0.0;
  double violations_cannot = 0.0;
  int violated_count = 0;
  double fraction_violated = 0.0;
  double gamma_final = 0.0;  // largest penalty used by any committed split
};

// Recursive constrained multi-partitioning: merges all must-links once, then
// repeatedly splits one component, chosen as the candidate split minimizing
// the multicut criterion. Each component is split in soft mode with a
// violation budget derived from its internal cannot-link count.
std::pair<MultiPartition, MultiReport> multi_partition(const Graph& g,
                                                       const ConstraintSet& q,
                                                       int k,
                                                       const CoscConfig& cfg);

}  // namespace cosc
