#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "cosc/graph.hpp"

namespace cosc {

// One pairwise constraint, stored once with i < j and weight q > 0.
struct ConstraintPair {
  int i = 0;
  int j = 0;
  double q = 1.0;
};

// Symmetric must-link / cannot-link pair weights. A pair may appear in only
// one of the two lists. File loading restricts q to [0,1]; internally larger
// weights are allowed (they arise when must-link merging fuses parallel
// constraints and must keep violation counts intact).
class ConstraintSet {
 public:
  // Adding an existing pair accumulates its weight.
  void add_must(int i, int j, double q = 1.0);
  void add_cannot(int i, int j, double q = 1.0);

  const std::vector<ConstraintPair>& must() const { return must_; }
  const std::vector<ConstraintPair>& cannot() const { return cannot_; }

  // vol(Q^c): cannot-link weights summed over ordered pairs, i.e. twice the
  // stored total.
  double vol_qc() const { return 2.0 * cannot_weight_; }

  std::size_t total_count() const { return must_.size() + cannot_.size(); }
  bool empty() const { return must_.empty() && cannot_.empty(); }
  bool has_fractional_must() const;

  std::vector<std::pair<int, int>> must_pairs() const;

 private:
  std::vector<ConstraintPair> must_;
  std::vector<ConstraintPair> cannot_;
  std::map<std::pair<int, int>, std::size_t> must_index_;
  std::map<std::pair<int, int>, std::size_t> cannot_index_;
  double cannot_weight_ = 0.0;
};

// 2 * sum of must-link weights over pairs split by the bipartition.
double violations_must(const ConstraintSet& q, const Partition& c);

// vol(Q^c) - 2 * sum of cannot-link weights over crossing pairs; equals twice
// the weighted count of cannot-link pairs kept together.
double violations_cannot(const ConstraintSet& q, const Partition& c);

// Number of stored constraints the bipartition violates.
int violated_constraint_count(const ConstraintSet& q, const Partition& c);

bool is_consistent(const ConstraintSet& q, const Partition& c);

// Builds a non-trivial consistent partition by contracting must-link
// components and 2-coloring the contracted cannot-link graph with BFS
// (lowest-index uncolored vertex starts a new color-0 component). Returns
// nullopt when the constraints are infeasible: an odd cannot-link cycle, a
// cannot-link pair forced together by must-links, or a forced trivial
// partition.
std::optional<Partition> find_consistent_partition(const ConstraintSet& q, int n);

struct ReducedConstraints {
  ConstraintSet set;
  // Weight of cannot-link pairs whose endpoints were contracted into the same
  // reduced vertex; such pairs are unavoidably violated and are dropped from
  // the reduced set.
  double forced_cannot_weight = 0.0;
};

// Rewrites constraints through a must-link merge map. Must-link pairs whose
// endpoints coincide after the merge are satisfied and dropped; weights of
// pairs landing on the same reduced pair are summed.
ReducedConstraints remap_constraints(const ConstraintSet& q,
                                     const std::vector<int>& vertex_map,
                                     int reduced_n);

}  // namespace cosc
