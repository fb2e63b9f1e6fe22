#pragma once

#include <utility>
#include <vector>

#include "cosc/constraints.hpp"
#include "cosc/functional.hpp"
#include "cosc/graph.hpp"

namespace cosc {

// One linearized inner problem of the descent loop:
//   min_{||f||_2 <= 1}  sum_{E'} w'_e |f_i - f_j| + c (max f - min f) - <f, g>
// with w'_ij = w_ij + gamma q^m_ij, c = (gamma/2) vol(Q^c) and
// g = gamma r2 + lambda s. Solved through its smooth rescaled dual over
// box-bounded antisymmetric edge variables and, when c > 0, a simplex block.
class InnerProblem {
 public:
  static InnerProblem build(const Graph& g, const ConstraintSet& q, double gamma,
                            const std::vector<double>& r2,
                            const std::vector<double>& s, double lambda);

  int n() const { return n_; }
  const std::vector<Edge>& edges() const { return edges_; }  // E' with weights w'
  double c() const { return c_; }
  bool has_simplex() const { return c_ > 0.0; }

  // g = gamma r2 + lambda s
  const std::vector<double>& linear_term() const { return linear_; }
  // b = g / c; only defined when c > 0
  const std::vector<double>& offset() const;
  // box bound s_e = w'_e M / c per edge; only defined when c > 0
  double box_bound(int e) const;
  // M = sqrt(max neighbor count over E'); satisfies M >= ||B||
  double scale_m() const;
  // gradient Lipschitz bound for the degenerate (c == 0) path
  double degenerate_lipschitz() const { return degenerate_l_; }

  // primal objective of this inner problem at f
  double primal_value(const std::vector<double>& f) const;

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  double c_ = 0.0;
  std::vector<double> linear_;
  std::vector<double> offset_;
  std::vector<double> box_;
  double m_ = 0.0;
  double degenerate_l_ = 0.0;
};

// Dual iterate: one antisymmetric variable per stored edge of E' plus the
// simplex block v (empty when c == 0, where beta plays the role of the
// box-[-1,1] edge variable).
struct DualState {
  std::vector<double> beta;
  std::vector<double> v;
};

// Euclidean projection onto the probability simplex, by sort and threshold.
std::vector<double> simplex_project(const std::vector<double>& x);

// Rescaled dual objective 1/2 ||d - P_U(d)||^2 with d = -(B/M) beta + v + b.
// Requires c > 0 and a feasible state (box and simplex); throws otherwise.
double dual_objective(const InnerProblem& p, const DualState& st);

// Same value without the feasibility check (used by the solver internals and
// finite-difference probes).
double psi_value(const InnerProblem& p, const std::vector<double>& beta,
                 const std::vector<double>& v);

// Gradient of the rescaled dual: per-edge -(d_i - d_j)/M over the residual
// d - P_U(d), and the residual itself for the simplex block.
std::pair<std::vector<double>, std::vector<double>> dual_gradient(
    const InnerProblem& p, const DualState& st);

struct InnerOptions {
  double tol = 1e-8;   // relative change of the dual objective
  int max_iter = 5000;
};

struct InnerResult {
  std::vector<double> f;  // unit-norm primal recovery (empty on inner_zero)
  double value = 0.0;     // dual estimate of the primal optimum, <= 0
  bool inner_zero = false;
  int iterations = 0;
};

// Accelerated projected gradient on the dual with step 1/4 (c > 0) or
// 1/degenerate_lipschitz (c == 0). A residual below 1e-14 signals inner_zero:
// the primal minimizer is arbitrary and the outer loop should stop. The warm
// state, when compatible, seeds the iteration and receives the final iterate.
InnerResult solve_inner(const InnerProblem& p, const InnerOptions& opt,
                        DualState* warm = nullptr);

struct RatioDcaOptions {
  double eps = 1e-6;  // relative lambda change stopping rule
  InnerOptions inner;
  int max_outer = 100;
};

struct RatioDcaResult {
  std::vector<double> f;
  double lambda = 0.0;
  std::vector<double> history;  // accepted lambda values, strictly decreasing
  bool inner_zero_stop = false;
  bool tightened = false;  // inner tolerance was tightened once after a
                           // non-descending step
  int outer_iterations = 0;
};

// Descent loop for the ratio objective: repeatedly linearizes the concave
// part and the denominator at the current iterate, solves the inner problem,
// and accepts the new point only if the objective strictly decreases. f0 must
// be non-constant; it is normalized internally.
RatioDcaResult ratio_dca(const Graph& g, const ConstraintSet& q, double gamma,
                         const std::vector<double>& f0,
                         const RatioDcaOptions& opt = {});

}  // namespace cosc
