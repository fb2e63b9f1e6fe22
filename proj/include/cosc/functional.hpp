#pragma once

#include <vector>

#include "cosc/constraints.hpp"
#include "cosc/graph.hpp"

namespace cosc {

// Continuous counterparts of the combinatorial objective. Vertex functions f
// are plain vectors of length n; evaluators that require a non-constant f
// throw std::domain_error otherwise. All functions here are pure.

// Must-link penalty M(f): sum over ordered pairs of q^m_ij |f_i - f_j|
// (each stored pair counted twice).
double m_of_f(const ConstraintSet& q, const std::vector<double>& f);

// Cannot-link penalty N(f): vol(Q^c)(max f - min f) minus the ordered-pair
// sum of q^c_ij |f_i - f_j|. Nonnegative.
double n_of_f(const ConstraintSet& q, const std::vector<double>& f);

// Balance denominator: || B (f - <f,b>/gvol(V) 1) ||_1, the b-weighted L1
// deviation from the b-weighted mean. Equals bal(C) at f = 1_C.
double s_of_f(const Graph& g, const std::vector<double>& f);

// Set objective (cut + gamma (violations_must + violations_cannot)) / bal.
// Equals ncut(C) on consistent partitions.
double f_gamma_set(const Graph& g, const ConstraintSet& q, const Partition& c,
                   double gamma);

// Continuous objective R_gamma(f) / S(f); scale- and shift-invariant, and
// agrees with f_gamma_set on indicator vectors.
double f_gamma_cont(const Graph& g, const ConstraintSet& q,
                    const std::vector<double>& f, double gamma);

struct ThresholdResult {
  Partition part;
  double value = 0.0;
};

// Scans the super-level sets {i : f_i > t} over all distinct-value thresholds
// below max(f) and returns the non-trivial partition minimizing the set
// objective. Ties pick the smallest side. The returned value never exceeds
// f_gamma_cont(f).
ThresholdResult optimal_threshold(const Graph& g, const ConstraintSet& q,
                                  const std::vector<double>& f, double gamma);

// Subgradient of the halved balance denominator S(f) = 1/2 ||B(f - mean)||_1
// used by the descent solver; sums to zero, sign(0) taken as 0.
std::vector<double> subgradient_S(const Graph& g, const std::vector<double>& f);

// Subgradient of the cannot-link surrogate R2(f) = sum over stored pairs of
// q^c |f_i - f_j|: entry i collects q^c_ij sign(f_i - f_j) over its partners.
// Sums to zero by antisymmetry.
std::vector<double> subgradient_R2(const ConstraintSet& q,
                                   const std::vector<double>& f);

// Solver-facing decomposition with the 1/2 scaling:
//   f_gamma_cont == (solver_r1 - gamma * solver_r2) / solver_s.
double solver_r1(const Graph& g, const ConstraintSet& q,
                 const std::vector<double>& f, double gamma);
double solver_r2(const ConstraintSet& q, const std::vector<double>& f);
double solver_s(const Graph& g, const std::vector<double>& f);

bool is_constant(const std::vector<double>& f);

}  // namespace cosc
