#include "cosc/functional.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace cosc {

namespace {

void check_length(const std::vector<double>& f, int n, const char* op) {
  if (static_cast<int>(f.size()) != n)
    throw std::invalid_argument(std::string(op) + ": vector length != n");
}

void require_nonconstant(const std::vector<double>& f, const char* op) {
  if (is_constant(f))
    throw std::domain_error(std::string(op) + ": f must be non-constant");
}

double weighted_mean(const Graph& g, const std::vector<double>& f) {
  double dot = 0.0;
  for (int i = 0; i < g.n(); ++i)
    dot += f[static_cast<std::size_t>(i)] * g.vertex_weight(i);
  return dot / g.gvol_total();
}

double sign0(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

}  // namespace

bool is_constant(const std::vector<double>& f) {
  for (std::size_t i = 1; i < f.size(); ++i)
    if (f[i] != f[0]) return false;
  return true;
}

double m_of_f(const ConstraintSet& q, const std::vector<double>& f) {
  double total = 0.0;
  for (const auto& p : q.must())
    total += p.q * std::abs(f[static_cast<std::size_t>(p.i)] -
                            f[static_cast<std::size_t>(p.j)]);
  return 2.0 * total;
}

double n_of_f(const ConstraintSet& q, const std::vector<double>& f) {
  if (q.cannot().empty()) return 0.0;
  const auto [lo, hi] = std::minmax_element(f.begin(), f.end());
  double pairs = 0.0;
  for (const auto& p : q.cannot())
    pairs += p.q * std::abs(f[static_cast<std::size_t>(p.i)] -
                            f[static_cast<std::size_t>(p.j)]);
  return q.vol_qc() * (*hi - *lo) - 2.0 * pairs;
}

double s_of_f(const Graph& g, const std::vector<double>& f) {
  check_length(f, g.n(), "s_of_f");
  const double mu = weighted_mean(g, f);
  double total = 0.0;
  for (int i = 0; i < g.n(); ++i)
    total += g.vertex_weight(i) * std::abs(f[static_cast<std::size_t>(i)] - mu);
  return total;
}

double f_gamma_set(const Graph& g, const ConstraintSet& q, const Partition& c,
                   double gamma) {
  const double penalty = violations_must(q, c) + violations_cannot(q, c);
  return (cut(g, c) + gamma * penalty) / balance(g, c);
}

namespace {

double tv_edges(const Graph& g, const std::vector<double>& f) {
  double total = 0.0;
  for (const auto& e : g.edges())
    total += e.w * std::abs(f[static_cast<std::size_t>(e.u)] -
                            f[static_cast<std::size_t>(e.v)]);
  return total;
}

}  // namespace

double f_gamma_cont(const Graph& g, const ConstraintSet& q,
                    const std::vector<double>& f, double gamma) {
  check_length(f, g.n(), "f_gamma_cont");
  require_nonconstant(f, "f_gamma_cont");
  const double numerator =
      2.0 * tv_edges(g, f) + gamma * (m_of_f(q, f) + n_of_f(q, f));
  return numerator / s_of_f(g, f);
}

ThresholdResult optimal_threshold(const Graph& g, const ConstraintSet& q,
                                  const std::vector<double>& f, double gamma) {
  check_length(f, g.n(), "optimal_threshold");
  require_nonconstant(f, "optimal_threshold");

  std::vector<double> levels(f);
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

  const int n = g.n();
  bool have_best = false;
  double best_value = 0.0;
  int best_size = 0;
  std::vector<char> best_side;
  std::vector<char> side(static_cast<std::size_t>(n));
  // thresholds at every distinct value except the maximum
  for (std::size_t t = 0; t + 1 < levels.size(); ++t) {
    int count = 0;
    for (int i = 0; i < n; ++i) {
      side[static_cast<std::size_t>(i)] =
          f[static_cast<std::size_t>(i)] > levels[t] ? 1 : 0;
      count += side[static_cast<std::size_t>(i)];
    }
    Partition part{side};
    const double value = f_gamma_set(g, q, part, gamma);
    if (!have_best || value < best_value ||
        (value == best_value && count < best_size)) {
      have_best = true;
      best_value = value;
      best_size = count;
      best_side = side;
    }
  }
  return ThresholdResult{Partition{std::move(best_side)}, best_value};
}

std::vector<double> subgradient_S(const Graph& g, const std::vector<double>& f) {
  check_length(f, g.n(), "subgradient_S");
  const int n = g.n();
  const double mu = weighted_mean(g, f);
  std::vector<double> s(static_cast<std::size_t>(n));
  double weighted_sign = 0.0;
  for (int i = 0; i < n; ++i) {
    const double bs =
        g.vertex_weight(i) * sign0(f[static_cast<std::size_t>(i)] - mu);
    s[static_cast<std::size_t>(i)] = bs;
    weighted_sign += bs;
  }
  const double shift = weighted_sign / g.gvol_total();
  for (int i = 0; i < n; ++i)
    s[static_cast<std::size_t>(i)] =
        0.5 * (s[static_cast<std::size_t>(i)] - g.vertex_weight(i) * shift);
  return s;
}

std::vector<double> subgradient_R2(const ConstraintSet& q,
                                   const std::vector<double>& f) {
  std::vector<double> r2(f.size(), 0.0);
  for (const auto& p : q.cannot()) {
    const double u = sign0(f[static_cast<std::size_t>(p.i)] -
                           f[static_cast<std::size_t>(p.j)]);
    r2[static_cast<std::size_t>(p.i)] += p.q * u;
    r2[static_cast<std::size_t>(p.j)] -= p.q * u;
  }
  return r2;
}

double solver_r1(const Graph& g, const ConstraintSet& q,
                 const std::vector<double>& f, double gamma) {
  check_length(f, g.n(), "solver_r1");
  double total = tv_edges(g, f);
  for (const auto& p : q.must())
    total += gamma * p.q * std::abs(f[static_cast<std::size_t>(p.i)] -
                                    f[static_cast<std::size_t>(p.j)]);
  if (!q.cannot().empty()) {
    const auto [lo, hi] = std::minmax_element(f.begin(), f.end());
    total += 0.5 * gamma * q.vol_qc() * (*hi - *lo);
  }
  return total;
}

double solver_r2(const ConstraintSet& q, const std::vector<double>& f) {
  double total = 0.0;
  for (const auto& p : q.cannot())
    total += p.q * std::abs(f[static_cast<std::size_t>(p.i)] -
                            f[static_cast<std::size_t>(p.j)]);
  return total;
}

double solver_s(const Graph& g, const std::vector<double>& f) {
  return 0.5 * s_of_f(g, f);
}

}  // namespace cosc
