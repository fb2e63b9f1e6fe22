#include "cosc/inner_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>

namespace cosc {

namespace {

constexpr double kInnerZeroNorm = 1e-14;

double norm2(const std::vector<double>& x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

}  // namespace

InnerProblem InnerProblem::build(const Graph& g, const ConstraintSet& q,
                                 double gamma, const std::vector<double>& r2,
                                 const std::vector<double>& s, double lambda) {
  if (gamma < 0.0) throw std::invalid_argument("InnerProblem: gamma must be >= 0");
  if (static_cast<int>(r2.size()) != g.n() || static_cast<int>(s.size()) != g.n())
    throw std::invalid_argument("InnerProblem: subgradient length != n");

  InnerProblem p;
  p.n_ = g.n();

  // E': graph edges with must-link pairs folded in, w' = w + gamma q^m
  std::map<std::pair<int, int>, double> acc;
  for (const auto& e : g.edges()) acc[{e.u, e.v}] = e.w;
  if (gamma > 0.0)
    for (const auto& ml : q.must()) acc[{ml.i, ml.j}] += gamma * ml.q;
  p.edges_.reserve(acc.size());
  for (const auto& [key, w] : acc) p.edges_.push_back({key.first, key.second, w});

  p.c_ = 0.5 * gamma * q.vol_qc();
  p.linear_.resize(static_cast<std::size_t>(p.n_));
  for (int i = 0; i < p.n_; ++i)
    p.linear_[static_cast<std::size_t>(i)] =
        gamma * r2[static_cast<std::size_t>(i)] +
        lambda * s[static_cast<std::size_t>(i)];

  std::vector<int> neigh(static_cast<std::size_t>(p.n_), 0);
  std::vector<double> sq(static_cast<std::size_t>(p.n_), 0.0);
  for (const auto& e : p.edges_) {
    ++neigh[static_cast<std::size_t>(e.u)];
    ++neigh[static_cast<std::size_t>(e.v)];
    sq[static_cast<std::size_t>(e.u)] += e.w * e.w;
    sq[static_cast<std::size_t>(e.v)] += e.w * e.w;
  }
  p.m_ = std::sqrt(static_cast<double>(*std::max_element(neigh.begin(), neigh.end())));
  p.degenerate_l_ = 2.0 * *std::max_element(sq.begin(), sq.end());
  if (p.degenerate_l_ <= 0.0) p.degenerate_l_ = 1.0;

  if (p.c_ > 0.0) {
    p.offset_.resize(static_cast<std::size_t>(p.n_));
    for (int i = 0; i < p.n_; ++i)
      p.offset_[static_cast<std::size_t>(i)] =
          p.linear_[static_cast<std::size_t>(i)] / p.c_;
    p.box_.reserve(p.edges_.size());
    for (const auto& e : p.edges_) p.box_.push_back(e.w * p.m_ / p.c_);
  }
  return p;
}

const std::vector<double>& InnerProblem::offset() const {
  if (!has_simplex())
    throw std::domain_error("InnerProblem: offset undefined when c == 0");
  return offset_;
}

double InnerProblem::box_bound(int e) const {
  if (!has_simplex())
    throw std::domain_error("InnerProblem: box bounds undefined when c == 0");
  return box_[static_cast<std::size_t>(e)];
}

double InnerProblem::scale_m() const { return m_; }

double InnerProblem::primal_value(const std::vector<double>& f) const {
  if (static_cast<int>(f.size()) != n_)
    throw std::invalid_argument("primal_value: length mismatch");
  double total = 0.0;
  for (const auto& e : edges_)
    total += e.w * std::abs(f[static_cast<std::size_t>(e.u)] -
                            f[static_cast<std::size_t>(e.v)]);
  if (c_ > 0.0) {
    const auto [lo, hi] = std::minmax_element(f.begin(), f.end());
    total += c_ * (*hi - *lo);
  }
  for (int i = 0; i < n_; ++i)
    total -= f[static_cast<std::size_t>(i)] * linear_[static_cast<std::size_t>(i)];
  return total;
}

std::vector<double> simplex_project(const std::vector<double>& x) {
  const std::size_t n = x.size();
  if (n == 0) throw std::invalid_argument("simplex_project: empty vector");
  std::vector<double> sorted(x);
  std::sort(sorted.begin(), sorted.end(), std::greater<double>());
  double cumulative = 0.0;
  double theta = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    cumulative += sorted[j];
    const double candidate = (1.0 - cumulative) / static_cast<double>(j + 1);
    if (sorted[j] + candidate > 0.0)
      theta = candidate;
    else
      break;
  }
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = std::max(x[i] + theta, 0.0);
  return out;
}

namespace {

// d = -(B/M) beta + v + b, residual r = d - P_U(d)
void compute_residual(const InnerProblem& p, const std::vector<double>& beta,
                      const std::vector<double>& v, std::vector<double>& d,
                      std::vector<double>& r) {
  const int n = p.n();
  const double inv_m = 1.0 / p.scale_m();
  d.assign(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < n; ++i)
    d[static_cast<std::size_t>(i)] =
        v[static_cast<std::size_t>(i)] + p.offset()[static_cast<std::size_t>(i)];
  const auto& edges = p.edges();
  for (std::size_t e = 0; e < edges.size(); ++e) {
    d[static_cast<std::size_t>(edges[e].u)] -= beta[e] * inv_m;
    d[static_cast<std::size_t>(edges[e].v)] += beta[e] * inv_m;
  }
  const std::vector<double> proj = simplex_project(d);
  r.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    r[static_cast<std::size_t>(i)] =
        d[static_cast<std::size_t>(i)] - proj[static_cast<std::size_t>(i)];
}

void check_feasible(const InnerProblem& p, const DualState& st) {
  if (!p.has_simplex())
    throw std::domain_error("dual state checks require c > 0");
  if (st.beta.size() != p.edges().size() ||
      static_cast<int>(st.v.size()) != p.n())
    throw std::invalid_argument("dual state dimensions do not match problem");
  constexpr double tol = 1e-9;
  for (std::size_t e = 0; e < st.beta.size(); ++e)
    if (std::abs(st.beta[e]) > p.box_bound(static_cast<int>(e)) + tol)
      throw std::domain_error("dual state violates box bound");
  double sum = 0.0;
  for (double x : st.v) {
    if (x < -tol) throw std::domain_error("dual state leaves the simplex");
    sum += x;
  }
  if (std::abs(sum - 1.0) > tol)
    throw std::domain_error("dual state leaves the simplex");
}

}  // namespace

double psi_value(const InnerProblem& p, const std::vector<double>& beta,
                 const std::vector<double>& v) {
  std::vector<double> d, r;
  compute_residual(p, beta, v, d, r);
  double s = 0.0;
  for (double x : r) s += x * x;
  return 0.5 * s;
}

double dual_objective(const InnerProblem& p, const DualState& st) {
  check_feasible(p, st);
  return psi_value(p, st.beta, st.v);
}

std::pair<std::vector<double>, std::vector<double>> dual_gradient(
    const InnerProblem& p, const DualState& st) {
  check_feasible(p, st);
  std::vector<double> d, r;
  compute_residual(p, st.beta, st.v, d, r);
  const double inv_m = 1.0 / p.scale_m();
  std::vector<double> grad_beta(p.edges().size());
  for (std::size_t e = 0; e < p.edges().size(); ++e)
    grad_beta[e] = -(r[static_cast<std::size_t>(p.edges()[e].u)] -
                     r[static_cast<std::size_t>(p.edges()[e].v)]) *
                   inv_m;
  return {std::move(grad_beta), std::move(r)};
}

namespace {

InnerResult solve_simplex_path(const InnerProblem& p, const InnerOptions& opt,
                               DualState* warm) {
  const int n = p.n();
  const auto& edges = p.edges();
  const std::size_t m = edges.size();
  const double inv_m = 1.0 / p.scale_m();
  const double step = 0.25;  // 1/L with L = 4

  std::vector<double> beta(m, 0.0), v(static_cast<std::size_t>(n),
                                      1.0 / static_cast<double>(n));
  if (warm && warm->beta.size() == m &&
      static_cast<int>(warm->v.size()) == n) {
    beta = warm->beta;
    for (std::size_t e = 0; e < m; ++e) {
      const double bound = p.box_bound(static_cast<int>(e));
      beta[e] = std::clamp(beta[e], -bound, bound);
    }
    v = simplex_project(warm->v);
  }

  std::vector<double> yb = beta, yv = v;
  std::vector<double> d, r, vstep(static_cast<std::size_t>(n));
  double t = 1.0;
  double prev_obj = std::numeric_limits<double>::infinity();
  int it = 0;
  for (; it < opt.max_iter; ++it) {
    compute_residual(p, yb, yv, d, r);
    double obj = 0.0;
    for (double x : r) obj += x * x;
    obj *= 0.5;
    if (obj < 0.5 * kInnerZeroNorm * kInnerZeroNorm) break;
    if (it > 0 &&
        std::abs(obj - prev_obj) <= opt.tol * std::max(prev_obj, 1e-300))
      break;
    prev_obj = obj;

    // projected gradient step from the extrapolated point
    std::vector<double> beta_new(m);
    for (std::size_t e = 0; e < m; ++e) {
      const double bound = p.box_bound(static_cast<int>(e));
      const double g = -(r[static_cast<std::size_t>(edges[e].u)] -
                         r[static_cast<std::size_t>(edges[e].v)]) *
                       inv_m;
      beta_new[e] = std::clamp(yb[e] - step * g, -bound, bound);
    }
    for (int i = 0; i < n; ++i)
      vstep[static_cast<std::size_t>(i)] =
          yv[static_cast<std::size_t>(i)] - step * r[static_cast<std::size_t>(i)];
    std::vector<double> v_new = simplex_project(vstep);

    const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
    const double momentum = (t - 1.0) / t_next;
    for (std::size_t e = 0; e < m; ++e)
      yb[e] = beta_new[e] + momentum * (beta_new[e] - beta[e]);
    for (int i = 0; i < n; ++i)
      yv[static_cast<std::size_t>(i)] =
          v_new[static_cast<std::size_t>(i)] +
          momentum * (v_new[static_cast<std::size_t>(i)] -
                      v[static_cast<std::size_t>(i)]);
    beta = std::move(beta_new);
    v = std::move(v_new);
    t = t_next;
  }

  // recover the primal from the last projected iterate
  compute_residual(p, beta, v, d, r);
  const double rn = norm2(r);
  if (warm) {
    warm->beta = beta;
    warm->v = v;
  }
  InnerResult out;
  out.iterations = it;
  if (rn < kInnerZeroNorm) {
    out.inner_zero = true;
    return out;
  }
  out.f.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    out.f[static_cast<std::size_t>(i)] = r[static_cast<std::size_t>(i)] / rn;
  out.value = -p.c() * rn;
  return out;
}

// c == 0: minimize 1/2 || A alpha - g ||^2 over the box |alpha_e| <= 1,
// where (A alpha)_i sums w'_e alpha_e over incident edges with orientation.
InnerResult solve_degenerate_path(const InnerProblem& p, const InnerOptions& opt,
                                  DualState* warm) {
  const int n = p.n();
  const auto& edges = p.edges();
  const std::size_t m = edges.size();
  const double step = 1.0 / p.degenerate_lipschitz();
  const auto& g = p.linear_term();

  std::vector<double> alpha(m, 0.0);
  if (warm && warm->beta.size() == m) {
    alpha = warm->beta;
    for (auto& a : alpha) a = std::clamp(a, -1.0, 1.0);
  }

  auto residual = [&](const std::vector<double>& a, std::vector<double>& res) {
    res.assign(static_cast<std::size_t>(n), 0.0);
    for (std::size_t e = 0; e < m; ++e) {
      res[static_cast<std::size_t>(edges[e].u)] += edges[e].w * a[e];
      res[static_cast<std::size_t>(edges[e].v)] -= edges[e].w * a[e];
    }
    for (int i = 0; i < n; ++i)
      res[static_cast<std::size_t>(i)] -= g[static_cast<std::size_t>(i)];
  };

  std::vector<double> ya = alpha, res;
  double t = 1.0;
  double prev_obj = std::numeric_limits<double>::infinity();
  int it = 0;
  for (; it < opt.max_iter; ++it) {
    residual(ya, res);
    double obj = 0.0;
    for (double x : res) obj += x * x;
    obj *= 0.5;
    if (obj < 0.5 * kInnerZeroNorm * kInnerZeroNorm) break;
    if (it > 0 &&
        std::abs(obj - prev_obj) <= opt.tol * std::max(prev_obj, 1e-300))
      break;
    prev_obj = obj;

    std::vector<double> alpha_new(m);
    for (std::size_t e = 0; e < m; ++e) {
      const double grad = edges[e].w * (res[static_cast<std::size_t>(edges[e].u)] -
                                        res[static_cast<std::size_t>(edges[e].v)]);
      alpha_new[e] = std::clamp(ya[e] - step * grad, -1.0, 1.0);
    }
    const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
    const double momentum = (t - 1.0) / t_next;
    for (std::size_t e = 0; e < m; ++e)
      ya[e] = alpha_new[e] + momentum * (alpha_new[e] - alpha[e]);
    alpha = std::move(alpha_new);
    t = t_next;
  }

  residual(alpha, res);
  const double rn = norm2(res);
  if (warm) {
    warm->beta = alpha;
    warm->v.clear();
  }
  InnerResult out;
  out.iterations = it;
  if (rn < kInnerZeroNorm) {
    out.inner_zero = true;
    return out;
  }
  out.f.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    out.f[static_cast<std::size_t>(i)] = -res[static_cast<std::size_t>(i)] / rn;
  out.value = -rn;
  return out;
}

}  // namespace

InnerResult solve_inner(const InnerProblem& p, const InnerOptions& opt,
                        DualState* warm) {
  if (p.has_simplex()) return solve_simplex_path(p, opt, warm);
  return solve_degenerate_path(p, opt, warm);
}

RatioDcaResult ratio_dca(const Graph& g, const ConstraintSet& q, double gamma,
                         const std::vector<double>& f0,
                         const RatioDcaOptions& opt) {
  if (static_cast<int>(f0.size()) != g.n())
    throw std::invalid_argument("ratio_dca: f0 length != n");
  if (is_constant(f0)) throw std::domain_error("ratio_dca: f0 must be non-constant");

  RatioDcaResult out;
  out.f = f0;
  const double f0_norm = norm2(out.f);
  if (!(f0_norm > 0.0)) throw std::domain_error("ratio_dca: f0 must be nonzero");
  for (auto& x : out.f) x /= f0_norm;

  out.lambda = f_gamma_cont(g, q, out.f, gamma);
  out.history.push_back(out.lambda);

  InnerOptions inner = opt.inner;
  DualState warm;
  for (int k = 0; k < opt.max_outer; ++k) {
    const auto r2 = subgradient_R2(q, out.f);
    const auto s = subgradient_S(g, out.f);
    const InnerProblem problem =
        InnerProblem::build(g, q, gamma, r2, s, out.lambda);
    const InnerResult inner_result = solve_inner(problem, inner, &warm);
    ++out.outer_iterations;

    if (inner_result.inner_zero) {
      out.inner_zero_stop = true;
      break;
    }
    if (is_constant(inner_result.f)) break;  // no usable descent direction

    const double lambda_next = f_gamma_cont(g, q, inner_result.f, gamma);
    if (!std::isfinite(lambda_next))
      throw std::runtime_error("ratio_dca: non-finite objective at outer iteration " +
                               std::to_string(k));

    if (lambda_next >= out.lambda) {
      if (!out.tightened) {
        // one retry with a tighter inner solve before giving up
        out.tightened = true;
        inner.tol *= 1e-3;
        inner.max_iter *= 4;
        continue;
      }
      break;
    }

    const double rel = (out.lambda - lambda_next) / out.lambda;
    out.f = inner_result.f;
    out.lambda = lambda_next;
    out.history.push_back(lambda_next);
    if (rel < opt.eps) break;
  }
  return out;
}

}  // namespace cosc
