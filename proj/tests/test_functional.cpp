#include <stdexcept>
#include <cmath>

#include "cosc/functional.hpp"
#include "cosc/rng.hpp"
#include "doctest.h"
#include "fixtures.hpp"
#include "oracle.hpp"

using namespace cosc;

namespace {

std::vector<double> indicator(const Partition& c) {
  std::vector<double> f(static_cast<std::size_t>(c.n()), 0.0);
  for (int i = 0; i < c.n(); ++i)
    if (c.contains(i)) f[static_cast<std::size_t>(i)] = 1.0;
  return f;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

TEST_SUITE_BEGIN("functional");

TEST_CASE("constraint surrogates on the fixture") {
  const ConstraintSet q = fixtures::q1();
  CHECK(m_of_f(q, {1, 0, 1, 0}) == doctest::Approx(2.0));
  CHECK(m_of_f(q, indicator(Partition(4, {0, 1}))) == doctest::Approx(0.0));
  CHECK(m_of_f(q, {3, 3, 3, 3}) == doctest::Approx(0.0));

  CHECK(n_of_f(q, {1, 1, 0, 0}) == doctest::Approx(0.0));
  CHECK(n_of_f(q, {1, 0, 0, 1}) == doctest::Approx(2.0));
  CHECK(n_of_f(ConstraintSet{}, {1, 0, 0, 1}) == doctest::Approx(0.0));
}

TEST_CASE("balance denominator on indicators and constants") {
  const Graph g = fixtures::g4();
  CHECK(s_of_f(g, indicator(Partition(4, {0, 1}))) == doctest::Approx(2.0));
  CHECK(s_of_f(g, {5, 5, 5, 5}) == doctest::Approx(0.0));
  CHECK(s_of_f(g, {1, 0, 0, 0}) == doctest::Approx(1.5));
}

TEST_CASE("set objective values") {
  const Graph g = fixtures::g4();
  const ConstraintSet q = fixtures::q1();
  CHECK(f_gamma_set(g, q, Partition(4, {0, 1}), 0.7) == doctest::Approx(0.1));
  CHECK(f_gamma_set(g, q, Partition(4, {0, 3}), 1.0) == doctest::Approx(4.0));
  // gamma = 0 reduces to the normalized cut for every partition
  CHECK(f_gamma_set(g, q, Partition(4, {0}), 0.0) ==
        doctest::Approx(ncut(g, Partition(4, {0}))));
}

TEST_CASE("continuous objective values and invariances") {
  const Graph g = fixtures::g4();
  const ConstraintSet q = fixtures::q1();
  CHECK(f_gamma_cont(g, q, indicator(Partition(4, {0, 1})), 5.0) ==
        doctest::Approx(0.1));
  CHECK(f_gamma_cont(g, q, {1, 0, 0, 1}, 1.0) == doctest::Approx(4.0));

  const std::vector<double> f = {0.3, -0.2, 0.9, 0.1};
  std::vector<double> scaled(f);
  for (auto& x : scaled) x = 2.0 * x + 3.0;
  CHECK(f_gamma_cont(g, q, scaled, 0.8) ==
        doctest::Approx(f_gamma_cont(g, q, f, 0.8)).epsilon(1e-12));

  CHECK_THROWS_AS(f_gamma_cont(g, q, {1, 1, 1, 1}, 1.0), std::domain_error);
}

TEST_CASE("set and continuous objectives agree on indicators") {
  Rng rng(303);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 4 + static_cast<int>(rng.uniform_index(7));
    const Graph g = oracle::random_connected_graph(rng, n, trial % 2 == 0);
    const std::vector<char> truth = oracle::random_bipartition(rng, n);
    const ConstraintSet q = oracle::constraints_from_labels(rng, truth, 4);
    const double gamma = rng.uniform(0.0, 3.0);
    for (int i = 0; i < 15; ++i) {
      const std::vector<char> side = oracle::random_bipartition(rng, n);
      const Partition c{side};
      CHECK(f_gamma_cont(g, q, indicator(c), gamma) ==
            doctest::Approx(f_gamma_set(g, q, c, gamma)).epsilon(1e-12));
    }
  }
}

TEST_CASE("optimal thresholding on a graded vector") {
  const Graph g = fixtures::g4();
  const ConstraintSet q = fixtures::q1();
  const ThresholdResult th = optimal_threshold(g, q, {0.9, 0.8, 0.1, 0.0}, 0.0);
  CHECK(th.part.same_bipartition(Partition(4, {0, 1})));
  CHECK(th.value == doctest::Approx(0.1));
}

TEST_CASE("thresholding an indicator returns its partition") {
  const Graph g = fixtures::g4();
  const ConstraintSet q = fixtures::q1();
  const Partition c(4, {0, 2});
  const ThresholdResult th = optimal_threshold(g, q, indicator(c), 0.4);
  CHECK(th.part.same_bipartition(c));
  CHECK(th.value == doctest::Approx(f_gamma_set(g, q, c, 0.4)));
}

TEST_CASE("thresholding never exceeds the continuous objective") {
  Rng rng(404);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 4 + static_cast<int>(rng.uniform_index(7));
    const Graph g = oracle::random_connected_graph(rng, n);
    const std::vector<char> truth = oracle::random_bipartition(rng, n);
    const ConstraintSet q = oracle::constraints_from_labels(rng, truth, 4);
    const double gamma = rng.uniform(0.0, 2.0);
    for (int i = 0; i < 40; ++i) {
      const std::vector<double> f = Rng(derive_seed(9000, trial * 100 + i)).unit_vector(n);
      const ThresholdResult th = optimal_threshold(g, q, f, gamma);
      CHECK(th.value <= f_gamma_cont(g, q, f, gamma) + 1e-9);
    }
  }
}

TEST_CASE("balance subgradient matches the worked example and sums to zero") {
  const Graph g = fixtures::g4();
  const auto s = subgradient_S(g, {1, 1, 0, 0});
  CHECK(s[0] == doctest::Approx(0.5));
  CHECK(s[1] == doctest::Approx(0.5));
  CHECK(s[2] == doctest::Approx(-0.5));
  CHECK(s[3] == doctest::Approx(-0.5));

  Rng rng(15);
  for (int i = 0; i < 30; ++i) {
    const auto f = rng.unit_vector(4);
    const auto grad = subgradient_S(g, f);
    double sum = 0.0;
    for (double x : grad) sum += x;
    CHECK(std::abs(sum) < 1e-12);

    std::vector<double> neg(f);
    for (auto& x : neg) x = -x;
    const auto grad_neg = subgradient_S(g, neg);
    for (std::size_t j = 0; j < grad.size(); ++j)
      CHECK(grad_neg[j] == doctest::Approx(-grad[j]).epsilon(1e-12));
  }
}

TEST_CASE("cannot-link subgradient on the fixture") {
  const ConstraintSet q = fixtures::q1();
  const auto r2 = subgradient_R2(q, {1, 1, 0, 0});
  // single cannot-link pair (0,3) with f_0 > f_3
  CHECK(r2[0] == doctest::Approx(1.0));
  CHECK(r2[1] == doctest::Approx(0.0));
  CHECK(r2[2] == doctest::Approx(0.0));
  CHECK(r2[3] == doctest::Approx(-1.0));

  const auto zero = subgradient_R2(q, {2, 2, 2, 2});
  for (double x : zero) CHECK(x == 0.0);

  Rng rng(16);
  for (int i = 0; i < 30; ++i) {
    const auto f = rng.unit_vector(4);
    const auto grad = subgradient_R2(q, f);
    double sum = 0.0;
    for (double x : grad) sum += x;
    CHECK(std::abs(sum) < 1e-12);
  }
}

TEST_CASE("solver decomposition reproduces the objective") {
  Rng rng(505);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 4 + static_cast<int>(rng.uniform_index(6));
    const Graph g = oracle::random_connected_graph(rng, n);
    const std::vector<char> truth = oracle::random_bipartition(rng, n);
    const ConstraintSet q = oracle::constraints_from_labels(rng, truth, 4);
    const double gamma = rng.uniform(0.0, 2.5);
    const auto f = rng.unit_vector(n);

    const double ratio = (solver_r1(g, q, f, gamma) - gamma * solver_r2(q, f)) /
                         solver_s(g, f);
    CHECK(ratio == doctest::Approx(f_gamma_cont(g, q, f, gamma)).epsilon(1e-12));
    CHECK(solver_s(g, f) == doctest::Approx(0.5 * s_of_f(g, f)).epsilon(1e-12));
  }
}

TEST_CASE("first-order convexity of the subgradients") {
  Rng rng(606);
  const Graph g = fixtures::g4();
  const ConstraintSet q = fixtures::q1();
  for (int trial = 0; trial < 200; ++trial) {
    const auto f = rng.unit_vector(4);
    const auto h = rng.unit_vector(4);
    const auto s = subgradient_S(g, f);
    const auto r2 = subgradient_R2(q, f);
    for (double eps : {1e-3, 1e-4}) {
      std::vector<double> moved(f);
      for (std::size_t i = 0; i < moved.size(); ++i) moved[i] += eps * h[i];
      CHECK(solver_s(g, moved) >= solver_s(g, f) + eps * dot(s, h) - 1e-9);
      CHECK(solver_r2(q, moved) >= solver_r2(q, f) + eps * dot(r2, h) - 1e-9);
    }
  }
}

TEST_SUITE_END();
