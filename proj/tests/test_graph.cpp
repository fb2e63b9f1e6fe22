#include <stdexcept>
#include <cmath>
#include <set>

#include "cosc/graph.hpp"
#include "cosc/rng.hpp"
#include "doctest.h"
#include "fixtures.hpp"
#include "oracle.hpp"

using namespace cosc;

TEST_SUITE_BEGIN("graph");

TEST_CASE("cut, gvol, balance, ncut on the path graph") {
  const Graph g = fixtures::g4();
  const Partition c01(4, {0, 1});
  const Partition c0(4, {0});
  const Partition c012(4, {0, 1, 2});

  CHECK(cut(g, c01) == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(cut(g, c0) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(gvol(g, c01) == doctest::Approx(2.0));
  CHECK(gvol(g, Partition(4, {0, 1, 2, 3})) == doctest::Approx(4.0));
  CHECK(balance(g, c01) == doctest::Approx(2.0));
  CHECK(balance(g, c0) == doctest::Approx(1.5));
  CHECK(ncut(g, c01) == doctest::Approx(0.1));
  CHECK(ncut(g, c0) == doctest::Approx(2.0 / 1.5));
  CHECK(ncut(g, c012) == doctest::Approx(2.0 / 1.5));
}

TEST_CASE("gvol with non-unit vertex weights") {
  const Graph g(3, {{0, 1, 1.0}, {1, 2, 1.0}}, {1.0, 2.0, 3.0});
  CHECK(gvol(g, Partition(3, {1, 2})) == doctest::Approx(5.0));
}

TEST_CASE("balance is maximized by the even split") {
  const Graph g = fixtures::g4();
  CHECK(balance(g, Partition(4, {0, 1})) ==
        doctest::Approx(g.gvol_total() / 2.0));
}

TEST_CASE("trivial partitions are rejected") {
  const Graph g = fixtures::g4();
  const Partition all(4, {0, 1, 2, 3});
  const Partition none(4, {});
  CHECK_THROWS_AS(cut(g, all), std::domain_error);
  CHECK_THROWS_AS(balance(g, none), std::domain_error);
  CHECK_THROWS_AS(ncut(g, all), std::domain_error);
  CHECK_NOTHROW(gvol(g, all));
}

TEST_CASE("construction validates the graph") {
  CHECK_THROWS_AS(Graph(2, {{0, 0, 1.0}}, {1.0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(Graph(2, {{0, 1, -1.0}}, {1.0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(Graph(2, {{0, 1, 1.0}}, {1.0, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(Graph(3, {{0, 1, 1.0}}, {1.0, 1.0, 1.0}),
                  std::invalid_argument);  // disconnected
  CHECK_THROWS_AS(Graph(2, {{0, 1, 1.0}, {1, 0, 2.0}}, {1.0, 1.0}),
                  std::invalid_argument);  // duplicate edge
}

TEST_CASE("evaluators agree with the dense oracle on all bipartitions") {
  Rng rng(101);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 3 + static_cast<int>(rng.uniform_index(8));  // up to 10
    const Graph g = oracle::random_connected_graph(rng, n, trial % 2 == 1);
    const oracle::DenseInstance inst = oracle::dense_of(g, ConstraintSet{});
    oracle::for_each_bipartition(n, [&](const std::vector<char>& side) {
      const Partition c{side};
      CHECK(cut(g, c) == doctest::Approx(oracle::dense_cut(inst, side)).epsilon(1e-12));
      CHECK(gvol(g, c) ==
            doctest::Approx(oracle::dense_gvol(inst, side)).epsilon(1e-12));
      CHECK(balance(g, c) ==
            doctest::Approx(oracle::dense_balance(inst, side)).epsilon(1e-12));
      CHECK(ncut(g, c) ==
            doctest::Approx(oracle::dense_ncut(inst, side)).epsilon(1e-12));
    });
  }
}

TEST_CASE("knn graph of collinear points keeps consecutive edges") {
  const std::vector<std::vector<double>> pts = {{0.0}, {1.0}, {2.0}};
  const Graph g = knn_graph(pts, 1, VertexWeightMode::Ratio);
  std::set<std::pair<int, int>> got;
  for (const auto& e : g.edges()) got.emplace(e.u, e.v);
  CHECK(got == std::set<std::pair<int, int>>{{0, 1}, {1, 2}});
}

TEST_CASE("knn graph with k = n-1 is complete") {
  Rng rng(7);
  std::vector<std::vector<double>> pts(6, std::vector<double>(2));
  for (auto& p : pts) {
    p[0] = rng.uniform01();
    p[1] = rng.uniform01();
  }
  const Graph g = knn_graph(pts, 5, VertexWeightMode::Ratio);
  CHECK(g.edges().size() == 15);
}

TEST_CASE("coincident points get unit weight") {
  const std::vector<std::vector<double>> pts = {{1.0, 1.0}, {1.0, 1.0}};
  const Graph g = knn_graph(pts, 1, VertexWeightMode::Ratio);
  REQUIRE(g.edges().size() == 1);
  CHECK(g.edges()[0].w == doctest::Approx(1.0));
}

TEST_CASE("knn graph rejects far-apart point clusters when k is too small") {
  std::vector<std::vector<double>> pts;
  for (int i = 0; i < 4; ++i) pts.push_back({static_cast<double>(i) * 0.001});
  for (int i = 0; i < 4; ++i) pts.push_back({1e6 + i * 0.001});
  CHECK_THROWS_AS(knn_graph(pts, 2, VertexWeightMode::Ratio), std::runtime_error);
}

TEST_CASE("knn graph in normalized mode uses degrees as vertex weights") {
  Rng rng(11);
  std::vector<std::vector<double>> pts(8, std::vector<double>(2));
  for (auto& p : pts) {
    p[0] = rng.uniform01();
    p[1] = rng.uniform01();
  }
  const Graph g = knn_graph(pts, 3, VertexWeightMode::Normalized);
  for (int i = 0; i < g.n(); ++i)
    CHECK(g.vertex_weight(i) == doctest::Approx(g.degree(i)).epsilon(1e-12));
}

TEST_CASE("must-link merge of the path graph") {
  const Graph g = fixtures::g4();
  const MergeResult mr = merge_must_links(g, {{1, 2}});
  CHECK(mr.graph.n() == 3);
  CHECK(mr.vertex_map == std::vector<int>{0, 1, 1, 2});
  CHECK(mr.graph.vertex_weight(1) == doctest::Approx(2.0));
  REQUIRE(mr.graph.edges().size() == 2);
  CHECK(mr.graph.edges()[0].u == 0);
  CHECK(mr.graph.edges()[0].v == 1);
  CHECK(mr.graph.edges()[0].w == doctest::Approx(1.0));
  CHECK(mr.graph.edges()[1].u == 1);
  CHECK(mr.graph.edges()[1].v == 2);
  CHECK(mr.graph.edges()[1].w == doctest::Approx(1.0));
}

TEST_CASE("empty must-link set merges to the identical graph") {
  const Graph g = fixtures::g4();
  const MergeResult mr = merge_must_links(g, {});
  CHECK(mr.graph.n() == 4);
  CHECK(mr.vertex_map == std::vector<int>{0, 1, 2, 3});
  REQUIRE(mr.graph.edges().size() == g.edges().size());
  for (std::size_t e = 0; e < g.edges().size(); ++e) {
    CHECK(mr.graph.edges()[e].u == g.edges()[e].u);
    CHECK(mr.graph.edges()[e].v == g.edges()[e].v);
    CHECK(mr.graph.edges()[e].w == doctest::Approx(g.edges()[e].w));
  }
}

TEST_CASE("contracting everything yields a single vertex") {
  const Graph g = fixtures::g4();
  const MergeResult mr = merge_must_links(g, {{0, 1}, {1, 2}, {2, 3}});
  CHECK(mr.graph.n() == 1);
  CHECK(mr.graph.edges().empty());
  CHECK(mr.graph.vertex_weight(0) == doctest::Approx(4.0));
}

TEST_CASE("merging preserves gvol and normalized cuts of non-separating partitions") {
  Rng rng(2024);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 4 + static_cast<int>(rng.uniform_index(9));  // up to 12
    const Graph g = oracle::random_connected_graph(rng, n, trial % 2 == 0);

    std::vector<std::pair<int, int>> ml;
    const int pairs = static_cast<int>(rng.uniform_index(4));
    for (int t = 0; t < pairs; ++t) {
      const int i = static_cast<int>(rng.uniform_index(static_cast<std::size_t>(n)));
      int j = static_cast<int>(rng.uniform_index(static_cast<std::size_t>(n - 1)));
      if (j >= i) ++j;
      ml.emplace_back(i, j);
    }
    const MergeResult mr = merge_must_links(g, ml);
    CHECK(mr.graph.gvol_total() == doctest::Approx(g.gvol_total()).epsilon(1e-14));
    if (mr.graph.n() < 2) continue;

    oracle::for_each_bipartition(mr.graph.n(), [&](const std::vector<char>& side) {
      const Partition reduced{side};
      std::vector<char> lifted(static_cast<std::size_t>(n));
      for (int v = 0; v < n; ++v)
        lifted[static_cast<std::size_t>(v)] =
            side[static_cast<std::size_t>(mr.vertex_map[static_cast<std::size_t>(v)])];
      const Partition original{lifted};
      CHECK(ncut(mr.graph, reduced) ==
            doctest::Approx(ncut(g, original)).epsilon(1e-12));
    });
  }
}

TEST_SUITE_END();
