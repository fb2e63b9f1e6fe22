#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cosc/errors.hpp"
#include "cosc/io.hpp"
#include "cosc/metrics.hpp"
#include "cosc/rng.hpp"
#include "doctest.h"
#include "fixtures.hpp"
#include "json.hpp"

using namespace cosc;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir() {
  static const fs::path dir = [] {
    fs::path p = fs::temp_directory_path() / "cosc_tests";
    fs::create_directories(p);
    return p;
  }();
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(COSC_CLI_PATH) + " " + args + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

}  // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("graph files round-trip") {
  const fs::path path = temp_dir() / "g4.graph";
  save_graph(path.string(), fixtures::g4());
  const Graph loaded = load_graph(path.string(), VertexWeightMode::Ratio);
  CHECK(loaded.n() == 4);
  REQUIRE(loaded.edges().size() == 3);
  for (std::size_t e = 0; e < loaded.edges().size(); ++e) {
    CHECK(loaded.edges()[e].u == fixtures::g4().edges()[e].u);
    CHECK(loaded.edges()[e].v == fixtures::g4().edges()[e].v);
    CHECK(loaded.edges()[e].w == fixtures::g4().edges()[e].w);
  }
}

TEST_CASE("graph parse errors carry line numbers") {
  const fs::path path = temp_dir() / "bad.graph";
  {
    std::ofstream out(path);
    out << "4 2\n0 1 1.0\n2 1 1.0\n";  // i >= j on line 3
  }
  try {
    load_graph(path.string(), VertexWeightMode::Ratio);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
}

TEST_CASE("constraint files round-trip, reject bad weights") {
  const fs::path path = temp_dir() / "q1.constraints";
  ConstraintSet q = fixtures::q1();
  q.add_cannot(1, 3, 0.5);
  save_constraints(path.string(), q);
  const ConstraintSet loaded = load_constraints(path.string(), 4);
  REQUIRE(loaded.must().size() == 1);
  REQUIRE(loaded.cannot().size() == 2);
  CHECK(loaded.cannot()[1].q == doctest::Approx(0.5));

  const fs::path bad = temp_dir() / "bad.constraints";
  {
    std::ofstream out(bad);
    out << "ML 0 1 1.5\n";
  }
  CHECK_THROWS_AS(load_constraints(bad.string(), 4), ParseError);
}

TEST_CASE("labels round-trip") {
  const fs::path path = temp_dir() / "labels.txt";
  const std::vector<int> labels = {0, 0, 1, 2, 1};
  save_labels(path.string(), labels);
  CHECK(load_labels(path.string()) == labels);
}

TEST_CASE("points CSV parsing") {
  const fs::path path = temp_dir() / "points.csv";
  {
    std::ofstream out(path);
    out << "0.0,1.0\n2.5,-1.25\n";
  }
  const auto pts = load_points_csv(path.string());
  REQUIRE(pts.size() == 2);
  CHECK(pts[1][1] == doctest::Approx(-1.25));

  const fs::path bad = temp_dir() / "bad.csv";
  {
    std::ofstream out(bad);
    out << "0.0,1.0\nx,2.0\n";
  }
  CHECK_THROWS_AS(load_points_csv(bad.string()), ParseError);
}

TEST_CASE("majority-vote clustering error") {
  CHECK(clustering_error({7, 7, 9, 9}, {0, 0, 1, 1}) == doctest::Approx(0.0));
  CHECK(clustering_error({1, 1, 1, 2}, {0, 0, 1, 1}) == doctest::Approx(0.25));
  CHECK(clustering_error({0, 0, 0, 0}, {0, 0, 1, 1}) == doctest::Approx(0.5));
  CHECK_THROWS_AS(clustering_error({0, 1}, {0, 1, 2}), std::invalid_argument);
}

TEST_CASE("constraint generation follows the labels and the seed") {
  const std::vector<int> truth = {0, 0, 1, 1};
  const ConstraintSet a = generate_constraints(truth, 2, 31);
  const ConstraintSet b = generate_constraints(truth, 2, 31);
  CHECK(a.must().size() == b.must().size());
  CHECK(a.cannot().size() == b.cannot().size());
  for (std::size_t i = 0; i < a.must().size(); ++i) {
    CHECK(a.must()[i].i == b.must()[i].i);
    CHECK(a.must()[i].j == b.must()[i].j);
  }
  CHECK(a.must().size() + a.cannot().size() == 2);

  const ConstraintSet none = generate_constraints(truth, 0, 1);
  CHECK(none.empty());

  const ConstraintSet all_same = generate_constraints({5, 5, 5}, 3, 2);
  CHECK(all_same.cannot().empty());
  CHECK(all_same.must().size() == 3);

  CHECK_THROWS_AS(generate_constraints(truth, 100, 1), std::invalid_argument);
}

TEST_CASE("cluster command solves the fixture end to end") {
  const fs::path dir = temp_dir();
  const fs::path graph = dir / "cli_g4.graph";
  const fs::path cons = dir / "cli_q1.constraints";
  const fs::path labels = dir / "cli_labels.txt";
  const fs::path metrics = dir / "cli_metrics.json";
  save_graph(graph.string(), fixtures::g4());
  save_constraints(cons.string(), fixtures::q1());

  const int rc = run_cli("cluster --graph " + graph.string() + " --constraints " +
                         cons.string() + " --mode hard --seed 9 --out-labels " +
                         labels.string() + " --out-metrics " + metrics.string());
  CHECK(rc == 0);
  CHECK(load_labels(labels.string()) == std::vector<int>{0, 0, 1, 1});

  const auto doc = nlohmann::json::parse(slurp(metrics));
  CHECK(doc.at("ncut").get<double>() == doctest::Approx(0.1).epsilon(1e-9));
  CHECK(doc.at("fraction_violated").get<double>() == 0.0);
}

TEST_CASE("cluster command fails cleanly on infeasible hard constraints") {
  const fs::path dir = temp_dir();
  const fs::path graph = dir / "cli_tri.graph";
  const fs::path cons = dir / "cli_tri.constraints";
  save_graph(graph.string(), fixtures::g4());
  {
    std::ofstream out(cons);
    out << "CL 0 1\nCL 1 2\nCL 0 2\n";
  }
  const int rc = run_cli("cluster --graph " + graph.string() + " --constraints " +
                         cons.string() + " --mode hard --out-labels " +
                         (dir / "x.txt").string() + " --out-metrics " +
                         (dir / "x.json").string());
  CHECK(rc == 2);
}

TEST_CASE("eval command reports zero error for identical labelings") {
  const fs::path dir = temp_dir();
  const fs::path labels = dir / "cli_eval.txt";
  save_labels(labels.string(), {0, 0, 1, 1});
  const std::string cmd = std::string(COSC_CLI_PATH) + " eval --pred " +
                          labels.string() + " --truth " + labels.string() +
                          " > " + (dir / "eval_out.json").string();
  REQUIRE(std::system(cmd.c_str()) == 0);
  const auto doc = nlohmann::json::parse(slurp(dir / "eval_out.json"));
  CHECK(doc.at("clustering_error").get<double>() == 0.0);
}

TEST_CASE("sweep command emits one CSV row per count and trial") {
  const fs::path dir = temp_dir();
  const fs::path graph = dir / "cli_sweep.graph";
  const fs::path labels = dir / "cli_sweep_labels.txt";
  const fs::path csv = dir / "cli_sweep.csv";
  save_graph(graph.string(), fixtures::g4());
  save_labels(labels.string(), {0, 0, 1, 1});

  const int rc = run_cli("sweep --graph " + graph.string() + " --labels " +
                         labels.string() + " --counts 0,2 --trials 2 --seed 4 " +
                         "--out-csv " + csv.string());
  CHECK(rc == 0);
  std::istringstream lines(slurp(csv));
  std::string line;
  int rows = 0;
  std::getline(lines, line);
  CHECK(line == "n_constraints,trial,ncut,fraction_violated,error,gamma_final");
  while (std::getline(lines, line))
    if (!line.empty()) ++rows;
  CHECK(rows == 4);
}

TEST_CASE("knn-graph and gen-constraints commands produce loadable files") {
  const fs::path dir = temp_dir();
  const fs::path pts = dir / "cli_points.csv";
  const fs::path graph = dir / "cli_knn.graph";
  const fs::path labels = dir / "cli_gen_labels.txt";
  const fs::path cons = dir / "cli_gen.constraints";
  {
    std::ofstream out(pts);
    for (int i = 0; i < 10; ++i) out << 0.1 * i << "," << (i % 2) * 0.05 << "\n";
  }
  save_labels(labels.string(), {0, 0, 0, 0, 0, 1, 1, 1, 1, 1});

  CHECK(run_cli("knn-graph --points " + pts.string() +
                " --k 3 --weights ratio --out " + graph.string()) == 0);
  const Graph g = load_graph(graph.string(), VertexWeightMode::Ratio);
  CHECK(g.n() == 10);

  CHECK(run_cli("gen-constraints --labels " + labels.string() +
                " --count 5 --seed 3 --out " + cons.string()) == 0);
  const ConstraintSet q = load_constraints(cons.string(), 10);
  CHECK(q.total_count() == 5);
}

TEST_SUITE_END();
