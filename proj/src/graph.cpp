#include "cosc/graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <stdexcept>
#include <string>

namespace cosc {

namespace {

void check_vertex(int v, int n, const char* where) {
  if (v < 0 || v >= n)
    throw std::invalid_argument(std::string(where) + ": vertex index " +
                                std::to_string(v) + " out of range [0, " +
                                std::to_string(n) + ")");
}

}  // namespace

Graph::Graph(int n, std::vector<Edge> edges, std::vector<double> vertex_weights)
    : n_(n), edges_(std::move(edges)), b_(std::move(vertex_weights)) {
  if (n_ < 1) throw std::invalid_argument("Graph: need at least one vertex");
  if (static_cast<int>(b_.size()) != n_)
    throw std::invalid_argument("Graph: vertex weight count != n");
  for (double w : b_)
    if (!(w > 0.0)) throw std::invalid_argument("Graph: vertex weights must be positive");

  for (auto& e : edges_) {
    check_vertex(e.u, n_, "Graph");
    check_vertex(e.v, n_, "Graph");
    if (e.u == e.v) throw std::invalid_argument("Graph: self-loops not allowed");
    if (!(e.w > 0.0)) throw std::invalid_argument("Graph: edge weights must be positive");
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) {
    return a.u != b.u ? a.u < b.u : a.v < b.v;
  });
  for (std::size_t i = 1; i < edges_.size(); ++i)
    if (edges_[i - 1].u == edges_[i].u && edges_[i - 1].v == edges_[i].v)
      throw std::invalid_argument("Graph: duplicate edge (" +
                                  std::to_string(edges_[i].u) + ", " +
                                  std::to_string(edges_[i].v) + ")");

  adjacency_.assign(static_cast<std::size_t>(n_), {});
  degree_.assign(static_cast<std::size_t>(n_), 0.0);
  for (int e = 0; e < static_cast<int>(edges_.size()); ++e) {
    const Edge& ed = edges_[static_cast<std::size_t>(e)];
    adjacency_[static_cast<std::size_t>(ed.u)].push_back({ed.v, e, +1});
    adjacency_[static_cast<std::size_t>(ed.v)].push_back({ed.u, e, -1});
    degree_[static_cast<std::size_t>(ed.u)] += ed.w;
    degree_[static_cast<std::size_t>(ed.v)] += ed.w;
  }
  gvol_ = std::accumulate(b_.begin(), b_.end(), 0.0);

  // connectivity (single vertex counts as connected)
  std::vector<char> seen(static_cast<std::size_t>(n_), 0);
  std::queue<int> bfs;
  bfs.push(0);
  seen[0] = 1;
  int reached = 1;
  while (!bfs.empty()) {
    const int u = bfs.front();
    bfs.pop();
    for (const auto& inc : adjacency_[static_cast<std::size_t>(u)]) {
      if (!seen[static_cast<std::size_t>(inc.nbr)]) {
        seen[static_cast<std::size_t>(inc.nbr)] = 1;
        ++reached;
        bfs.push(inc.nbr);
      }
    }
  }
  if (reached != n_) throw std::invalid_argument("Graph: graph is not connected");
}

Graph Graph::with_mode(int n, std::vector<Edge> edges, VertexWeightMode mode) {
  if (mode == VertexWeightMode::Ratio)
    return Graph(n, std::move(edges), std::vector<double>(static_cast<std::size_t>(n), 1.0));
  std::vector<double> deg(static_cast<std::size_t>(n), 0.0);
  for (const auto& e : edges) {
    if (e.u >= 0 && e.u < n) deg[static_cast<std::size_t>(e.u)] += e.w;
    if (e.v >= 0 && e.v < n) deg[static_cast<std::size_t>(e.v)] += e.w;
  }
  return Graph(n, std::move(edges), std::move(deg));
}

int Graph::max_neighbor_count() const {
  std::size_t best = 0;
  for (const auto& row : adjacency_) best = std::max(best, row.size());
  return static_cast<int>(best);
}

Partition::Partition(std::vector<char> membership) : in_(std::move(membership)) {
  if (in_.empty()) throw std::invalid_argument("Partition: empty membership");
  for (char c : in_)
    if (c) ++count_;
}

Partition::Partition(int n, const std::vector<int>& members)
    : in_(static_cast<std::size_t>(n), 0) {
  if (n < 1) throw std::invalid_argument("Partition: empty vertex set");
  for (int v : members) {
    check_vertex(v, n, "Partition");
    if (!in_[static_cast<std::size_t>(v)]) {
      in_[static_cast<std::size_t>(v)] = 1;
      ++count_;
    }
  }
}

Partition Partition::complement() const {
  std::vector<char> flipped(in_.size());
  for (std::size_t i = 0; i < in_.size(); ++i) flipped[i] = in_[i] ? 0 : 1;
  return Partition(std::move(flipped));
}

std::vector<int> Partition::members() const {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(count_));
  for (int i = 0; i < n(); ++i)
    if (contains(i)) out.push_back(i);
  return out;
}

bool Partition::same_bipartition(const Partition& other) const {
  if (n() != other.n()) return false;
  return *this == other || *this == other.complement();
}

namespace {

void require_compatible(const Graph& g, const Partition& c, const char* op) {
  if (c.n() != g.n())
    throw std::invalid_argument(std::string(op) + ": partition size != graph size");
}

void require_nontrivial(const Partition& c, const char* op) {
  if (c.trivial())
    throw std::domain_error(std::string(op) + ": partition must be non-trivial");
}

}  // namespace

double cut(const Graph& g, const Partition& c) {
  require_compatible(g, c, "cut");
  require_nontrivial(c, "cut");
  double total = 0.0;
  for (const auto& e : g.edges())
    if (c.contains(e.u) != c.contains(e.v)) total += e.w;
  return 2.0 * total;
}

double gvol(const Graph& g, const Partition& c) {
  require_compatible(g, c, "gvol");
  double total = 0.0;
  for (int i = 0; i < g.n(); ++i)
    if (c.contains(i)) total += g.vertex_weight(i);
  return total;
}

double balance(const Graph& g, const Partition& c) {
  require_compatible(g, c, "balance");
  require_nontrivial(c, "balance");
  const double inside = gvol(g, c);
  return 2.0 * inside * (g.gvol_total() - inside) / g.gvol_total();
}

double ncut(const Graph& g, const Partition& c) {
  return cut(g, c) / balance(g, c);
}

Graph knn_graph(const std::vector<std::vector<double>>& points, int k,
                VertexWeightMode mode) {
  const int n = static_cast<int>(points.size());
  if (n < 2) throw std::invalid_argument("knn_graph: need at least two points");
  if (k < 1 || k >= n)
    throw std::invalid_argument("knn_graph: need 1 <= k < number of points");
  const std::size_t dim = points[0].size();
  for (const auto& p : points)
    if (p.size() != dim)
      throw std::invalid_argument("knn_graph: inconsistent point dimensions");

  auto dist2 = [&](int i, int j) {
    double s = 0.0;
    for (std::size_t d = 0; d < dim; ++d) {
      const double diff = points[static_cast<std::size_t>(i)][d] -
                          points[static_cast<std::size_t>(j)][d];
      s += diff * diff;
    }
    return s;
  };

  // k nearest per vertex, ties broken by index for determinism
  std::vector<std::vector<int>> nearest(static_cast<std::size_t>(n));
  std::vector<double> sigma(static_cast<std::size_t>(n), 0.0);
  std::vector<std::pair<double, int>> cand;
  for (int i = 0; i < n; ++i) {
    cand.clear();
    for (int j = 0; j < n; ++j)
      if (j != i) cand.emplace_back(dist2(i, j), j);
    std::partial_sort(cand.begin(), cand.begin() + k, cand.end());
    auto& row = nearest[static_cast<std::size_t>(i)];
    row.reserve(static_cast<std::size_t>(k));
    for (int t = 0; t < k; ++t) row.push_back(cand[static_cast<std::size_t>(t)].second);
    sigma[static_cast<std::size_t>(i)] =
        std::sqrt(cand[static_cast<std::size_t>(k - 1)].first);
  }

  std::set<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i)
    for (int j : nearest[static_cast<std::size_t>(i)])
      pairs.emplace(std::min(i, j), std::max(i, j));

  std::vector<Edge> edges;
  edges.reserve(pairs.size());
  for (const auto& [u, v] : pairs) {
    const double d2 = dist2(u, v);
    double w;
    if (d2 == 0.0) {
      w = 1.0;  // coincident points
    } else {
      const double denom =
          sigma[static_cast<std::size_t>(u)] * sigma[static_cast<std::size_t>(v)];
      w = denom > 0.0 ? std::exp(-d2 / denom) : 0.0;
    }
    if (w > 0.0) edges.push_back({u, v, w});
  }

  try {
    return Graph::with_mode(n, std::move(edges), mode);
  } catch (const std::invalid_argument&) {
    throw std::runtime_error(
        "knn_graph: resulting graph is disconnected; increase k");
  }
}

namespace {

class UnionFind {
 public:
  explicit UnionFind(int n) : parent_(static_cast<std::size_t>(n)) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  int find(int x) {
    while (parent_[static_cast<std::size_t>(x)] != x) {
      parent_[static_cast<std::size_t>(x)] =
          parent_[static_cast<std::size_t>(parent_[static_cast<std::size_t>(x)])];
      x = parent_[static_cast<std::size_t>(x)];
    }
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a > b) std::swap(a, b);  // keep the smaller index as root
    parent_[static_cast<std::size_t>(b)] = a;
  }

 private:
  std::vector<int> parent_;
};

}  // namespace

MergeResult merge_must_links(const Graph& g,
                             const std::vector<std::pair<int, int>>& ml_pairs) {
  const int n = g.n();
  UnionFind uf(n);
  for (const auto& [p, q] : ml_pairs) {
    check_vertex(p, n, "merge_must_links");
    check_vertex(q, n, "merge_must_links");
    if (p == q) throw std::invalid_argument("merge_must_links: self pair");
    uf.unite(p, q);
  }

  // number reduced vertices by smallest original index of their component
  std::vector<int> vertex_map(static_cast<std::size_t>(n), -1);
  int reduced_n = 0;
  for (int v = 0; v < n; ++v) {
    const int root = uf.find(v);
    if (vertex_map[static_cast<std::size_t>(root)] == -1)
      vertex_map[static_cast<std::size_t>(root)] = reduced_n++;
    vertex_map[static_cast<std::size_t>(v)] = vertex_map[static_cast<std::size_t>(root)];
  }

  std::vector<double> b(static_cast<std::size_t>(reduced_n), 0.0);
  for (int v = 0; v < n; ++v)
    b[static_cast<std::size_t>(vertex_map[static_cast<std::size_t>(v)])] +=
        g.vertex_weight(v);

  std::map<std::pair<int, int>, double> acc;
  for (const auto& e : g.edges()) {
    int ru = vertex_map[static_cast<std::size_t>(e.u)];
    int rv = vertex_map[static_cast<std::size_t>(e.v)];
    if (ru == rv) continue;  // contracted edge
    if (ru > rv) std::swap(ru, rv);
    acc[{ru, rv}] += e.w;
  }
  std::vector<Edge> edges;
  edges.reserve(acc.size());
  for (const auto& [key, w] : acc) edges.push_back({key.first, key.second, w});

  return MergeResult{Graph(reduced_n, std::move(edges), std::move(b)),
                     std::move(vertex_map)};
}

}  // namespace cosc
