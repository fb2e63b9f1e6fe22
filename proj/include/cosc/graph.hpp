#pragma once

#include <utility>
#include <vector>

namespace cosc {

// Undirected weighted edge, stored once with u < v.
struct Edge {
  int u = 0;
  int v = 0;
  double w = 0.0;
};

// Adjacency entry: partner vertex, index into the edge list, and orientation
// sign (+1 when this vertex is edge.u, -1 when it is edge.v).
struct Incidence {
  int nbr = 0;
  int edge = 0;
  int sign = 0;
};

// How vertex weights are derived when a graph is built from edges alone:
// Ratio sets b_i = 1, Normalized sets b_i = d_i (weighted degree).
enum class VertexWeightMode { Ratio, Normalized };

// Connected undirected graph with positive edge weights and positive vertex
// weights. Immutable after construction; construction validates everything.
class Graph {
 public:
  Graph(int n, std::vector<Edge> edges, std::vector<double> vertex_weights);

  static Graph with_mode(int n, std::vector<Edge> edges, VertexWeightMode mode);

  int n() const { return n_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<Incidence>& incident(int v) const {
    return adjacency_[static_cast<std::size_t>(v)];
  }
  double vertex_weight(int i) const { return b_[static_cast<std::size_t>(i)]; }
  const std::vector<double>& vertex_weights() const { return b_; }
  double degree(int i) const { return degree_[static_cast<std::size_t>(i)]; }
  double gvol_total() const { return gvol_; }
  int max_neighbor_count() const;

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<Incidence>> adjacency_;
  std::vector<double> b_;
  std::vector<double> degree_;
  double gvol_ = 0.0;
};

// Subset C of the vertices, as one side of a bipartition (C, V \ C).
class Partition {
 public:
  explicit Partition(std::vector<char> membership);
  Partition(int n, const std::vector<int>& members);

  int n() const { return static_cast<int>(in_.size()); }
  int size() const { return count_; }
  bool contains(int i) const { return in_[static_cast<std::size_t>(i)] != 0; }
  bool trivial() const { return count_ == 0 || count_ == n(); }
  Partition complement() const;
  std::vector<int> members() const;

  bool operator==(const Partition& other) const { return in_ == other.in_; }

  // True when the two objects describe the same bipartition, i.e. equal
  // sides or complementary sides.
  bool same_bipartition(const Partition& other) const;

 private:
  std::vector<char> in_;
  int count_ = 0;
};

// cut(C, V\C) = 2 * sum of weights of crossing edges. Trivial C is a domain
// error, as the remaining three evaluators below.
double cut(const Graph& g, const Partition& c);

// Sum of vertex weights over C (trivial C allowed here).
double gvol(const Graph& g, const Partition& c);

// bal(C) = 2 gvol(C) gvol(V\C) / gvol(V); maximized at gvol(V)/2.
double balance(const Graph& g, const Partition& c);

// Normalized cut cut(C)/bal(C); strictly positive on connected graphs.
double ncut(const Graph& g, const Partition& c);

// Symmetric k-nearest-neighbor graph over feature vectors. An edge is kept if
// either endpoint ranks the other among its k nearest. Weights use a Gaussian
// kernel with local scaling: w_ij = exp(-||x_i - x_j||^2 / (sigma_i sigma_j))
// where sigma_i is the distance from i to its k-th neighbor. Coincident
// points get weight 1. Throws if the result is disconnected (use a larger k).
Graph knn_graph(const std::vector<std::vector<double>>& points, int k,
                VertexWeightMode mode);

struct MergeResult {
  Graph graph;
  // vertex_map[original vertex] = reduced vertex; total and surjective.
  std::vector<int> vertex_map;
};

// Contracts every connected component of the must-link pair graph into one
// vertex. Vertex weights are summed, parallel edges are summed, self-loops
// are dropped. Reduced vertices are numbered by smallest original index.
MergeResult merge_must_links(const Graph& g,
                             const std::vector<std::pair<int, int>>& ml_pairs);

}  // namespace cosc
