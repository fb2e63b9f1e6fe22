#include "cosc/constraints.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <stdexcept>
#include <string>

namespace cosc {

namespace {

std::pair<int, int> canonical(int i, int j, const char* where) {
  if (i < 0 || j < 0)
    throw std::invalid_argument(std::string(where) + ": negative vertex index");
  if (i == j)
    throw std::invalid_argument(std::string(where) + ": self pair (" +
                                std::to_string(i) + ", " + std::to_string(j) + ")");
  return {std::min(i, j), std::max(i, j)};
}

}  // namespace

void ConstraintSet::add_must(int i, int j, double q) {
  const auto key = canonical(i, j, "add_must");
  if (!(q > 0.0)) throw std::invalid_argument("add_must: weight must be positive");
  if (cannot_index_.count(key))
    throw std::invalid_argument("constraint pair (" + std::to_string(key.first) +
                                ", " + std::to_string(key.second) +
                                ") listed as both must-link and cannot-link");
  auto [it, inserted] = must_index_.try_emplace(key, must_.size());
  if (inserted)
    must_.push_back({key.first, key.second, q});
  else
    must_[it->second].q += q;
}

void ConstraintSet::add_cannot(int i, int j, double q) {
  const auto key = canonical(i, j, "add_cannot");
  if (!(q > 0.0)) throw std::invalid_argument("add_cannot: weight must be positive");
  if (must_index_.count(key))
    throw std::invalid_argument("constraint pair (" + std::to_string(key.first) +
                                ", " + std::to_string(key.second) +
                                ") listed as both must-link and cannot-link");
  auto [it, inserted] = cannot_index_.try_emplace(key, cannot_.size());
  if (inserted)
    cannot_.push_back({key.first, key.second, q});
  else
    cannot_[it->second].q += q;
  cannot_weight_ += q;
}

bool ConstraintSet::has_fractional_must() const {
  for (const auto& p : must_)
    if (p.q < 1.0) return true;
  return false;
}

std::vector<std::pair<int, int>> ConstraintSet::must_pairs() const {
  std::vector<std::pair<int, int>> out;
  out.reserve(must_.size());
  for (const auto& p : must_) out.emplace_back(p.i, p.j);
  return out;
}

double violations_must(const ConstraintSet& q, const Partition& c) {
  double crossing = 0.0;
  for (const auto& p : q.must())
    if (c.contains(p.i) != c.contains(p.j)) crossing += p.q;
  return 2.0 * crossing;
}

double violations_cannot(const ConstraintSet& q, const Partition& c) {
  double crossing = 0.0;
  for (const auto& p : q.cannot())
    if (c.contains(p.i) != c.contains(p.j)) crossing += p.q;
  return q.vol_qc() - 2.0 * crossing;
}

int violated_constraint_count(const ConstraintSet& q, const Partition& c) {
  int count = 0;
  for (const auto& p : q.must())
    if (c.contains(p.i) != c.contains(p.j)) ++count;
  for (const auto& p : q.cannot())
    if (c.contains(p.i) == c.contains(p.j)) ++count;
  return count;
}

bool is_consistent(const ConstraintSet& q, const Partition& c) {
  return violations_must(q, c) <= 1e-12 && violations_cannot(q, c) <= 1e-12;
}

std::optional<Partition> find_consistent_partition(const ConstraintSet& q, int n) {
  if (n < 2)
    throw std::invalid_argument("find_consistent_partition: need n >= 2");

  // contract must-link components
  std::vector<int> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] =
          parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  };
  for (const auto& p : q.must()) {
    if (p.j >= n || p.i >= n)
      throw std::invalid_argument("find_consistent_partition: constraint vertex out of range");
    int a = find(p.i), b = find(p.j);
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    parent[static_cast<std::size_t>(b)] = a;
  }

  // cannot-link adjacency between contracted representatives
  std::vector<std::vector<int>> cl_adj(static_cast<std::size_t>(n));
  for (const auto& p : q.cannot()) {
    if (p.j >= n || p.i >= n)
      throw std::invalid_argument("find_consistent_partition: constraint vertex out of range");
    const int a = find(p.i), b = find(p.j);
    if (a == b) return std::nullopt;  // cannot-link inside a must-link component
    cl_adj[static_cast<std::size_t>(a)].push_back(b);
    cl_adj[static_cast<std::size_t>(b)].push_back(a);
  }

  // BFS 2-coloring over representatives, lowest index starts color 0
  std::vector<int> color(static_cast<std::size_t>(n), -1);
  for (int start = 0; start < n; ++start) {
    if (find(start) != start || color[static_cast<std::size_t>(start)] != -1)
      continue;
    color[static_cast<std::size_t>(start)] = 0;
    std::queue<int> bfs;
    bfs.push(start);
    while (!bfs.empty()) {
      const int u = bfs.front();
      bfs.pop();
      for (int w : cl_adj[static_cast<std::size_t>(u)]) {
        if (color[static_cast<std::size_t>(w)] == -1) {
          color[static_cast<std::size_t>(w)] = 1 - color[static_cast<std::size_t>(u)];
          bfs.push(w);
        } else if (color[static_cast<std::size_t>(w)] ==
                   color[static_cast<std::size_t>(u)]) {
          return std::nullopt;  // odd cannot-link cycle
        }
      }
    }
  }

  std::vector<char> side(static_cast<std::size_t>(n), 0);
  int ones = 0;
  for (int v = 0; v < n; ++v) {
    side[static_cast<std::size_t>(v)] =
        static_cast<char>(color[static_cast<std::size_t>(find(v))]);
    ones += side[static_cast<std::size_t>(v)];
  }

  if (ones == 0 || ones == n) {
    // Coloring came out one-sided (possible only without cannot-link edges
    // spanning sides). Prefer flipping the smallest fully unconstrained
    // vertex; otherwise flip the whole contracted component of vertex 0,
    // which cannot break any constraint.
    std::vector<char> constrained(static_cast<std::size_t>(n), 0);
    for (const auto& p : q.must())
      constrained[static_cast<std::size_t>(p.i)] =
          constrained[static_cast<std::size_t>(p.j)] = 1;
    for (const auto& p : q.cannot())
      constrained[static_cast<std::size_t>(p.i)] =
          constrained[static_cast<std::size_t>(p.j)] = 1;
    int free_vertex = -1;
    for (int v = 0; v < n; ++v)
      if (!constrained[static_cast<std::size_t>(v)]) {
        free_vertex = v;
        break;
      }
    if (free_vertex >= 0) {
      side[static_cast<std::size_t>(free_vertex)] ^= 1;
    } else {
      const int root = find(0);
      int flipped = 0;
      for (int v = 0; v < n; ++v)
        if (find(v) == root) {
          side[static_cast<std::size_t>(v)] ^= 1;
          ++flipped;
        }
      if (flipped == n) return std::nullopt;  // everything forced together
    }
  }

  Partition out{std::move(side)};
  if (out.trivial()) return std::nullopt;
  return out;
}

ReducedConstraints remap_constraints(const ConstraintSet& q,
                                     const std::vector<int>& vertex_map,
                                     int reduced_n) {
  auto image = [&](int v) {
    if (v < 0 || v >= static_cast<int>(vertex_map.size()))
      throw std::invalid_argument("remap_constraints: vertex out of range");
    const int r = vertex_map[static_cast<std::size_t>(v)];
    if (r < 0 || r >= reduced_n)
      throw std::invalid_argument("remap_constraints: bad vertex map entry");
    return r;
  };
  ReducedConstraints out;
  for (const auto& p : q.must()) {
    const int a = image(p.i), b = image(p.j);
    if (a != b) out.set.add_must(a, b, p.q);
  }
  for (const auto& p : q.cannot()) {
    const int a = image(p.i), b = image(p.j);
    if (a == b)
      out.forced_cannot_weight += p.q;
    else
      out.set.add_cannot(a, b, p.q);
  }
  return out;
}

}  // namespace cosc
