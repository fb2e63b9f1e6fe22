#pragma once

#include <string>
#include <vector>

#include "cosc/constraints.hpp"
#include "cosc/graph.hpp"

namespace cosc {

// Graph text format: first line "n m", then m lines "i j w" with 0-based
// i < j and w > 0. Vertex weights are not stored; they are derived from the
// requested mode on load.
Graph load_graph(const std::string& path, VertexWeightMode mode);
void save_graph(const std::string& path, const Graph& g);

// Constraint text format: one constraint per line, "ML i j [q]" or
// "CL i j [q]" with 0-based indices and optional q in [0, 1] (default 1).
// Blank lines and lines starting with '#' are ignored.
ConstraintSet load_constraints(const std::string& path, int n);
void save_constraints(const std::string& path, const ConstraintSet& q);

// Labels: one integer per line.
std::vector<int> load_labels(const std::string& path);
void save_labels(const std::string& path, const std::vector<int>& labels);

// Points: CSV with one row per point, numeric columns only, no header.
std::vector<std::vector<double>> load_points_csv(const std::string& path);

}  // namespace cosc
