#pragma once

#include "cosc/constraints.hpp"
#include "cosc/graph.hpp"

namespace fixtures {

// Path 0-1-2-3 with weights 1.0, 0.1, 1.0 and unit vertex weights.
inline cosc::Graph g4() {
  return cosc::Graph(4, {{0, 1, 1.0}, {1, 2, 0.1}, {2, 3, 1.0}},
                     {1.0, 1.0, 1.0, 1.0});
}

// One must-link (0,1) and one cannot-link (0,3), both weight 1.
inline cosc::ConstraintSet q1() {
  cosc::ConstraintSet q;
  q.add_must(0, 1, 1.0);
  q.add_cannot(0, 3, 1.0);
  return q;
}

}  // namespace fixtures
