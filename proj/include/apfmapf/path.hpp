#pragma once

#include <vector>

#include "apfmapf/grid.hpp"

namespace apfmapf {

// Time-indexed vertex sequence for one agent; vertices[t] is the location at
// time-step t. Queries past the end return the terminal vertex (an agent that
// finished its path keeps occupying its last location).
struct Path {
  int agent = 0;
  std::vector<Vertex> vertices;

  bool empty() const { return vertices.empty(); }
  int last_step() const { return static_cast<int>(vertices.size()) - 1; }
  // Number of actions, i.e. SOC contribution of the path.
  int length() const { return static_cast<int>(vertices.size()) - 1; }

  const Vertex& at(int t) const {
    if (t >= static_cast<int>(vertices.size())) return vertices.back();
    return vertices[t];
  }
};

}  // namespace apfmapf
