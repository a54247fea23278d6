#pragma once

#include <utility>
#include <vector>

#include "fcurp/instance.hpp"

namespace fcurp {

struct DiscretizedRoad {
  std::vector<Point> sites;                 // index = site id
  std::vector<std::vector<double>> r;       // shortest-path road distance, km
  std::vector<std::vector<int>> H;          // H[s] = target indices with euclid(s,t) <= U/2
  std::vector<std::vector<int>> N;          // N[s] = site indices j != s with r[s][j] <= R
  // Segment graph over the emitted sites (edge weight = arc length). Kept for
  // shortest-path reconstruction; r is derived from it.
  std::vector<std::vector<std::pair<int, double>>> adj;

  // Site id sequence from `from` to `to` inclusive along a shortest road path.
  std::vector<int> shortest_path(int from, int to) const;
};

DiscretizedRoad discretize_road(const Instance& in);

}  // namespace fcurp
