#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fcurp/geometry.hpp"

namespace fcurp {

// Each polyline is a sequence of straight road segments; shared endpoints
// (within 1e-9 km) connect polylines into one road network.
struct RoadNetwork {
  std::vector<std::vector<Point>> polylines;
};

struct Instance {
  double env_width = 0;
  double env_height = 0;
  std::vector<Point> targets;
  RoadNetwork road;
  double U = 0;   // max UAV travel per sortie, km
  double R = 0;   // max RV road travel per UAV sortie, km
  std::optional<double> Vu;  // km/h, metadata only
  std::optional<double> Vr;  // km/h, metadata only
  double delta = 0;          // road discretization resolution, km
  std::optional<Point> s0_hint;
  std::uint64_t seed = 0;
};

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

ValidationReport validate_instance(const Instance& in);

// True when the union of road segments forms a single connected set.
bool road_connected(const RoadNetwork& road);

}  // namespace fcurp
