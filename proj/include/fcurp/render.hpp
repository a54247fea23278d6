#pragma once

#include <string>

#include "fcurp/json_io.hpp"
#include "fcurp/road.hpp"

namespace fcurp {

struct RenderStyle {
  double scale = 32;   // px per km
  double margin = 16;  // px border around the environment frame
  std::string road_color = "#1f77b4";
  double road_width = 2;
  std::string uav_color = "#d62728";
  double uav_width = 1.5;
  std::string rv_color = "#2ca02c";
  double rv_width = 2.5;
  std::string target_color = "#d62728";
  double target_size = 5;  // star outer radius, px
  std::string site_color = "#2ca02c";
  double site_size = 8;  // square edge, px
};

// Layered SVG: frame, roads, targets, then (when present) selected sites, the
// RV route, and the UAV route. The UAV walk is one path element per leg; the
// RV route is a dashed polyline following road shortest paths between
// consecutive stops. Identical inputs produce identical bytes. Rendering a
// solution requires the site set that defines its vertex ids.
std::string render_svg(const Instance& in, const SiteSetFile* sites = nullptr,
                       const RouteSolution* sol = nullptr, const RenderStyle& style = {});

}  // namespace fcurp
