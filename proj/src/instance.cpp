#include "fcurp/instance.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

namespace fcurp {
namespace {

bool finite_point(const Point& p) { return std::isfinite(p.x) && std::isfinite(p.y); }

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

bool road_connected(const RoadNetwork& road) {
  std::vector<Point> nodes;
  auto node_id = [&](const Point& p) {
    for (std::size_t i = 0; i < nodes.size(); ++i)
      if (same_point(nodes[i], p)) return static_cast<int>(i);
    nodes.push_back(p);
    return static_cast<int>(nodes.size() - 1);
  };

  std::vector<std::pair<int, int>> edges;
  for (const auto& line : road.polylines) {
    for (std::size_t i = 0; i + 1 < line.size(); ++i)
      edges.emplace_back(node_id(line[i]), node_id(line[i + 1]));
  }
  if (nodes.empty()) return false;

  UnionFind uf(static_cast<int>(nodes.size()));
  for (auto [a, b] : edges) uf.unite(a, b);
  int root = uf.find(0);
  for (std::size_t i = 1; i < nodes.size(); ++i)
    if (uf.find(static_cast<int>(i)) != root) return false;
  return true;
}

ValidationReport validate_instance(const Instance& in) {
  ValidationReport rep;
  auto flag = [&](const std::string& msg) { rep.violations.push_back(msg); };

  if (!(in.env_width > 0) || !(in.env_height > 0)) flag("environment dimensions must be positive");
  if (!(in.U > 0)) flag("U must be positive");
  if (!(in.R > 0)) flag("R must be positive");
  if (!(in.delta > 0)) flag("delta must be positive");
  if (in.delta > in.R && in.R > 0) flag("delta must not exceed R");

  for (std::size_t i = 0; i < in.targets.size(); ++i) {
    const Point& t = in.targets[i];
    if (!finite_point(t)) {
      flag("target " + std::to_string(i) + " has non-finite coordinates");
      continue;
    }
    if (t.x < 0 || t.x > in.env_width || t.y < 0 || t.y > in.env_height)
      flag("target " + std::to_string(i) + " outside environment");
  }

  if (in.road.polylines.empty()) flag("road network is empty");
  for (std::size_t li = 0; li < in.road.polylines.size(); ++li) {
    const auto& line = in.road.polylines[li];
    if (line.size() < 2) {
      flag("road polyline " + std::to_string(li) + " has fewer than 2 points");
      continue;
    }
    for (const Point& p : line)
      if (!finite_point(p)) {
        flag("road polyline " + std::to_string(li) + " has non-finite coordinates");
        break;
      }
    for (std::size_t i = 0; i + 1 < line.size(); ++i)
      if (euclid(line[i], line[i + 1]) <= 0) {
        flag("road polyline " + std::to_string(li) + " has a zero-length segment");
        break;
      }
  }

  if (!in.road.polylines.empty() && !road_connected(in.road))
    flag("road network is disconnected");

  if (in.Vu && in.Vr && in.U > 0) {
    // t_u = U / V_u; R must equal t_u * V_r when both speeds are supplied.
    double implied = in.U / *in.Vu * *in.Vr;
    double scale = std::max({1.0, std::abs(in.R), std::abs(implied)});
    if (std::abs(implied - in.R) > 1e-9 * scale)
      flag("R inconsistent with U, Vu, Vr");
  }

  if (in.s0_hint && !finite_point(*in.s0_hint)) flag("s0_hint has non-finite coordinates");

  return rep;
}

}  // namespace fcurp
