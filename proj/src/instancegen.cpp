#include "fcurp/instancegen.hpp"

#include <cstdio>
#include <filesystem>
#include <random>
#include <stdexcept>

#include "fcurp/json_io.hpp"

namespace fcurp {
namespace {

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::string trim_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

}  // namespace

std::string network_name(NetworkKind kind) {
  return kind == NetworkKind::Dense ? "dense" : "sparse";
}

RoadNetwork road_network(NetworkKind kind, double env_side) {
  if (!(env_side > 0)) throw std::invalid_argument("env_side must be positive");
  RoadNetwork road;
  double mid = env_side / 2;
  if (kind == NetworkKind::Sparse) {
    // Crossing point is an explicit vertex so the two lines share a node.
    road.polylines.push_back({{mid, 0}, {mid, mid}, {mid, env_side}});
    road.polylines.push_back({{0, mid}, {mid, mid}, {env_side, mid}});
    return road;
  }
  double lo = env_side * 0.2;
  double hi = env_side * 0.8;
  const double rails[3] = {lo, mid, hi};
  for (double y : rails) road.polylines.push_back({{lo, y}, {mid, y}, {hi, y}});
  for (double x : rails) road.polylines.push_back({{x, lo}, {x, mid}, {x, hi}});
  return road;
}

Instance generate(const GenConfig& cfg, int index) {
  if (cfg.grid_n < 1) throw std::invalid_argument("grid_n must be at least 1");
  if (index < 0) throw std::invalid_argument("instance index must be non-negative");
  Instance in;
  in.env_width = cfg.env_side;
  in.env_height = cfg.env_side;
  in.U = cfg.U;
  in.R = cfg.R;
  in.delta = cfg.delta;
  in.Vu = 40;
  in.Vr = cfg.R * *in.Vu / cfg.U;  // keeps R = (U / Vu) * Vr
  in.seed = cfg.seed;
  in.road = road_network(cfg.network, cfg.env_side);

  std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed),
                    static_cast<std::uint32_t>(cfg.seed >> 32),
                    static_cast<std::uint32_t>(index)};
  std::mt19937_64 rng(seq);
  int n = cfg.grid_n;
  in.targets.reserve(static_cast<std::size_t>(n) * n);
  for (int gy = 0; gy < n; ++gy)
    for (int gx = 0; gx < n; ++gx) {
      // Ratio form keeps the draw inside [0, env_side] even at the last cell.
      double ux = cfg.targets == TargetMode::Centers ? 0.5 : uniform01(rng);
      double uy = cfg.targets == TargetMode::Centers ? 0.5 : uniform01(rng);
      in.targets.push_back({cfg.env_side * (gx + ux) / n, cfg.env_side * (gy + uy) / n});
    }
  return in;
}

std::string instance_filename(const GenConfig& cfg, int index) {
  return network_name(cfg.network) + "-n" + std::to_string(cfg.grid_n) + "-U" +
         trim_number(cfg.U) + "-R" + trim_number(cfg.R) + "-i" + std::to_string(index) + ".json";
}

std::vector<std::string> write_suite(const GenConfig& cfg, const std::string& dir) {
  std::filesystem::create_directories(dir);
  std::vector<std::string> paths;
  paths.reserve(static_cast<std::size_t>(std::max(0, cfg.instances_per_config)));
  for (int i = 0; i < cfg.instances_per_config; ++i) {
    std::string path = (std::filesystem::path(dir) / instance_filename(cfg, i)).string();
    save_instance(generate(cfg, i), path);
    paths.push_back(std::move(path));
  }
  return paths;
}

}  // namespace fcurp
