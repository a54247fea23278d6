#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fcurp/instance.hpp"

namespace fcurp {

enum class NetworkKind { Dense, Sparse };
enum class TargetMode { Uniform, Centers };

struct GenConfig {
  double env_side = 20;  // square environment, km
  int grid_n = 3;        // grid_n^2 cells, one target each
  double U = 20;
  double R = 10;
  double delta = 1;
  NetworkKind network = NetworkKind::Dense;
  TargetMode targets = TargetMode::Uniform;
  int instances_per_config = 20;
  std::uint64_t seed = 0;
};

std::string network_name(NetworkKind kind);

// dense: a ladder of three horizontal and three vertical lines with explicit
// vertices at the nine crossings; sparse: a single central cross. Both are
// connected and scale with env_side.
RoadNetwork road_network(NetworkKind kind, double env_side);

// One target per grid cell: a uniform draw inside the cell, or the cell
// center. The draw stream is seeded by (cfg.seed, index), so the same pair
// always reproduces the same instance byte for byte.
Instance generate(const GenConfig& cfg, int index);

std::string instance_filename(const GenConfig& cfg, int index);

// Writes instances 0..instances_per_config-1 under dir; returns their paths.
std::vector<std::string> write_suite(const GenConfig& cfg, const std::string& dir);

}  // namespace fcurp
