#pragma once

#include <string>

#include "fcurp/routing_graph.hpp"

namespace fcurp {

// Instance files are strict: unknown fields are rejected. Vu, Vr, s0_hint and
// seed are optional; s0_hint may be null.
Instance parse_instance_json(const std::string& text);
std::string instance_to_json(const Instance& in);
Instance load_instance(const std::string& path);
void save_instance(const Instance& in, const std::string& path);

struct SiteSetFile {
  std::vector<Point> sites;  // selected site coordinates, selection order
  int s0_index = 0;
  std::vector<int> order;  // candidate site ids, selection order
};

SiteSetFile make_site_set(const DiscretizedRoad& road, const SiteSelection& sel);
// Rebuilds the selection against a discretized road; validates that the file's
// coordinates match the candidate sites it names.
SiteSelection selection_from_site_set(const DiscretizedRoad& road, const SiteSetFile& file,
                                      const std::vector<Point>& targets);
std::string site_set_to_json(const SiteSetFile& s);
SiteSetFile parse_site_set_json(const std::string& text);
SiteSetFile load_site_set(const std::string& path);
void save_site_set(const SiteSetFile& s, const std::string& path);

// Solution files tolerate unknown fields (third-party producers).
std::string solution_to_json(const RouteSolution& sol);
RouteSolution parse_solution_json(const std::string& text);
RouteSolution load_solution(const std::string& path);
void save_solution(const RouteSolution& sol, const std::string& path);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace fcurp
