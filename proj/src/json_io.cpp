#include "fcurp/json_io.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "fcurp/errors.hpp"

namespace fcurp {
namespace {

using json = nlohmann::ordered_json;

Point point_from(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw std::runtime_error(std::string(what) + " must be a [x, y] pair");
  return {j[0].get<double>(), j[1].get<double>()};
}

json point_to(const Point& p) { return json::array({p.x, p.y}); }

void reject_unknown(const json& j, const std::set<std::string>& allowed, const char* where) {
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key()))
      throw std::runtime_error(std::string("unknown field \"") + it.key() + "\" in " + where);
}

double require_number(const json& j, const char* key, const char* where) {
  if (!j.contains(key) || !j[key].is_number())
    throw std::runtime_error(std::string("missing or non-numeric \"") + key + "\" in " + where);
  return j[key].get<double>();
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << content;
}

Instance parse_instance_json(const std::string& text) {
  json j = json::parse(text);
  if (!j.is_object()) throw std::runtime_error("instance file must be a JSON object");
  reject_unknown(j, {"env", "targets", "road", "U", "R", "Vu", "Vr", "delta", "s0_hint", "seed"},
                 "instance");

  Instance in;
  if (!j.contains("env") || !j["env"].is_object())
    throw std::runtime_error("missing \"env\" object in instance");
  reject_unknown(j["env"], {"width", "height"}, "env");
  in.env_width = require_number(j["env"], "width", "env");
  in.env_height = require_number(j["env"], "height", "env");

  if (!j.contains("targets") || !j["targets"].is_array())
    throw std::runtime_error("missing \"targets\" array in instance");
  for (const auto& t : j["targets"]) in.targets.push_back(point_from(t, "target"));

  if (!j.contains("road") || !j["road"].is_array())
    throw std::runtime_error("missing \"road\" array in instance");
  for (const auto& line : j["road"]) {
    if (!line.is_array()) throw std::runtime_error("road polyline must be an array of points");
    std::vector<Point> poly;
    for (const auto& p : line) poly.push_back(point_from(p, "road point"));
    in.road.polylines.push_back(std::move(poly));
  }

  in.U = require_number(j, "U", "instance");
  in.R = require_number(j, "R", "instance");
  in.delta = require_number(j, "delta", "instance");
  if (j.contains("Vu")) in.Vu = require_number(j, "Vu", "instance");
  if (j.contains("Vr")) in.Vr = require_number(j, "Vr", "instance");
  if (j.contains("s0_hint") && !j["s0_hint"].is_null())
    in.s0_hint = point_from(j["s0_hint"], "s0_hint");
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned())
      throw std::runtime_error("\"seed\" must be an unsigned integer");
    in.seed = j["seed"].get<std::uint64_t>();
  }
  return in;
}

std::string instance_to_json(const Instance& in) {
  json j;
  j["env"] = {{"width", in.env_width}, {"height", in.env_height}};
  j["targets"] = json::array();
  for (const Point& t : in.targets) j["targets"].push_back(point_to(t));
  j["road"] = json::array();
  for (const auto& line : in.road.polylines) {
    json poly = json::array();
    for (const Point& p : line) poly.push_back(point_to(p));
    j["road"].push_back(poly);
  }
  j["U"] = in.U;
  j["R"] = in.R;
  if (in.Vu) j["Vu"] = *in.Vu;
  if (in.Vr) j["Vr"] = *in.Vr;
  j["delta"] = in.delta;
  if (in.s0_hint) j["s0_hint"] = point_to(*in.s0_hint);
  j["seed"] = in.seed;
  return j.dump(2) + "\n";
}

Instance load_instance(const std::string& path) { return parse_instance_json(read_file(path)); }
void save_instance(const Instance& in, const std::string& path) {
  write_file(path, instance_to_json(in));
}

SiteSetFile make_site_set(const DiscretizedRoad& road, const SiteSelection& sel) {
  SiteSetFile f;
  for (int s : sel.selected) f.sites.push_back(road.sites[s]);
  f.s0_index = 0;
  f.order = sel.selected;
  return f;
}

SiteSelection selection_from_site_set(const DiscretizedRoad& road, const SiteSetFile& file,
                                      const std::vector<Point>& targets) {
  if (file.order.size() != file.sites.size())
    throw std::runtime_error("site set: order and sites lengths differ");
  if (file.s0_index != 0) throw std::runtime_error("site set: s0_index must be 0");
  SiteSelection sel;
  sel.selected = file.order;
  for (std::size_t i = 0; i < file.order.size(); ++i) {
    int id = file.order[i];
    if (id < 0 || id >= static_cast<int>(road.sites.size()))
      throw std::runtime_error("site set: candidate id out of range");
    if (!same_point(road.sites[id], file.sites[i]))
      throw std::runtime_error("site set: coordinates do not match the discretized road");
  }
  sel.covered.assign(targets.size(), -1);
  for (int s : sel.selected)
    for (int t : road.H[s])
      if (sel.covered[t] < 0) sel.covered[t] = s;
  return sel;
}

std::string site_set_to_json(const SiteSetFile& s) {
  json j;
  j["sites"] = json::array();
  for (const Point& p : s.sites) j["sites"].push_back(point_to(p));
  j["s0_index"] = s.s0_index;
  j["order"] = s.order;
  return j.dump(2) + "\n";
}

SiteSetFile parse_site_set_json(const std::string& text) {
  json j = json::parse(text);
  SiteSetFile f;
  if (!j.contains("sites") || !j["sites"].is_array())
    throw std::runtime_error("site set: missing \"sites\"");
  for (const auto& p : j["sites"]) f.sites.push_back(point_from(p, "site"));
  f.s0_index = j.value("s0_index", 0);
  if (j.contains("order"))
    for (const auto& v : j["order"]) f.order.push_back(v.get<int>());
  return f;
}

SiteSetFile load_site_set(const std::string& path) { return parse_site_set_json(read_file(path)); }
void save_site_set(const SiteSetFile& s, const std::string& path) {
  write_file(path, site_set_to_json(s));
}

std::string solution_to_json(const RouteSolution& sol) {
  json j;
  j["walk"] = sol.uav_walk;
  j["rv_route"] = sol.rv_route;
  j["cost"] = sol.cost;
  if (sol.bound)
    j["bound"] = *sol.bound;
  else
    j["bound"] = nullptr;
  double gap = gap_percent(sol.cost, sol.bound);
  if (std::isnan(gap))
    j["gap"] = nullptr;
  else
    j["gap"] = gap;
  j["status"] = to_string(sol.status);
  j["producer"] = sol.producer;
  j["wall_time_s"] = sol.wall_time_s;
  j["cuts_added"] = sol.cuts_added;
  return j.dump(2) + "\n";
}

RouteSolution parse_solution_json(const std::string& text) {
  json j = json::parse(text);
  RouteSolution sol;
  if (!j.contains("walk") || !j["walk"].is_array())
    throw std::runtime_error("solution: missing \"walk\"");
  for (const auto& v : j["walk"]) sol.uav_walk.push_back(v.get<int>());
  if (j.contains("rv_route"))
    for (const auto& v : j["rv_route"]) sol.rv_route.push_back(v.get<int>());
  sol.cost = j.value("cost", 0.0);
  if (j.contains("bound") && j["bound"].is_number()) sol.bound = j["bound"].get<double>();
  if (j.contains("status")) {
    auto st = status_from_string(j["status"].get<std::string>());
    if (!st) throw std::runtime_error("solution: unknown status");
    sol.status = *st;
  }
  sol.producer = j.value("producer", std::string{});
  sol.wall_time_s = j.value("wall_time_s", 0.0);
  sol.cuts_added = j.value("cuts_added", 0);
  return sol;
}

RouteSolution load_solution(const std::string& path) {
  return parse_solution_json(read_file(path));
}
void save_solution(const RouteSolution& sol, const std::string& path) {
  write_file(path, solution_to_json(sol));
}

}  // namespace fcurp
