#include "fcurp/render.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace fcurp {
namespace {

constexpr double kPi = 3.14159265358979323846;

std::string px(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

void check_color(const std::string& c, const char* what) {
  if (c.empty() || c.find('"') != std::string::npos)
    throw std::invalid_argument(std::string(what) + " color is not a valid SVG color");
}

void check_style(const RenderStyle& st) {
  if (!(st.scale > 0)) throw std::invalid_argument("scale must be positive");
  if (st.margin < 0) throw std::invalid_argument("margin must be non-negative");
  if (!(st.road_width > 0) || !(st.uav_width > 0) || !(st.rv_width > 0) ||
      !(st.target_size > 0) || !(st.site_size > 0))
    throw std::invalid_argument("stroke widths and marker sizes must be positive");
  check_color(st.road_color, "road");
  check_color(st.uav_color, "uav");
  check_color(st.rv_color, "rv");
  check_color(st.target_color, "target");
  check_color(st.site_color, "site");
}

std::string star_path(double cx, double cy, double r) {
  std::string d;
  for (int k = 0; k < 10; ++k) {
    double radius = (k % 2 == 0) ? r : 0.4 * r;
    double ang = -kPi / 2 + k * kPi / 5;
    d += (k == 0 ? "M" : " L");
    d += px(cx + radius * std::cos(ang)) + ' ' + px(cy + radius * std::sin(ang));
  }
  d += " Z";
  return d;
}

}  // namespace

std::string render_svg(const Instance& in, const SiteSetFile* sites, const RouteSolution* sol,
                       const RenderStyle& style) {
  check_style(style);
  if (sol && !sites)
    throw std::invalid_argument("rendering a solution requires the site set it refers to");

  auto X = [&](double x) { return style.margin + x * style.scale; };
  auto Y = [&](double y) { return style.margin + (in.env_height - y) * style.scale; };
  auto at = [&](const Point& p) { return px(X(p.x)) + ',' + px(Y(p.y)); };

  double w = 2 * style.margin + in.env_width * style.scale;
  double h = 2 * style.margin + in.env_height * style.scale;
  std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + px(w) +
                    "\" height=\"" + px(h) + "\" viewBox=\"0 0 " + px(w) + ' ' + px(h) + "\">\n";

  svg += "<g id=\"frame\"><rect x=\"" + px(style.margin) + "\" y=\"" + px(style.margin) +
         "\" width=\"" + px(in.env_width * style.scale) + "\" height=\"" +
         px(in.env_height * style.scale) + "\" fill=\"#ffffff\" stroke=\"#444444\"/></g>\n";

  svg += "<g id=\"roads\" fill=\"none\" stroke=\"" + style.road_color + "\" stroke-width=\"" +
         px(style.road_width) + "\">\n";
  for (const auto& line : in.road.polylines) {
    svg += "<polyline points=\"";
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (i) svg += ' ';
      svg += at(line[i]);
    }
    svg += "\"/>\n";
  }
  svg += "</g>\n";

  svg += "<g id=\"targets\" fill=\"" + style.target_color + "\">\n";
  for (const Point& t : in.targets)
    svg += "<path class=\"target\" d=\"" + star_path(X(t.x), Y(t.y), style.target_size) + "\"/>\n";
  svg += "</g>\n";

  if (sites) {
    svg += "<g id=\"sites\" fill=\"" + style.site_color + "\">\n";
    for (const Point& s : sites->sites)
      svg += "<rect class=\"site\" x=\"" + px(X(s.x) - style.site_size / 2) + "\" y=\"" +
             px(Y(s.y) - style.site_size / 2) + "\" width=\"" + px(style.site_size) +
             "\" height=\"" + px(style.site_size) + "\"/>\n";
    svg += "</g>\n";
  }

  if (sol) {
    int m = static_cast<int>(in.targets.size());
    auto vertex = [&](int id) -> Point {
      if (id >= 0 && id < m) return in.targets[id];
      int s = id - m;
      if (s >= 0 && s < static_cast<int>(sites->sites.size())) return sites->sites[s];
      throw std::invalid_argument("walk vertex " + std::to_string(id) +
                                  " is outside the instance and site set");
    };

    if (sol->rv_route.size() >= 2) {
      // The RV drives the road, so each hop is drawn along the road's
      // shortest path, not as a straight line.
      DiscretizedRoad dr = discretize_road(in);
      std::vector<Point> trace;
      for (std::size_t i = 0; i < sol->rv_route.size(); ++i) {
        int stop = sol->rv_route[i];
        if (stop < 0 || stop >= static_cast<int>(sites->order.size()))
          throw std::invalid_argument("rv stop " + std::to_string(stop) +
                                      " is outside the site set");
        if (i == 0) {
          trace.push_back(dr.sites[sites->order[stop]]);
          continue;
        }
        std::vector<int> hop =
            dr.shortest_path(sites->order[sol->rv_route[i - 1]], sites->order[stop]);
        for (std::size_t k = 1; k < hop.size(); ++k) trace.push_back(dr.sites[hop[k]]);
      }
      svg += "<g id=\"rv-route\">\n<polyline class=\"rv\" fill=\"none\" stroke=\"" +
             style.rv_color + "\" stroke-width=\"" + px(style.rv_width) +
             "\" stroke-dasharray=\"6 4\" points=\"";
      for (std::size_t i = 0; i < trace.size(); ++i) {
        if (i) svg += ' ';
        svg += at(trace[i]);
      }
      svg += "\"/>\n</g>\n";
    }

    svg += "<g id=\"uav-route\" fill=\"none\" stroke=\"" + style.uav_color +
           "\" stroke-width=\"" + px(style.uav_width) + "\">\n";
    for (std::size_t i = 0; i + 1 < sol->uav_walk.size(); ++i) {
      Point a = vertex(sol->uav_walk[i]);
      Point b = vertex(sol->uav_walk[i + 1]);
      svg += "<path class=\"leg\" d=\"M " + px(X(a.x)) + ' ' + px(Y(a.y)) + " L " + px(X(b.x)) +
             ' ' + px(Y(b.y)) + "\"/>\n";
    }
    svg += "</g>\n";
  }

  svg += "</svg>\n";
  return svg;
}

}  // namespace fcurp
