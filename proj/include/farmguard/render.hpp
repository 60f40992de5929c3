#pragma once

#include <cmath>
#include <cstddef>
#include <cstdio>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "farmguard/energy.hpp"
#include "farmguard/fleet.hpp"
#include "farmguard/routegraph.hpp"
#include "farmguard/world.hpp"

namespace farmguard {

inline constexpr int kPathSchemaVersion = 1;

// A flown path ready for drawing: vertices in flight order.
struct RenderTour {
  std::vector<Point2D> vertices;
};

inline RenderTour render_tour(const Tour& tour, const RouteGraph& g) {
  RenderTour r;
  for (std::size_t n : tour.nodes) r.vertices.push_back(g.position(n));
  return r;
}

inline std::vector<RenderTour> render_tours(const FleetPlan& plan) {
  std::vector<RenderTour> out;
  for (const DronePlan& d : plan.drones) out.push_back(render_tour(d.tour, d.graph));
  return out;
}

namespace style {

inline constexpr const char* kPerimeter = "#e67e22";
inline constexpr const char* kObstacle = "#2e86de";
inline constexpr const char* kStation = "#f39c12";
inline constexpr const char* kWaypoint = "#222222";
inline constexpr const char* kInvalid = "#bbbbbb";
inline constexpr const char* kTours[] = {"#c0392b", "#27ae60", "#8e44ad", "#16a085"};
inline constexpr const char* kDash[] = {"none", "6,3", "2,2", "8,2,2,2"};
inline constexpr double kMargin = 12.0;

}  // namespace style

namespace detail {

// Fixed-point with trailing zeros trimmed; stable across platforms.
inline std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  std::string s(buf);
  s.erase(s.find_last_not_of('0') + 1);
  if (s.back() == '.') s.pop_back();
  if (s == "-0") s = "0";
  return s;
}

inline std::string star_points(Point2D c, double outer, double inner) {
  std::string out;
  for (int k = 0; k < 10; ++k) {
    const double r = k % 2 == 0 ? outer : inner;
    const double a = std::numbers::pi / 2.0 + k * std::numbers::pi / 5.0;
    if (k) out += ' ';
    out += num(c.x + r * std::cos(a)) + "," + num(c.y + r * std::sin(a));
  }
  return out;
}

}  // namespace detail

/// SVG 1.1 drawing of the farm and any number of tours. One user unit is one
/// meter; drawing happens inside a y-flipped group so north is up and every
/// coordinate in the document is a map coordinate.
inline std::string render_svg(const FarmMap& map, const WaypointSet& ws,
                              std::span<const RenderTour> tours) {
  using detail::num;
  const Rect& per = map.perimeter;
  const double m = style::kMargin;
  const double w = per.width() + 2 * m;
  const double h = per.height() + 2 * m;
  std::string s;
  s += "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n";
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + num(w * 3) +
       "\" height=\"" + num(h * 3) + "\" viewBox=\"" + num(per.min.x - m) + " " +
       num(-(per.max.y + m)) + " " + num(w) + " " + num(h) + "\">\n";
  s += "<defs>\n";
  for (std::size_t k = 0; k < tours.size(); ++k) {
    const char* color = style::kTours[k % std::size(style::kTours)];
    s += "  <marker id=\"arrow" + std::to_string(k) +
         "\" viewBox=\"0 0 10 10\" refX=\"5\" refY=\"5\" markerWidth=\"4\" markerHeight=\"4\" "
         "orient=\"auto\"><path d=\"M0,0 L10,5 L0,10 z\" fill=\"" +
         color + "\"/></marker>\n";
  }
  s += "</defs>\n";
  s += "<g transform=\"scale(1,-1)\">\n";
  s += "  <rect id=\"perimeter\" x=\"" + num(per.min.x) + "\" y=\"" + num(per.min.y) +
       "\" width=\"" + num(per.width()) + "\" height=\"" + num(per.height()) +
       "\" fill=\"none\" stroke=\"" + style::kPerimeter + "\" stroke-width=\"1.5\"/>\n";

  for (const Obstacle& o : map.obstacles) {
    if (const auto* c = std::get_if<Circle>(&o.shape())) {
      s += "  <circle class=\"obstacle\" cx=\"" + num(c->center.x) + "\" cy=\"" + num(c->center.y) +
           "\" r=\"" + num(c->radius) + "\" fill=\"" + style::kObstacle + "\"/>\n";
    } else {
      const Rect& r = std::get<Rect>(o.shape());
      s += "  <rect class=\"obstacle\" x=\"" + num(r.min.x) + "\" y=\"" + num(r.min.y) +
           "\" width=\"" + num(r.width()) + "\" height=\"" + num(r.height()) + "\" fill=\"" +
           style::kObstacle + "\"/>\n";
    }
  }

  for (std::size_t k = 0; k < ws.size(); ++k) {
    const Point2D p = ws.points[k];
    s += "  <circle class=\"" + std::string(ws.valid_mask[k] ? "waypoint" : "invalid") +
         "\" cx=\"" + num(p.x) + "\" cy=\"" + num(p.y) + "\" r=\"1.6\" fill=\"" +
         (ws.valid_mask[k] ? style::kWaypoint : style::kInvalid) + "\"/>\n";
  }

  for (std::size_t k = 0; k < tours.size(); ++k) {
    std::string pts;
    for (const Point2D& p : tours[k].vertices) {
      if (!pts.empty()) pts += ' ';
      pts += num(p.x) + "," + num(p.y);
    }
    const std::string marker = "url(#arrow" + std::to_string(k) + ")";
    s += "  <polyline class=\"tour\" id=\"tour" + std::to_string(k) + "\" points=\"" + pts +
         "\" fill=\"none\" stroke=\"" + style::kTours[k % std::size(style::kTours)] +
         "\" stroke-width=\"1.2\" stroke-dasharray=\"" + style::kDash[k % std::size(style::kDash)] +
         "\" marker-mid=\"" + marker + "\" marker-end=\"" + marker + "\"/>\n";
  }

  for (const Point2D& st : map.stations) {
    s += "  <polygon class=\"station\" points=\"" + detail::star_points(st, 6.0, 2.5) +
         "\" fill=\"" + style::kStation + "\" stroke=\"#000000\" stroke-width=\"0.4\"/>\n";
  }
  s += "</g>\n</svg>\n";
  return s;
}

inline std::string render_svg(const FarmMap& map, const WaypointSet& ws, const FleetPlan& plan) {
  const auto tours = render_tours(plan);
  return render_svg(map, ws, tours);
}

/// Flight-controller hand-off document for one tour.
inline nlohmann::json export_path(const Tour& tour, const RouteGraph& g, double altitude_m) {
  nlohmann::json pts = nlohmann::json::array();
  for (std::size_t n : tour.nodes) {
    if (n >= g.size()) throw std::out_of_range("tour node " + std::to_string(n) + " not in graph");
    const Point2D p = g.position(n);
    pts.push_back({{"x", p.x}, {"y", p.y}, {"altitude_m", altitude_m}});
  }
  return {{"schema", kPathSchemaVersion},
          {"altitude_m", altitude_m},
          {"valid", tour.is_valid},
          {"cost_kj", tour.cost_kj},
          {"distance_m", tour.total_distance_m},
          {"turn_deg", tour.total_turn_deg},
          {"waypoints", pts}};
}

inline nlohmann::json export_fleet(const FleetPlan& plan) {
  nlohmann::json drones = nlohmann::json::array();
  for (const DronePlan& d : plan.drones) {
    nlohmann::json j = export_path(d.tour, d.graph, d.altitude_m);
    j["station"] = d.station;
    drones.push_back(std::move(j));
  }
  return {{"schema", kPathSchemaVersion},
          {"valid", plan.valid()},
          {"cost_kj", plan.cost_kj()},
          {"distance_m", plan.distance_m()},
          {"turn_deg", plan.turn_deg()},
          {"drones", drones}};
}

struct ImportedPath {
  std::vector<Point2D> points;
  double altitude_m = 0.0;
  double cost_kj = 0.0;
};

inline ImportedPath import_path(const nlohmann::json& doc) {
  if (doc.at("schema").get<int>() != kPathSchemaVersion) {
    throw std::runtime_error("unsupported path schema");
  }
  ImportedPath out;
  out.altitude_m = doc.at("altitude_m").get<double>();
  out.cost_kj = doc.at("cost_kj").get<double>();
  for (const auto& w : doc.at("waypoints")) {
    out.points.push_back({w.at("x").get<double>(), w.at("y").get<double>()});
  }
  return out;
}

/// Energy of an imported path under `m`.
inline double path_cost(const ImportedPath& path, const EnergyModel& m) {
  const LegTotals t = leg_totals(path.points);
  return m.cost(t.distance_m, t.turn_deg);
}

}  // namespace farmguard
