#pragma once

#include <cmath>
#include <cstddef>
#include <fstream>
#include <initializer_list>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "farmguard/errors.hpp"
#include "farmguard/geometry.hpp"

namespace farmguard {

struct FarmMap {
  Rect perimeter;
  std::vector<Obstacle> obstacles;
  std::vector<Point2D> stations;
  double clearance_m = 10.0;
  double grid_spacing_m = 38.0;

  // Smallest clearance from p to any obstacle (infinity with no obstacles).
  double clearance_at(Point2D p) const {
    double best = std::numeric_limits<double>::infinity();
    for (const Obstacle& o : obstacles) best = std::min(best, point_clearance(p, o));
    return best;
  }
};

struct GridCoord {
  std::size_t row = 0;
  std::size_t col = 0;

  friend bool operator==(const GridCoord&, const GridCoord&) = default;
};

// Row-major grid of candidate waypoints; rows are indexed along y, columns along x.
struct WaypointSet {
  std::vector<Point2D> points;
  std::vector<bool> valid_mask;
  std::vector<GridCoord> row_col_index;
  std::size_t rows = 0;
  std::size_t cols = 0;
  // True when the perimeter is at least as wide (x) as it is tall (y).
  bool x_is_long_axis = true;

  std::size_t size() const { return points.size(); }

  std::vector<std::size_t> valid_indices() const {
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < points.size(); ++k) {
      if (valid_mask[k]) out.push_back(k);
    }
    return out;
  }

  std::size_t valid_count() const {
    std::size_t n = 0;
    for (bool v : valid_mask) n += v ? 1 : 0;
    return n;
  }
};

namespace detail {

inline void reject_unknown(const nlohmann::json& obj, const std::string& path,
                           std::initializer_list<std::string_view> allowed) {
  for (const auto& item : obj.items()) {
    bool known = false;
    for (std::string_view a : allowed) known = known || item.key() == a;
    if (!known) throw MapError(path + "/" + item.key(), "unknown field");
  }
}

inline const nlohmann::json& require(const nlohmann::json& obj, const std::string& path,
                                     const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) throw MapError(path + "/" + key, "missing field");
  return *it;
}

inline double read_number(const nlohmann::json& v, const std::string& path) {
  if (!v.is_number()) throw MapError(path, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw MapError(path, "expected a finite number");
  return d;
}

inline Point2D read_point(const nlohmann::json& v, const std::string& path) {
  if (!v.is_array() || v.size() != 2) throw MapError(path, "expected [x, y]");
  return {read_number(v[0], path + "/0"), read_number(v[1], path + "/1")};
}

inline nlohmann::json point_json(Point2D p) { return nlohmann::json::array({p.x, p.y}); }

}  // namespace detail

/// Parse and validate a map document. Throws MapError naming the failing field.
inline FarmMap load_map(const nlohmann::json& doc) {
  using detail::read_number;
  using detail::read_point;
  using detail::require;
  if (!doc.is_object()) throw MapError("", "map document must be a JSON object");
  detail::reject_unknown(doc, "",
                         {"perimeter", "obstacles", "stations", "clearance_m", "grid_spacing_m"});

  FarmMap map;
  const auto& per = require(doc, "", "perimeter");
  if (!per.is_object()) throw MapError("/perimeter", "expected an object");
  detail::reject_unknown(per, "/perimeter", {"min", "max"});
  map.perimeter.min = read_point(require(per, "/perimeter", "min"), "/perimeter/min");
  map.perimeter.max = read_point(require(per, "/perimeter", "max"), "/perimeter/max");
  if (!(map.perimeter.width() > 0.0) || !(map.perimeter.height() > 0.0)) {
    throw MapError("/perimeter", "perimeter must have positive area");
  }

  map.clearance_m = read_number(require(doc, "", "clearance_m"), "/clearance_m");
  if (map.clearance_m < 0.0) throw MapError("/clearance_m", "must be non-negative");
  map.grid_spacing_m = read_number(require(doc, "", "grid_spacing_m"), "/grid_spacing_m");
  if (!(map.grid_spacing_m > 0.0)) throw MapError("/grid_spacing_m", "must be positive");

  const auto& obstacles = require(doc, "", "obstacles");
  if (!obstacles.is_array()) throw MapError("/obstacles", "expected an array");
  for (std::size_t k = 0; k < obstacles.size(); ++k) {
    const std::string path = "/obstacles/" + std::to_string(k);
    const auto& o = obstacles[k];
    if (!o.is_object()) throw MapError(path, "expected an object");
    const auto& type = require(o, path, "type");
    if (type == "circle") {
      detail::reject_unknown(o, path, {"type", "center", "radius"});
      Circle c{read_point(require(o, path, "center"), path + "/center"),
               read_number(require(o, path, "radius"), path + "/radius")};
      if (!(c.radius > 0.0)) throw MapError(path + "/radius", "must be positive");
      map.obstacles.emplace_back(c);
    } else if (type == "rect") {
      detail::reject_unknown(o, path, {"type", "min", "max"});
      Rect r{read_point(require(o, path, "min"), path + "/min"),
             read_point(require(o, path, "max"), path + "/max")};
      if (!(r.min.x < r.max.x) || !(r.min.y < r.max.y)) {
        throw MapError(path, "min corner must be strictly below max corner");
      }
      map.obstacles.emplace_back(r);
    } else {
      throw MapError(path + "/type", "expected \"circle\" or \"rect\"");
    }
  }

  const auto& stations = require(doc, "", "stations");
  if (!stations.is_array()) throw MapError("/stations", "expected an array");
  if (stations.empty()) throw MapError("/stations", "at least one station is required");
  for (std::size_t k = 0; k < stations.size(); ++k) {
    const std::string path = "/stations/" + std::to_string(k);
    const Point2D s = read_point(stations[k], path);
    if (!map.perimeter.contains(s)) throw MapError(path, "station lies outside the perimeter");
    const double gap = map.clearance_at(s);
    if (gap < map.clearance_m || gap == 0.0) {
      throw MapError(path, "station violates clearance");
    }
    map.stations.push_back(s);
  }
  return map;
}

inline FarmMap parse_map(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw MapError("", std::string("malformed JSON: ") + e.what());
  }
  return load_map(doc);
}

inline FarmMap load_map_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open map file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_map(buf.str());
}

inline nlohmann::json to_json(const FarmMap& map) {
  nlohmann::json obstacles = nlohmann::json::array();
  for (const Obstacle& o : map.obstacles) {
    if (const auto* c = std::get_if<Circle>(&o.shape())) {
      obstacles.push_back(
          {{"type", "circle"}, {"center", detail::point_json(c->center)}, {"radius", c->radius}});
    } else {
      const Rect& r = std::get<Rect>(o.shape());
      obstacles.push_back(
          {{"type", "rect"}, {"min", detail::point_json(r.min)}, {"max", detail::point_json(r.max)}});
    }
  }
  nlohmann::json stations = nlohmann::json::array();
  for (Point2D s : map.stations) stations.push_back(detail::point_json(s));
  return {{"perimeter",
           {{"min", detail::point_json(map.perimeter.min)},
            {"max", detail::point_json(map.perimeter.max)}}},
          {"obstacles", obstacles},
          {"stations", stations},
          {"clearance_m", map.clearance_m},
          {"grid_spacing_m", map.grid_spacing_m}};
}

/// Lay the waypoint grid over the perimeter (boundary points included) and
/// flag the ones that sit closer than the clearance to an obstacle.
inline WaypointSet generate_waypoints(const FarmMap& map) {
  // Tolerates widths that are an exact multiple of the spacing up to rounding.
  const auto count = [&](double extent) {
    return static_cast<std::size_t>(std::floor(extent / map.grid_spacing_m + 1e-9)) + 1;
  };
  WaypointSet ws;
  ws.cols = count(map.perimeter.width());
  ws.rows = count(map.perimeter.height());
  ws.x_is_long_axis = map.perimeter.width() >= map.perimeter.height();
  ws.points.reserve(ws.rows * ws.cols);
  for (std::size_t r = 0; r < ws.rows; ++r) {
    for (std::size_t c = 0; c < ws.cols; ++c) {
      const Point2D p{map.perimeter.min.x + static_cast<double>(c) * map.grid_spacing_m,
                      map.perimeter.min.y + static_cast<double>(r) * map.grid_spacing_m};
      ws.points.push_back(p);
      ws.valid_mask.push_back(map.clearance_at(p) >= map.clearance_m);
      ws.row_col_index.push_back({r, c});
    }
  }
  return ws;
}

}  // namespace farmguard
