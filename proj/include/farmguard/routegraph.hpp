#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <queue>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "farmguard/errors.hpp"
#include "farmguard/geometry.hpp"
#include "farmguard/world.hpp"

namespace farmguard {

enum class NodeKind : std::uint8_t { waypoint, station };

struct NodeId {
  std::size_t index = 0;
  NodeKind kind = NodeKind::waypoint;

  friend bool operator==(const NodeId&, const NodeId&) = default;
};

/// Solution space for one drone: its valid waypoints plus its home station,
/// joined by every straight leg that keeps the map clearance.
///
/// Node indices are dense. Waypoint nodes come first in WaypointSet order and
/// the home station is always the last node.
class RouteGraph {
 public:
  std::size_t size() const { return nodes_.size(); }
  std::size_t waypoint_count() const { return nodes_.size() - 1; }
  std::size_t home() const { return nodes_.size() - 1; }
  std::size_t station_index() const { return station_index_; }

  NodeId id(std::size_t node) const {
    return {node, node == home() ? NodeKind::station : NodeKind::waypoint};
  }
  Point2D position(std::size_t node) const { return nodes_.at(node); }
  const std::vector<Point2D>& positions() const { return nodes_; }

  // WaypointSet index of a waypoint node.
  std::size_t waypoint_index(std::size_t node) const { return waypoint_of_.at(node); }

  bool has_edge(std::size_t i, std::size_t j) const { return length_[i * size() + j] >= 0.0; }
  // Cached leg length; only meaningful when has_edge(i, j).
  double edge_length(std::size_t i, std::size_t j) const { return length_[i * size() + j]; }

  std::size_t edge_count() const {
    std::size_t n = 0;
    for (std::size_t i = 0; i < size(); ++i) {
      for (std::size_t j = i + 1; j < size(); ++j) n += has_edge(i, j) ? 1 : 0;
    }
    return n;
  }

  std::vector<std::size_t> neighbors(std::size_t i) const {
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < size(); ++j) {
      if (has_edge(i, j)) out.push_back(j);
    }
    return out;
  }

 private:
  friend RouteGraph build_graph(const FarmMap&, const WaypointSet&, std::size_t,
                                std::optional<std::span<const std::size_t>>);
  friend RouteGraph complete_graph(std::span<const Point2D>, Point2D);

  std::vector<Point2D> nodes_;
  std::vector<std::size_t> waypoint_of_;
  std::vector<double> length_;
  std::size_t station_index_ = 0;
};

/// Whether a straight leg between two points keeps `clearance_m` from every obstacle.
inline bool leg_is_clear(const FarmMap& map, Point2D a, Point2D b) {
  const Segment2D seg(a, b);
  for (const Obstacle& o : map.obstacles) {
    if (min_clearance(seg, o) < map.clearance_m) return false;
  }
  return true;
}

/// Build the pruned graph for the drone homed at `home_station`. When `subset`
/// is given only those waypoints (WaypointSet indices) are considered; invalid
/// waypoints are always dropped.
///
/// Throws ConnectivityError when some included waypoint cannot be reached from home.
inline RouteGraph build_graph(const FarmMap& map, const WaypointSet& waypoints,
                              std::size_t home_station,
                              std::optional<std::span<const std::size_t>> subset = std::nullopt) {
  if (home_station >= map.stations.size()) {
    throw std::out_of_range("station index " + std::to_string(home_station) + " out of range");
  }
  RouteGraph g;
  g.station_index_ = home_station;
  const auto include = [&](std::size_t k) {
    if (!waypoints.valid_mask[k]) return;
    g.nodes_.push_back(waypoints.points[k]);
    g.waypoint_of_.push_back(k);
  };
  if (subset) {
    for (std::size_t k : *subset) include(k);
  } else {
    for (std::size_t k = 0; k < waypoints.size(); ++k) include(k);
  }
  const Point2D home = map.stations[home_station];
  for (Point2D p : g.nodes_) {
    if (p == home) {
      throw MapError("/stations/" + std::to_string(home_station),
                     "station coincides with a grid waypoint");
    }
  }
  g.nodes_.push_back(home);

  const std::size_t n = g.nodes_.size();
  g.length_.assign(n * n, -1.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (leg_is_clear(map, g.nodes_[i], g.nodes_[j])) {
        const double d = distance(g.nodes_[i], g.nodes_[j]);
        g.length_[i * n + j] = d;
        g.length_[j * n + i] = d;
      }
    }
  }

  std::vector<bool> seen(n, false);
  std::vector<std::size_t> stack{g.home()};
  seen[g.home()] = true;
  while (!stack.empty()) {
    const std::size_t i = stack.back();
    stack.pop_back();
    for (std::size_t j = 0; j < n; ++j) {
      if (!seen[j] && g.has_edge(i, j)) {
        seen[j] = true;
        stack.push_back(j);
      }
    }
  }
  std::vector<std::size_t> unreachable;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (!seen[i]) unreachable.push_back(g.waypoint_of_[i]);
  }
  if (!unreachable.empty()) {
    std::string msg = "station " + std::to_string(home_station) + " cannot reach waypoints";
    for (std::size_t k : unreachable) {
      const Point2D p = waypoints.points[k];
      msg += " #" + std::to_string(k) + "(" + std::to_string(p.x) + "," + std::to_string(p.y) + ")";
    }
    throw ConnectivityError(msg, std::move(unreachable));
  }
  return g;
}

/// Obstacle-free graph joining every pair of the given points; the home node
/// comes last. Waypoint node k maps to waypoint index k.
inline RouteGraph complete_graph(std::span<const Point2D> waypoints, Point2D home) {
  RouteGraph g;
  g.nodes_.assign(waypoints.begin(), waypoints.end());
  g.nodes_.push_back(home);
  for (std::size_t k = 0; k < waypoints.size(); ++k) g.waypoint_of_.push_back(k);
  const std::size_t n = g.nodes_.size();
  g.length_.assign(n * n, -1.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && g.nodes_[i] != g.nodes_[j]) g.length_[i * n + j] = distance(g.nodes_[i], g.nodes_[j]);
    }
  }
  return g;
}

/// Minimum-distance node path from `from` to `to` (both included), or nullopt
/// when `to` is unreachable. Equal-length alternatives resolve deterministically.
inline std::optional<std::vector<std::size_t>> shortest_detour(const RouteGraph& g,
                                                               std::size_t from, std::size_t to) {
  const std::size_t n = g.size();
  if (from >= n || to >= n) throw std::out_of_range("shortest_detour: node out of range");
  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<double> best(n, inf);
  std::vector<std::size_t> parent(n, n);
  using Entry = std::pair<double, std::size_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;
  best[from] = 0.0;
  open.emplace(0.0, from);
  while (!open.empty()) {
    const auto [d, i] = open.top();
    open.pop();
    if (d > best[i]) continue;
    if (i == to) break;
    for (std::size_t j = 0; j < n; ++j) {
      if (!g.has_edge(i, j)) continue;
      const double nd = d + g.edge_length(i, j);
      if (nd < best[j]) {
        best[j] = nd;
        parent[j] = i;
        open.emplace(nd, j);
      }
    }
  }
  if (best[to] == inf) return std::nullopt;
  std::vector<std::size_t> path{to};
  while (path.back() != from) path.push_back(parent[path.back()]);
  return std::vector<std::size_t>(path.rbegin(), path.rend());
}

}  // namespace farmguard
