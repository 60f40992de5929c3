#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "farmguard/energy.hpp"
#include "farmguard/errors.hpp"
#include "farmguard/routegraph.hpp"
#include "farmguard/world.hpp"

namespace farmguard {

namespace detail {

// Waypoint nodes of g grouped into sweep lines running along the long axis,
// ordered by their position across it and, within a line, along it.
inline std::vector<std::vector<std::size_t>> sweep_lines(const RouteGraph& g,
                                                         const WaypointSet& ws) {
  std::map<std::size_t, std::vector<std::pair<std::size_t, std::size_t>>> lines;
  for (std::size_t node = 0; node < g.waypoint_count(); ++node) {
    const GridCoord rc = ws.row_col_index[g.waypoint_index(node)];
    const std::size_t across = ws.x_is_long_axis ? rc.row : rc.col;
    const std::size_t along = ws.x_is_long_axis ? rc.col : rc.row;
    lines[across].emplace_back(along, node);
  }
  std::vector<std::vector<std::size_t>> out;
  for (auto& [across, line] : lines) {
    std::sort(line.begin(), line.end());
    std::vector<std::size_t> nodes;
    for (const auto& [along, node] : line) nodes.push_back(node);
    out.push_back(std::move(nodes));
  }
  return out;
}

}  // namespace detail

/// Back-and-forth sweep: lines along the long axis, alternating direction,
/// starting from whichever sweep corner is nearest home. Legs pruned by
/// obstacles are replaced by shortest detours, which may pass through
/// already-visited waypoints; the tour is valid when it is closed at home and
/// covers every waypoint at least once.
inline Tour plan_back_and_forth(const RouteGraph& g, const EnergyModel& m, const WaypointSet& ws) {
  auto lines = detail::sweep_lines(g, ws);
  const std::size_t home = g.home();
  if (lines.empty()) {
    throw PlannerError("no valid waypoints to cover");
  }

  // Candidate starts: first or last line, entered from either end. Strict
  // comparison keeps the earliest candidate on ties.
  const Point2D home_pos = g.position(home);
  bool reverse_lines = false;
  bool first_reversed = false;
  double best = distance(home_pos, g.position(lines.front().front()));
  const auto consider = [&](bool rev_lines, bool rev_first) {
    const auto& line = rev_lines ? lines.back() : lines.front();
    const std::size_t entry = rev_first ? line.back() : line.front();
    const double d = distance(home_pos, g.position(entry));
    if (d < best) {
      best = d;
      reverse_lines = rev_lines;
      first_reversed = rev_first;
    }
  };
  consider(false, true);
  consider(true, false);
  consider(true, true);
  if (reverse_lines) std::reverse(lines.begin(), lines.end());

  std::vector<std::size_t> order;
  for (std::size_t k = 0; k < lines.size(); ++k) {
    auto line = lines[k];
    if ((k % 2 == 1) != first_reversed) std::reverse(line.begin(), line.end());
    order.insert(order.end(), line.begin(), line.end());
  }
  order.push_back(home);

  std::vector<std::size_t> nodes{home};
  for (std::size_t next : order) {
    const std::size_t cur = nodes.back();
    if (g.has_edge(cur, next)) {
      nodes.push_back(next);
      continue;
    }
    const auto detour = shortest_detour(g, cur, next);
    if (!detour) {
      throw ConnectivityError("no route from node " + std::to_string(cur) + " to node " +
                                  std::to_string(next),
                              {});
    }
    nodes.insert(nodes.end(), detour->begin() + 1, detour->end());
  }
  return tour_cost(g, m, nodes, Coverage::at_least_once);
}

}  // namespace farmguard
