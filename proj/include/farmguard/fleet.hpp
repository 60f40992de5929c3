#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "farmguard/aco.hpp"
#include "farmguard/baseline.hpp"
#include "farmguard/energy.hpp"
#include "farmguard/errors.hpp"
#include "farmguard/routegraph.hpp"
#include "farmguard/world.hpp"

namespace farmguard {

enum class PlannerKind { back_and_forth, as, mmas };

inline std::string_view to_string(PlannerKind k) {
  switch (k) {
    case PlannerKind::back_and_forth: return "back-and-forth";
    case PlannerKind::as: return "AS";
    case PlannerKind::mmas: return "MMAS";
  }
  return "unknown";
}

inline std::optional<PlannerKind> planner_from_string(std::string_view s) {
  if (s == "back-and-forth" || s == "baseline" || s == "bf") return PlannerKind::back_and_forth;
  if (s == "AS" || s == "as") return PlannerKind::as;
  if (s == "MMAS" || s == "mmas") return PlannerKind::mmas;
  return std::nullopt;
}

struct PlannerConfig {
  PlannerKind kind = PlannerKind::as;
  EnergyModel energy;
  // `variant` is overridden by `kind`.
  AcoParams aco;
};

inline constexpr double kLowAltitudeM = 20.0;
inline constexpr double kHighAltitudeM = 30.0;

struct DronePlan {
  std::size_t station = 0;
  std::vector<std::size_t> waypoints;  // WaypointSet indices
  double altitude_m = kLowAltitudeM;
  RouteGraph graph;
  Tour tour;
};

struct FleetPlan {
  std::vector<DronePlan> drones;

  bool valid() const {
    for (const DronePlan& d : drones) {
      if (!d.tour.is_valid) return false;
    }
    return !drones.empty();
  }
  double cost_kj() const {
    double c = 0.0;
    for (const DronePlan& d : drones) c += d.tour.cost_kj;
    return c;
  }
  double distance_m() const {
    double c = 0.0;
    for (const DronePlan& d : drones) c += d.tour.total_distance_m;
    return c;
  }
  double turn_deg() const {
    double c = 0.0;
    for (const DronePlan& d : drones) c += d.tour.total_turn_deg;
    return c;
  }
};

/// Split the valid waypoints between drones. Two drones get a straight cut
/// across the long axis of the perimeter; drone k flies from station k.
///
/// The drone whose station lies further toward the low end of the long axis
/// takes the low side (drone 0 on ties). With an odd number of grid lines the
/// middle line goes to the drone whose station is closer to its own side.
/// Each subset is in ascending WaypointSet order.
inline std::vector<std::vector<std::size_t>> partition(const FarmMap& map, const WaypointSet& ws,
                                                       std::size_t n_drones) {
  if (n_drones < 1 || n_drones > 2) throw std::invalid_argument("only one or two drones are supported");
  if (n_drones > map.stations.size()) throw PlannerError("more drones than stations");
  if (n_drones == 1) return {ws.valid_indices()};

  const auto along = [&](std::size_t k) {
    return ws.x_is_long_axis ? ws.row_col_index[k].col : ws.row_col_index[k].row;
  };
  const auto axis = [&](Point2D p) { return ws.x_is_long_axis ? p.x : p.y; };

  std::map<std::size_t, std::vector<std::size_t>> lines;
  for (std::size_t k : ws.valid_indices()) lines[along(k)].push_back(k);
  std::vector<std::vector<std::size_t>> ordered;
  for (auto& [pos, members] : lines) ordered.push_back(std::move(members));

  const std::size_t low_drone = axis(map.stations[1]) < axis(map.stations[0]) ? 1 : 0;
  const std::size_t high_drone = 1 - low_drone;
  const std::size_t half = ordered.size() / 2;
  const bool odd = ordered.size() % 2 == 1;

  std::vector<std::vector<std::size_t>> sides(2);
  for (std::size_t c = 0; c < half; ++c) {
    sides[low_drone].insert(sides[low_drone].end(), ordered[c].begin(), ordered[c].end());
  }
  for (std::size_t c = half + (odd ? 1 : 0); c < ordered.size(); ++c) {
    sides[high_drone].insert(sides[high_drone].end(), ordered[c].begin(), ordered[c].end());
  }
  if (odd) {
    const auto gap = [&](std::size_t drone) {
      const auto& side = sides[drone];
      if (side.empty()) return 0.0;
      Point2D c{};
      for (std::size_t k : side) c = c + ws.points[k];
      c = (1.0 / static_cast<double>(side.size())) * c;
      return distance(map.stations[drone], c);
    };
    const std::size_t taker = gap(high_drone) < gap(low_drone) ? high_drone : low_drone;
    auto& middle = ordered[half];
    sides[taker].insert(sides[taker].end(), middle.begin(), middle.end());
  }
  for (auto& side : sides) std::sort(side.begin(), side.end());
  return sides;
}

/// Whether any leg of one drone's tour crosses or touches any leg of the other's.
inline bool tours_cross(const DronePlan& a, const DronePlan& b) {
  for (std::size_t i = 1; i < a.tour.nodes.size(); ++i) {
    const Segment2D s(a.graph.position(a.tour.nodes[i - 1]), a.graph.position(a.tour.nodes[i]));
    for (std::size_t j = 1; j < b.tour.nodes.size(); ++j) {
      const Segment2D t(b.graph.position(b.tour.nodes[j - 1]), b.graph.position(b.tour.nodes[j]));
      if (segments_intersect(s, t)) return true;
    }
  }
  return false;
}

// Per-drone seed stream derived from the configured seed.
inline std::uint64_t drone_seed(std::uint64_t seed, std::size_t drone) {
  return seed + static_cast<std::uint64_t>(drone) * 0x9E3779B97F4A7C15ULL;
}

/// Run the configured planner for one drone over an already built graph.
inline Tour plan_tour(const RouteGraph& g, const WaypointSet& ws, const PlannerConfig& cfg,
                      std::uint64_t seed) {
  if (cfg.kind == PlannerKind::back_and_forth) return plan_back_and_forth(g, cfg.energy, ws);
  AcoParams p = cfg.aco;
  p.variant = cfg.kind == PlannerKind::as ? AcoVariant::as : AcoVariant::mmas;
  p.seed = seed;
  return solve(g, cfg.energy, p).best_tour;
}

/// Partition the farm, plan every drone from its own station and separate
/// altitudes when the drones' paths cross in plan view.
inline FleetPlan plan_fleet(const FarmMap& map, const WaypointSet& ws, const PlannerConfig& cfg,
                            std::size_t n_drones) {
  const auto subsets = partition(map, ws, n_drones);
  FleetPlan plan;
  for (std::size_t k = 0; k < subsets.size(); ++k) {
    DronePlan d;
    d.station = k;
    d.waypoints = subsets[k];
    d.graph = build_graph(map, ws, k, std::span<const std::size_t>(d.waypoints));
    d.tour = plan_tour(d.graph, ws, cfg, drone_seed(cfg.aco.seed, k));
    plan.drones.push_back(std::move(d));
  }
  if (plan.drones.size() == 2 && tours_cross(plan.drones[0], plan.drones[1])) {
    plan.drones[1].altitude_m = kHighAltitudeM;
  }
  return plan;
}

}  // namespace farmguard
