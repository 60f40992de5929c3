#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "farmguard/geometry.hpp"
#include "farmguard/routegraph.hpp"

namespace farmguard {

/// Flight energy per meter of straight travel and per degree of heading change.
/// Defaults are for a small quadrotor flying at cruise speed.
struct EnergyModel {
  double lambda_kj_per_m = 0.1164;
  double gamma_kj_per_deg = 0.0173;

  void validate() const {
    if (!(lambda_kj_per_m > 0.0)) throw std::invalid_argument("lambda must be positive");
    if (!(gamma_kj_per_deg > 0.0)) throw std::invalid_argument("gamma must be positive");
  }

  double cost(double distance_m, double turn_deg) const {
    return lambda_kj_per_m * distance_m + gamma_kj_per_deg * turn_deg;
  }
};

enum class TourFailure { none, dead_end, no_closing_edge, incomplete };

inline std::string_view to_string(TourFailure f) {
  switch (f) {
    case TourFailure::none: return "none";
    case TourFailure::dead_end: return "dead_end";
    case TourFailure::no_closing_edge: return "no_closing_edge";
    case TourFailure::incomplete: return "incomplete";
  }
  return "unknown";
}

// How strictly a tour must cover the waypoints to count as valid.
enum class Coverage { exactly_once, at_least_once };

struct Tour {
  std::vector<std::size_t> nodes;
  double total_distance_m = 0.0;
  double total_turn_deg = 0.0;
  double cost_kj = 0.0;
  bool is_valid = false;
  TourFailure failure = TourFailure::incomplete;
};

struct LegTotals {
  double distance_m = 0.0;
  double turn_deg = 0.0;
};

/// Distance and turning summed along a polyline. Departure heading is free,
/// so only interior vertices are charged a turn.
inline LegTotals leg_totals(std::span<const Point2D> path) {
  LegTotals t;
  for (std::size_t k = 1; k < path.size(); ++k) t.distance_m += distance(path[k - 1], path[k]);
  for (std::size_t k = 1; k + 1 < path.size(); ++k) {
    t.turn_deg += turn_angle_deg(path[k - 1], path[k], path[k + 1]);
  }
  return t;
}

class NotAdjacentError : public std::invalid_argument {
 public:
  NotAdjacentError(std::size_t from, std::size_t to)
      : std::invalid_argument("nodes " + std::to_string(from) + " and " + std::to_string(to) +
                              " are not joined by an edge"),
        from_(from),
        to_(to) {}

  std::size_t from() const noexcept { return from_; }
  std::size_t to() const noexcept { return to_; }

 private:
  std::size_t from_;
  std::size_t to_;
};

/// Check the validity rule for a node sequence: closed at home and covering
/// every waypoint (exactly once, or at least once for detouring planners).
inline bool covers_all(const RouteGraph& g, std::span<const std::size_t> nodes, Coverage rule) {
  if (nodes.size() < 2 || nodes.front() != g.home() || nodes.back() != g.home()) return false;
  std::vector<std::size_t> visits(g.size(), 0);
  for (std::size_t k = 1; k + 1 < nodes.size(); ++k) {
    // Detours may pass over the station; a strict tour never does.
    if (nodes[k] == g.home() && rule == Coverage::exactly_once) return false;
    ++visits[nodes[k]];
  }
  for (std::size_t i = 0; i < g.waypoint_count(); ++i) {
    if (visits[i] == 0) return false;
    if (rule == Coverage::exactly_once && visits[i] != 1) return false;
  }
  return true;
}

/// Energy of flying `nodes` in order over `g`. Throws NotAdjacentError if a
/// consecutive pair is not an edge.
inline Tour tour_cost(const RouteGraph& g, const EnergyModel& m, std::span<const std::size_t> nodes,
                      Coverage rule = Coverage::exactly_once) {
  if (nodes.size() < 2) throw std::invalid_argument("tour_cost needs at least two nodes");
  std::vector<Point2D> path;
  path.reserve(nodes.size());
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    if (k > 0 && !g.has_edge(nodes[k - 1], nodes[k])) throw NotAdjacentError(nodes[k - 1], nodes[k]);
    path.push_back(g.position(nodes[k]));
  }
  const LegTotals totals = leg_totals(path);
  Tour t;
  t.nodes.assign(nodes.begin(), nodes.end());
  t.total_distance_m = totals.distance_m;
  t.total_turn_deg = totals.turn_deg;
  t.cost_kj = m.cost(totals.distance_m, totals.turn_deg);
  t.is_valid = covers_all(g, nodes, rule);
  t.failure = t.is_valid ? TourFailure::none : TourFailure::incomplete;
  return t;
}

/// Desirability of flying i -> j having arrived at i from `prev`: the inverse
/// of that leg's energy. Without a previous node no turn is charged.
inline double heuristic(const EnergyModel& m, std::optional<Point2D> prev, Point2D i, Point2D j,
                        double d_ij) {
  const double theta = prev ? turn_angle_deg(*prev, i, j) : 0.0;
  return 1.0 / m.cost(d_ij, theta);
}

}  // namespace farmguard
