#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "farmguard/baseline.hpp"
#include "oracles.hpp"

using namespace farmguard;

namespace {

FarmMap open_field(double width, double height, Point2D station) {
  FarmMap map;
  map.perimeter = {{0, 0}, {width, height}};
  map.stations = {station};
  return map;
}

// Cost of a polyline summed leg by leg with the turn taken from the dot product.
double polyline_cost(const std::vector<Point2D>& pts) {
  double d = 0.0;
  double turn = 0.0;
  for (std::size_t k = 1; k < pts.size(); ++k) {
    d += std::hypot(pts[k].x - pts[k - 1].x, pts[k].y - pts[k - 1].y);
    if (k + 1 < pts.size()) {
      const double ux = pts[k].x - pts[k - 1].x, uy = pts[k].y - pts[k - 1].y;
      const double vx = pts[k + 1].x - pts[k].x, vy = pts[k + 1].y - pts[k].y;
      const double c = (ux * vx + uy * vy) / (std::hypot(ux, uy) * std::hypot(vx, vy));
      turn += std::acos(std::clamp(c, -1.0, 1.0)) * 180.0 / std::acos(-1.0);
    }
  }
  return 0.1164 * d + 0.0173 * turn;
}

}  // namespace

TEST(BackAndForth, SerpentineOnThreeByThree) {
  const FarmMap map = open_field(76, 76, {10, 5});
  const WaypointSet ws = generate_waypoints(map);
  const RouteGraph g = build_graph(map, ws, 0);
  const Tour t = plan_back_and_forth(g, EnergyModel{}, ws);
  const std::size_t h = g.home();
  EXPECT_EQ(t.nodes, (std::vector<std::size_t>{h, 0, 1, 2, 5, 4, 3, 6, 7, 8, h}));
  EXPECT_TRUE(t.is_valid);
  std::vector<Point2D> pts;
  for (std::size_t n : t.nodes) pts.push_back(g.position(n));
  EXPECT_NEAR(t.cost_kj, polyline_cost(pts), 1e-9);
}

TEST(BackAndForth, StartsFromCornerNearestHome) {
  const FarmMap map = open_field(76, 76, {70, 70});
  const WaypointSet ws = generate_waypoints(map);
  const RouteGraph g = build_graph(map, ws, 0);
  const Tour t = plan_back_and_forth(g, EnergyModel{}, ws);
  ASSERT_GE(t.nodes.size(), 3u);
  EXPECT_EQ(t.nodes[1], 8u);
  EXPECT_TRUE(t.is_valid);
}

TEST(BackAndForth, TallFieldSweepsAlongY) {
  const FarmMap map = open_field(38, 114, {10, 5});
  const WaypointSet ws = generate_waypoints(map);
  ASSERT_FALSE(ws.x_is_long_axis);
  const RouteGraph g = build_graph(map, ws, 0);
  const Tour t = plan_back_and_forth(g, EnergyModel{}, ws);
  const std::size_t h = g.home();
  // Columns of four: (0,y) up, then (38,y) down.
  EXPECT_EQ(t.nodes, (std::vector<std::size_t>{h, 0, 2, 4, 6, 7, 5, 3, 1, h}));
}

TEST(BackAndForth, SingleWaypointOutAndBack) {
  const FarmMap map = open_field(37, 37, {20, 20});
  const WaypointSet ws = generate_waypoints(map);
  const RouteGraph g = build_graph(map, ws, 0);
  const Tour t = plan_back_and_forth(g, EnergyModel{}, ws);
  const double d = std::sqrt(800.0);
  EXPECT_TRUE(t.is_valid);
  EXPECT_NEAR(t.total_turn_deg, 180.0, 1e-9);
  EXPECT_NEAR(t.cost_kj, 2 * 0.1164 * d + 0.0173 * 180, 1e-9);
}

TEST(BackAndForth, DetoursAroundBlockedLeg) {
  // A post between the first two waypoints of the bottom line.
  FarmMap map = open_field(76, 38, {60, 20});
  map.clearance_m = 4;
  map.obstacles.emplace_back(Circle{{19, 0}, 3});
  const WaypointSet ws = generate_waypoints(map);
  const RouteGraph g = build_graph(map, ws, 0);
  ASSERT_FALSE(g.has_edge(0, 1));
  const Tour t = plan_back_and_forth(g, EnergyModel{}, ws);
  EXPECT_TRUE(t.is_valid);
  EXPECT_TRUE(covers_all(g, t.nodes, Coverage::at_least_once));
  for (std::size_t k = 1; k < t.nodes.size(); ++k) EXPECT_TRUE(g.has_edge(t.nodes[k - 1], t.nodes[k]));
  EXPECT_GT(t.nodes.size(), g.size() + 1);
}

TEST(BackAndForth, DeterministicAndAnalyticOnOpenGrids) {
  oracle::Random rnd(31);
  for (int trial = 0; trial < 50; ++trial) {
    const double w = 38.0 * static_cast<double>(1 + rnd.index(6)) + rnd.uniform(0, 30);
    const double hgt = 38.0 * static_cast<double>(1 + rnd.index(5)) + rnd.uniform(0, 30);
    const FarmMap map = open_field(w, hgt, {rnd.uniform(1, 37), rnd.uniform(1, 37)});
    const WaypointSet ws = generate_waypoints(map);
    const RouteGraph g = build_graph(map, ws, 0);
    const Tour a = plan_back_and_forth(g, EnergyModel{}, ws);
    const Tour b = plan_back_and_forth(g, EnergyModel{}, ws);
    EXPECT_EQ(a.nodes, b.nodes);
    EXPECT_EQ(a.cost_kj, b.cost_kj);
    ASSERT_TRUE(a.is_valid);
    // Without obstacles every waypoint appears once and the sweep itself is
    // (lines - 1) * spacing across plus lines * (points - 1) * spacing along.
    EXPECT_EQ(a.nodes.size(), g.size() + 1);
    const std::size_t lines = ws.x_is_long_axis ? ws.rows : ws.cols;
    const std::size_t along = ws.x_is_long_axis ? ws.cols : ws.rows;
    const double sweep = 38.0 * static_cast<double>((lines - 1) + lines * (along - 1));
    const double legs = distance(g.position(a.nodes[0]), g.position(a.nodes[1])) +
                        distance(g.position(a.nodes[a.nodes.size() - 2]), g.position(a.nodes.back()));
    EXPECT_NEAR(a.total_distance_m, sweep + legs, 1e-9);
  }
}
