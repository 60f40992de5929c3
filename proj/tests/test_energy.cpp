#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "farmguard/energy.hpp"
#include "oracles.hpp"

using namespace farmguard;

TEST(EnergyModel, Defaults) {
  const EnergyModel m;
  EXPECT_EQ(m.lambda_kj_per_m, 0.1164);
  EXPECT_EQ(m.gamma_kj_per_deg, 0.0173);
  EXPECT_NO_THROW(m.validate());
  EXPECT_THROW((EnergyModel{0.0, 0.1}.validate()), std::invalid_argument);
  EXPECT_THROW((EnergyModel{0.1, -1.0}.validate()), std::invalid_argument);
}

TEST(TourCost, StraightTwoLegs) {
  const std::vector<Point2D> pts{{0, 0}, {50, 0}, {100, 0}};
  const RouteGraph g = complete_graph(pts, {30, 10});
  const std::vector<std::size_t> nodes{0, 1, 2};
  const Tour t = tour_cost(g, EnergyModel{}, nodes);
  EXPECT_DOUBLE_EQ(t.total_distance_m, 100.0);
  EXPECT_DOUBLE_EQ(t.total_turn_deg, 0.0);
  EXPECT_NEAR(t.cost_kj, 11.64, 1e-12);
  EXPECT_FALSE(t.is_valid);
}

TEST(TourCost, LPath) {
  const std::vector<Point2D> pts{{0, 0}, {38, 0}, {38, 38}};
  const RouteGraph g = complete_graph(pts, {5, 5});
  const std::vector<std::size_t> nodes{0, 1, 2};
  const Tour t = tour_cost(g, EnergyModel{}, nodes);
  EXPECT_DOUBLE_EQ(t.total_distance_m, 76.0);
  EXPECT_NEAR(t.total_turn_deg, 90.0, 1e-12);
  EXPECT_NEAR(t.cost_kj, 10.4034, 1e-12);
}

TEST(TourCost, SingleLegHasNoTurn) {
  const std::vector<Point2D> pts{{38, 0}};
  const RouteGraph g = complete_graph(pts, {0, 0});
  const std::vector<std::size_t> nodes{g.home(), 0};
  const Tour t = tour_cost(g, EnergyModel{}, nodes);
  EXPECT_EQ(t.total_turn_deg, 0.0);
  EXPECT_NEAR(t.cost_kj, 0.1164 * 38, 1e-12);
}

TEST(TourCost, ValidityRules) {
  const std::vector<Point2D> pts{{0, 0}, {38, 0}};
  const RouteGraph g = complete_graph(pts, {19, 10});
  const std::size_t h = g.home();
  EXPECT_TRUE(tour_cost(g, {}, std::vector<std::size_t>{h, 0, 1, h}).is_valid);
  EXPECT_FALSE(tour_cost(g, {}, std::vector<std::size_t>{h, 0, 1}).is_valid);
  EXPECT_FALSE(tour_cost(g, {}, std::vector<std::size_t>{h, 0, h}).is_valid);
  EXPECT_FALSE(tour_cost(g, {}, std::vector<std::size_t>{h, 0, 1, 0, h}).is_valid);
  EXPECT_TRUE(tour_cost(g, {}, std::vector<std::size_t>{h, 0, 1, 0, h}, Coverage::at_least_once).is_valid);
  EXPECT_FALSE(tour_cost(g, {}, std::vector<std::size_t>{h, 0, h, 1, h}).is_valid);
}

TEST(TourCost, RejectsNonAdjacentPair) {
  FarmMap map;
  map.perimeter = {{0, 0}, {76, 40}};
  map.grid_spacing_m = 76;
  map.stations = {{38, 38}};
  map.obstacles.emplace_back(Rect{{35, -5}, {41, 5}});
  const RouteGraph g = build_graph(map, generate_waypoints(map), 0);
  try {
    tour_cost(g, {}, std::vector<std::size_t>{g.home(), 0, 1, g.home()});
    FAIL() << "expected NotAdjacentError";
  } catch (const NotAdjacentError& e) {
    EXPECT_EQ(e.from(), 0u);
    EXPECT_EQ(e.to(), 1u);
  }
}

TEST(Heuristic, SpotValues) {
  const EnergyModel m;
  const double straight = heuristic(m, std::nullopt, {0, 0}, {38, 0}, 38.0);
  EXPECT_NEAR(straight, 1.0 / 4.4232, 1e-12);
  EXPECT_NEAR(straight, 0.22608, 1e-5);
  EXPECT_DOUBLE_EQ(heuristic(m, Point2D{-10, 0}, {0, 0}, {38, 0}, 38.0), straight);
  const double turned = heuristic(m, Point2D{0, -10}, {0, 0}, {38, 0}, 38.0);
  EXPECT_NEAR(turned, 1.0 / (4.4232 + 1.557), 1e-12);
  EXPECT_NEAR(turned, 0.16722, 1e-5);
}

TEST(Heuristic, DecreasingInDistanceAndTurn) {
  const EnergyModel m;
  oracle::Random rnd(5);
  for (int k = 0; k < 500; ++k) {
    const double d1 = rnd.uniform(1, 200);
    const double d2 = d1 + rnd.uniform(0.01, 50);
    EXPECT_GT(heuristic(m, std::nullopt, {0, 0}, {d1, 0}, d1), heuristic(m, std::nullopt, {0, 0}, {d2, 0}, d2));
    // Larger turn at the same distance is less desirable.
    const double a1 = rnd.uniform(0, 170) * std::numbers::pi / 180.0;
    const double a2 = a1 + rnd.uniform(0.5, 10) * std::numbers::pi / 180.0;
    const Point2D prev{-1, 0};
    const Point2D j1{d1 * std::cos(a1), d1 * std::sin(a1)};
    const Point2D j2{d1 * std::cos(a2), d1 * std::sin(a2)};
    EXPECT_GT(heuristic(m, prev, {0, 0}, j1, d1), heuristic(m, prev, {0, 0}, j2, d1));
  }
}

namespace {

std::vector<Point2D> random_points(oracle::Random& rnd, std::size_t n) {
  std::vector<Point2D> pts;
  for (std::size_t k = 0; k < n; ++k) pts.push_back(rnd.point(0, 300));
  return pts;
}

Point2D rigid(Point2D p, double angle, Point2D shift) {
  return {std::cos(angle) * p.x - std::sin(angle) * p.y + shift.x,
          std::sin(angle) * p.x + std::cos(angle) * p.y + shift.y};
}

}  // namespace

TEST(TourCost, ReversalRigidMotionAndScaling) {
  const EnergyModel m;
  oracle::Random rnd(7);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + rnd.index(12);
    const std::vector<Point2D> pts = random_points(rnd, n);
    const Point2D home = rnd.point(0, 300);
    const RouteGraph g = complete_graph(pts, home);
    std::vector<std::size_t> nodes{g.home()};
    for (std::size_t k = 0; k < n; ++k) nodes.push_back(k);
    std::shuffle(nodes.begin() + 1, nodes.end(), std::mt19937_64(trial));
    nodes.push_back(g.home());
    const Tour t = tour_cost(g, m, nodes);
    ASSERT_TRUE(t.is_valid);
    EXPECT_NEAR(t.cost_kj, m.lambda_kj_per_m * t.total_distance_m + m.gamma_kj_per_deg * t.total_turn_deg,
                1e-9 * t.cost_kj);

    std::vector<std::size_t> reversed(nodes.rbegin(), nodes.rend());
    const Tour r = tour_cost(g, m, reversed);
    EXPECT_TRUE(oracle::close_rel(r.total_distance_m, t.total_distance_m, 1e-9));
    EXPECT_TRUE(oracle::close_rel(r.total_turn_deg, t.total_turn_deg, 1e-9));
    EXPECT_TRUE(oracle::close_rel(r.cost_kj, t.cost_kj, 1e-9));

    const double angle = rnd.uniform(0, 2 * std::numbers::pi);
    const Point2D shift = rnd.point(-1000, 1000);
    std::vector<Point2D> moved;
    for (Point2D p : pts) moved.push_back(rigid(p, angle, shift));
    const Tour mt = tour_cost(complete_graph(moved, rigid(home, angle, shift)), m, nodes);
    EXPECT_TRUE(oracle::close_rel(mt.cost_kj, t.cost_kj, 1e-9));

    const double s = rnd.uniform(0.1, 10);
    std::vector<Point2D> scaled;
    for (Point2D p : pts) scaled.push_back(s * p);
    const Tour st = tour_cost(complete_graph(scaled, s * home), m, nodes);
    EXPECT_TRUE(oracle::close_rel(
        st.cost_kj, m.lambda_kj_per_m * s * t.total_distance_m + m.gamma_kj_per_deg * t.total_turn_deg, 1e-9));
  }
}
