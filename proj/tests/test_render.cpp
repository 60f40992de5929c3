#include <gtest/gtest.h>

#include <regex>
#include <sstream>
#include <vector>

#include "farmguard/reference_farm.hpp"
#include "farmguard/render.hpp"

using namespace farmguard;

namespace {

std::size_t count(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (std::size_t pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
  return n;
}

std::vector<Point2D> polyline_points(const std::string& svg) {
  const std::regex re("<polyline[^>]*points=\"([^\"]*)\"");
  std::smatch m;
  std::vector<Point2D> out;
  if (!std::regex_search(svg, m, re)) return out;
  std::istringstream in(m[1].str());
  std::string pair;
  while (in >> pair) {
    const auto comma = pair.find(',');
    out.push_back({std::stod(pair.substr(0, comma)), std::stod(pair.substr(comma + 1))});
  }
  return out;
}

}  // namespace

TEST(Num, TrimsTrailingZeros) {
  EXPECT_EQ(detail::num(38.0), "38");
  EXPECT_EQ(detail::num(2.5), "2.5");
  EXPECT_EQ(detail::num(-0.0000001), "0");
  EXPECT_EQ(detail::num(1.0 / 3.0), "0.333333");
}

TEST(RenderSvg, EmptyFarmDrawsPerimeterOnly) {
  FarmMap map;
  map.perimeter = {{0, 0}, {10, 10}};
  WaypointSet ws;
  const std::string svg = render_svg(map, ws, std::span<const RenderTour>{});
  EXPECT_EQ(count(svg, "id=\"perimeter\""), 1u);
  EXPECT_EQ(count(svg, "<circle"), 0u);
  EXPECT_EQ(count(svg, "<polyline"), 0u);
  EXPECT_EQ(count(svg, "<polygon"), 0u);
  EXPECT_NE(svg.find("viewBox=\"-12 -22 34 34\""), std::string::npos);
}

TEST(RenderSvg, ReferenceFarmFeatures) {
  const FarmMap map = reference_farm();
  const WaypointSet ws = generate_waypoints(map);
  PlannerConfig cfg;
  cfg.kind = PlannerKind::back_and_forth;
  const FleetPlan plan = plan_fleet(map, ws, cfg, 2);
  const std::string svg = render_svg(map, ws, plan);
  EXPECT_EQ(count(svg, "class=\"obstacle\""), 5u);
  EXPECT_EQ(count(svg, "class=\"station\""), 2u);
  EXPECT_EQ(count(svg, "class=\"waypoint\""), ws.valid_count());
  EXPECT_EQ(count(svg, "class=\"invalid\""), ws.size() - ws.valid_count());
  EXPECT_EQ(count(svg, "class=\"tour\""), 2u);
  EXPECT_EQ(count(svg, "<marker id=\"arrow"), 2u);
  EXPECT_EQ(svg, render_svg(map, ws, plan));
}

TEST(RenderSvg, PolylineFollowsTourNodes) {
  const FarmMap map = reference_farm();
  const WaypointSet ws = generate_waypoints(map);
  const RouteGraph g = build_graph(map, ws, 0);
  AcoParams p;
  p.n_iterations = 5;
  const Tour t = solve(g, EnergyModel{}, p).best_tour;
  const RenderTour rt = render_tour(t, g);
  const std::vector<Point2D> drawn = polyline_points(render_svg(map, ws, std::span(&rt, 1)));
  ASSERT_EQ(drawn.size(), t.nodes.size());
  for (std::size_t k = 0; k < drawn.size(); ++k) {
    EXPECT_NEAR(drawn[k].x, g.position(t.nodes[k]).x, 1e-6);
    EXPECT_NEAR(drawn[k].y, g.position(t.nodes[k]).y, 1e-6);
  }
}

TEST(ExportPath, ShapeAndRoundTrip) {
  const std::vector<Point2D> pts{{38, 0}};
  const RouteGraph g = complete_graph(pts, {0, 0});
  const Tour t = tour_cost(g, EnergyModel{}, std::vector<std::size_t>{1, 0, 1});
  const nlohmann::json doc = export_path(t, g, 30.0);
  ASSERT_EQ(doc["waypoints"].size(), 3u);
  for (const auto& w : doc["waypoints"]) EXPECT_EQ(w["altitude_m"], 30.0);
  EXPECT_EQ(doc["waypoints"][1]["x"], 38.0);
  EXPECT_EQ(doc["cost_kj"], t.cost_kj);
  EXPECT_EQ(doc["valid"], true);

  const ImportedPath back = import_path(nlohmann::json::parse(doc.dump()));
  EXPECT_EQ(back.altitude_m, 30.0);
  EXPECT_NEAR(path_cost(back, EnergyModel{}), t.cost_kj, 1e-9);

  Tour bad = t;
  bad.nodes.push_back(7);
  EXPECT_THROW(export_path(bad, g, 20.0), std::out_of_range);
}

TEST(ExportFleet, CarriesEveryDrone) {
  const FarmMap map = reference_farm();
  const WaypointSet ws = generate_waypoints(map);
  PlannerConfig cfg;
  cfg.kind = PlannerKind::back_and_forth;
  const FleetPlan plan = plan_fleet(map, ws, cfg, 2);
  const nlohmann::json doc = export_fleet(plan);
  ASSERT_EQ(doc["drones"].size(), 2u);
  double total = 0.0;
  for (std::size_t k = 0; k < 2; ++k) {
    const auto& d = doc["drones"][k];
    EXPECT_EQ(d["station"], k);
    EXPECT_EQ(d["altitude_m"], plan.drones[k].altitude_m);
    const ImportedPath path = import_path(d);
    EXPECT_NEAR(path_cost(path, EnergyModel{}), plan.drones[k].tour.cost_kj, 1e-9);
    total += path_cost(path, EnergyModel{});
  }
  EXPECT_NEAR(doc["cost_kj"].get<double>(), total, 1e-9);
}
