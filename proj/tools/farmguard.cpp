// farmguard: plan, benchmark and render energy-aware coverage paths for farm patrol drones.
//
// Exit codes: 0 success, 1 usage or I/O failure, 2 invalid map document,
// 3 connectivity failure, 4 planner failure.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "farmguard/farmguard.hpp"

namespace fs = std::filesystem;
using namespace farmguard;

namespace {

enum ExitCode : int { kOk = 0, kUsage = 1, kSchema = 2, kConnectivity = 3, kPlanner = 4 };

struct CommonOptions {
  std::string map_path;
  std::optional<double> lambda;
  std::optional<double> gamma;
  std::optional<double> spacing;
  std::optional<double> clearance;
  std::optional<double> alpha;
  std::optional<double> beta;
  std::optional<double> rho;
  std::optional<std::size_t> ants;
  std::optional<std::size_t> iterations;
};

void add_common(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("map", o.map_path, "Map JSON file (default: built-in reference farm)");
  cmd->add_option("--lambda", o.lambda, "Straight-flight energy, kJ/m");
  cmd->add_option("--gamma", o.gamma, "Turning energy, kJ/deg");
  cmd->add_option("--spacing", o.spacing, "Waypoint grid spacing, m");
  cmd->add_option("--clearance", o.clearance, "Obstacle clearance, m");
  cmd->add_option("--alpha", o.alpha, "Pheromone exponent");
  cmd->add_option("--beta", o.beta, "Heuristic exponent");
  cmd->add_option("--rho", o.rho, "Evaporation rate in (0,1)");
  cmd->add_option("--ants", o.ants, "Ants per iteration");
  cmd->add_option("--iterations", o.iterations, "ACO iterations");
}

FarmMap load(const CommonOptions& o) {
  FarmMap map = o.map_path.empty() ? reference_farm() : load_map_file(o.map_path);
  if (o.spacing || o.clearance) {
    nlohmann::json doc = to_json(map);
    if (o.spacing) doc["grid_spacing_m"] = *o.spacing;
    if (o.clearance) doc["clearance_m"] = *o.clearance;
    map = load_map(doc);
  }
  return map;
}

PlannerConfig planner_config(const CommonOptions& o) {
  PlannerConfig cfg;
  if (o.lambda) cfg.energy.lambda_kj_per_m = *o.lambda;
  if (o.gamma) cfg.energy.gamma_kj_per_deg = *o.gamma;
  if (o.alpha) cfg.aco.alpha = *o.alpha;
  if (o.beta) cfg.aco.beta = *o.beta;
  if (o.rho) cfg.aco.rho = *o.rho;
  if (o.ants) cfg.aco.n_ants = *o.ants;
  if (o.iterations) cfg.aco.n_iterations = *o.iterations;
  cfg.energy.validate();
  cfg.aco.validate();
  return cfg;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
}

std::string fixed(double v, int digits = 2) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

int cmd_validate(const CommonOptions& o) {
  const FarmMap map = load(o);
  const WaypointSet ws = generate_waypoints(map);
  std::cout << ws.size() << " grid waypoints, " << ws.valid_count() << " valid, "
            << ws.size() - ws.valid_count() << " invalid\n";
  for (std::size_t s = 0; s < map.stations.size(); ++s) {
    const RouteGraph g = build_graph(map, ws, s);
    std::cout << "station " << s << ": " << g.edge_count() << " edges, connected\n";
  }
  std::cout << ws.valid_count() << " valid waypoints, connected\n";
  return kOk;
}

int cmd_plan(const CommonOptions& o, const std::string& solver, std::size_t drones,
             std::uint64_t seed, const std::string& out, const std::string& svg) {
  const auto kind = planner_from_string(solver);
  if (!kind) {
    std::cerr << "unknown solver '" << solver << "' (back-and-forth, as, mmas)\n";
    return kUsage;
  }
  const FarmMap map = load(o);
  const WaypointSet ws = generate_waypoints(map);
  PlannerConfig cfg = planner_config(o);
  cfg.kind = *kind;
  cfg.aco.seed = seed;
  const FleetPlan plan = plan_fleet(map, ws, cfg, drones);

  if (!out.empty()) write_file(out, export_fleet(plan).dump(2) + "\n");
  if (!svg.empty()) write_file(svg, render_svg(map, ws, plan));

  std::cout << "solver=" << to_string(*kind) << " drones=" << drones << " seed=" << seed
            << " valid=" << (plan.valid() ? "yes" : "no") << " cost_kj=" << fixed(plan.cost_kj(), 4)
            << " distance_m=" << fixed(plan.distance_m()) << " turn_deg=" << fixed(plan.turn_deg())
            << " altitudes_m=";
  for (std::size_t k = 0; k < plan.drones.size(); ++k) {
    std::cout << (k ? "/" : "") << fixed(plan.drones[k].altitude_m, 0);
  }
  std::cout << "\n";
  return plan.valid() ? kOk : kPlanner;
}

void print_table(const BenchSummary& summary) {
  std::printf("%-8s %-15s %7s %11s %11s %11s %9s\n", "problem", "solver", "valid", "mean_kJ",
              "min_kJ", "max_kJ", "vs_base");
  for (Problem p : {Problem::single, Problem::dual}) {
    for (const CellSummary& c : summary.cells) {
      if (c.problem != p) continue;
      const std::string valid = std::to_string(c.trials_valid) + "/" + std::to_string(c.trials_run);
      if (c.error) {
        std::printf("%-8s %-15s  error: %s\n", std::string(to_string(p)).c_str(),
                    std::string(to_string(c.solver)).c_str(), c.error->c_str());
        continue;
      }
      if (!c.mean_cost_kj) {
        std::printf("%-8s %-15s %7s  no valid solutions\n", std::string(to_string(p)).c_str(),
                    std::string(to_string(c.solver)).c_str(), valid.c_str());
        continue;
      }
      const std::string vs = c.improvement_pct ? fixed(-*c.improvement_pct, 1) + "%" : "-";
      std::printf("%-8s %-15s %7s %11.3f %11.3f %11.3f %9s\n", std::string(to_string(p)).c_str(),
                  std::string(to_string(c.solver)).c_str(), valid.c_str(), *c.mean_cost_kj,
                  *c.min_cost_kj, *c.max_cost_kj, vs.c_str());
    }
  }
}

int cmd_bench(const CommonOptions& o, std::size_t trials, std::uint64_t base_seed,
              const std::string& out_dir, std::size_t threads) {
  const FarmMap map = load(o);
  BenchConfig cfg;
  cfg.n_trials = trials;
  cfg.base_seed = base_seed;
  cfg.planner = planner_config(o);
  cfg.threads = threads;
  const BenchResult result = run_benchmark(map, cfg);

  if (!out_dir.empty()) {
    fs::create_directories(out_dir);
    write_file(fs::path(out_dir) / "trials.jsonl", to_jsonl(result.reports));
    write_file(fs::path(out_dir) / "summary.json", to_json(result.summary).dump(2) + "\n");
    const WaypointSet ws = generate_waypoints(map);
    for (const CellBest& b : result.best) {
      std::string name = "best_" + std::string(to_string(b.solver)) + "_" +
                         std::string(to_string(b.problem)) + ".svg";
      for (char& ch : name) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
      write_file(fs::path(out_dir) / name, render_svg(map, ws, b.plan));
    }
  }
  print_table(result.summary);
  for (const CellSummary& c : result.summary.cells) {
    if (!c.error) return kOk;
  }
  return kPlanner;
}

int cmd_render(const CommonOptions& o, const std::string& out, const std::string& path_file) {
  const FarmMap map = load(o);
  const WaypointSet ws = generate_waypoints(map);
  std::vector<RenderTour> tours;
  if (!path_file.empty()) {
    std::ifstream in(path_file);
    if (!in) throw std::runtime_error("cannot open " + path_file);
    const nlohmann::json doc = nlohmann::json::parse(in);
    // Accepts a fleet export or a single-drone path document.
    if (doc.contains("drones")) {
      for (const auto& d : doc.at("drones")) tours.push_back({import_path(d).points});
    } else {
      tours.push_back({import_path(doc).points});
    }
  }
  const std::string svg = render_svg(map, ws, tours);
  if (out.empty()) {
    std::cout << svg;
  } else {
    write_file(out, svg);
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Energy-aware coverage planning for farm patrol drones"};
  app.set_config("--config", "", "TOML config file; keys mirror the long flag names");
  app.require_subcommand(1);

  CommonOptions common;

  auto* validate = app.add_subcommand("validate", "Check a map and report waypoint and graph stats");
  add_common(validate, common);

  std::string solver = "as";
  std::size_t drones = 1;
  std::uint64_t seed = 42;
  std::string out;
  std::string svg;
  auto* plan = app.add_subcommand("plan", "Plan coverage tours and export them");
  add_common(plan, common);
  plan->add_option("--solver", solver, "back-and-forth | as | mmas")->capture_default_str();
  plan->add_option("--drones", drones, "1 or 2")->capture_default_str()->check(CLI::Range(1, 2));
  plan->add_option("--seed", seed, "RNG seed")->envname("GUARD_SEED")->capture_default_str();
  plan->add_option("--out", out, "Write path export JSON here");
  plan->add_option("--svg", svg, "Write an SVG rendering here");

  std::size_t trials = 30;
  std::uint64_t base_seed = 42;
  std::string out_dir;
  std::size_t threads = 0;
  auto* bench = app.add_subcommand("bench", "Run the seeded solver x problem benchmark");
  add_common(bench, common);
  bench->add_option("--trials", trials, "Trials per ACO cell")->capture_default_str()->check(CLI::PositiveNumber);
  bench->add_option("--base-seed", base_seed, "Seed of trial 0")->envname("GUARD_SEED")->capture_default_str();
  bench->add_option("--out-dir", out_dir, "Directory for trials.jsonl, summary.json and SVGs");
  bench->add_option("--threads", threads, "Worker threads (0 = all cores)")->capture_default_str();

  std::string render_out;
  std::string path_file;
  auto* render = app.add_subcommand("render", "Render a map, optionally with an exported plan, to SVG");
  add_common(render, common);
  render->add_option("--out", render_out, "SVG output file (default: stdout)");
  render->add_option("--path", path_file, "Path export JSON to overlay");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*validate) return cmd_validate(common);
    if (*plan) return cmd_plan(common, solver, drones, seed, out, svg);
    if (*bench) return cmd_bench(common, trials, base_seed, out_dir, threads);
    if (*render) return cmd_render(common, render_out, path_file);
  } catch (const MapError& e) {
    std::cerr << "map error: " << e.what() << "\n";
    return kSchema;
  } catch (const ConnectivityError& e) {
    std::cerr << "connectivity error: " << e.what() << "\n";
    return kConnectivity;
  } catch (const PlannerError& e) {
    std::cerr << "planner error: " << e.what() << "\n";
    return kPlanner;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid parameter: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
