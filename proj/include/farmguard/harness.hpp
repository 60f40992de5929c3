#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "farmguard/fleet.hpp"
#include "farmguard/world.hpp"

namespace farmguard {

enum class Problem { single, dual };

inline std::string_view to_string(Problem p) { return p == Problem::single ? "single" : "dual"; }

inline std::size_t drone_count(Problem p) { return p == Problem::single ? 1 : 2; }

inline constexpr int kSchemaVersion = 1;

struct TrialReport {
  PlannerKind solver = PlannerKind::as;
  Problem problem = Problem::single;
  std::uint64_t seed = 0;
  bool valid = false;
  double cost_kj = 0.0;
  double distance_m = 0.0;
  double turn_deg = 0.0;
  double wall_time_ms = 0.0;
  // First invalid drone's failure cause, "none" when valid.
  std::string failure = "none";
};

struct CellSummary {
  PlannerKind solver = PlannerKind::as;
  Problem problem = Problem::single;
  std::size_t trials_run = 0;
  std::size_t trials_valid = 0;
  // Statistics over valid trials only; unset when there are none.
  std::optional<double> mean_cost_kj;
  std::optional<double> min_cost_kj;
  std::optional<double> max_cost_kj;
  std::optional<double> stddev_cost_kj;
  std::optional<double> baseline_cost_kj;
  // (baseline - mean) / baseline, in percent.
  std::optional<double> improvement_pct;
  std::optional<std::string> error;
};

struct BenchSummary {
  std::vector<CellSummary> cells;

  const CellSummary* find(PlannerKind solver, Problem problem) const {
    for (const CellSummary& c : cells) {
      if (c.solver == solver && c.problem == problem) return &c;
    }
    return nullptr;
  }
};

struct CellError {
  PlannerKind solver;
  Problem problem;
  std::string message;
};

/// Aggregate reports per (solver, problem), in order of first appearance.
/// Baseline cost for a problem comes from its back-and-forth report.
inline BenchSummary summarize(const std::vector<TrialReport>& reports,
                              const std::vector<CellError>& errors = {}) {
  BenchSummary out;
  std::map<Problem, double> baseline;
  for (const TrialReport& r : reports) {
    if (r.solver == PlannerKind::back_and_forth && r.valid && !baseline.count(r.problem)) {
      baseline[r.problem] = r.cost_kj;
    }
  }
  const auto cell_for = [&](PlannerKind s, Problem p) -> CellSummary& {
    for (CellSummary& c : out.cells) {
      if (c.solver == s && c.problem == p) return c;
    }
    CellSummary& c = out.cells.emplace_back();
    c.solver = s;
    c.problem = p;
    return c;
  };
  for (const TrialReport& r : reports) {
    CellSummary& c = cell_for(r.solver, r.problem);
    ++c.trials_run;
    if (r.valid) ++c.trials_valid;
  }
  for (const CellError& e : errors) cell_for(e.solver, e.problem).error = e.message;

  for (CellSummary& c : out.cells) {
    std::vector<double> valid_costs;
    for (const TrialReport& r : reports) {
      if (r.solver == c.solver && r.problem == c.problem && r.valid) valid_costs.push_back(r.cost_kj);
    }
    if (auto it = baseline.find(c.problem); it != baseline.end()) c.baseline_cost_kj = it->second;
    if (valid_costs.empty()) continue;
    double sum = 0.0;
    for (double v : valid_costs) sum += v;
    const double n = static_cast<double>(valid_costs.size());
    const double mean = sum / n;
    double sq = 0.0;
    for (double v : valid_costs) sq += (v - mean) * (v - mean);
    c.mean_cost_kj = mean;
    c.min_cost_kj = *std::min_element(valid_costs.begin(), valid_costs.end());
    c.max_cost_kj = *std::max_element(valid_costs.begin(), valid_costs.end());
    c.stddev_cost_kj = valid_costs.size() > 1 ? std::sqrt(sq / (n - 1.0)) : 0.0;
    if (c.baseline_cost_kj) {
      c.improvement_pct = 100.0 * (*c.baseline_cost_kj - mean) / *c.baseline_cost_kj;
    }
  }
  return out;
}

struct BenchConfig {
  std::vector<PlannerKind> solvers{PlannerKind::back_and_forth, PlannerKind::as, PlannerKind::mmas};
  std::vector<Problem> problems{Problem::single, Problem::dual};
  std::size_t n_trials = 30;
  std::uint64_t base_seed = 42;
  // Energy model and ACO parameters; `kind` and `aco.seed` are set per trial.
  PlannerConfig planner;
  // Worker threads for trials; 0 picks the hardware concurrency.
  std::size_t threads = 0;
};

struct CellBest {
  PlannerKind solver;
  Problem problem;
  FleetPlan plan;
};

struct BenchResult {
  std::vector<TrialReport> reports;
  BenchSummary summary;
  // Lowest-cost valid plan (or the single baseline plan) per cell.
  std::vector<CellBest> best;
};

namespace detail {

template <typename Fn>
void parallel_for(std::size_t n, std::size_t threads, Fn&& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, n);
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

inline TrialReport report_for(PlannerKind solver, Problem problem, std::uint64_t seed,
                              const FleetPlan& plan, double ms) {
  TrialReport r;
  r.solver = solver;
  r.problem = problem;
  r.seed = seed;
  r.valid = plan.valid();
  r.cost_kj = plan.cost_kj();
  r.distance_m = plan.distance_m();
  r.turn_deg = plan.turn_deg();
  r.wall_time_ms = ms;
  for (const DronePlan& d : plan.drones) {
    if (!d.tour.is_valid) {
      r.failure = std::string(to_string(d.tour.failure));
      break;
    }
  }
  return r;
}

}  // namespace detail

/// Run every (solver, problem) cell. ACO trial i uses seed base_seed + i; the
/// deterministic baseline runs once with base_seed. A planning error aborts
/// only its own cell. Reports are ordered by (solver, problem, seed).
inline BenchResult run_benchmark(const FarmMap& map, const BenchConfig& cfg) {
  if (cfg.n_trials < 1) throw std::invalid_argument("n_trials must be at least 1");
  const WaypointSet ws = generate_waypoints(map);
  BenchResult result;
  std::vector<CellError> errors;

  for (PlannerKind solver : cfg.solvers) {
    for (Problem problem : cfg.problems) {
      const std::size_t trials = solver == PlannerKind::back_and_forth ? 1 : cfg.n_trials;
      std::vector<std::optional<FleetPlan>> plans(trials);
      std::vector<TrialReport> reports(trials);
      std::vector<std::string> failures(trials);
      detail::parallel_for(trials, cfg.threads, [&](std::size_t i) {
        const std::uint64_t seed = cfg.base_seed + i;
        PlannerConfig pc = cfg.planner;
        pc.kind = solver;
        pc.aco.seed = seed;
        const auto start = std::chrono::steady_clock::now();
        try {
          FleetPlan plan = plan_fleet(map, ws, pc, drone_count(problem));
          const double ms =
              std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
                  .count();
          reports[i] = detail::report_for(solver, problem, seed, plan, ms);
          plans[i] = std::move(plan);
        } catch (const std::exception& e) {
          failures[i] = e.what();
        }
      });

      const auto failed = std::find_if(failures.begin(), failures.end(),
                                       [](const std::string& s) { return !s.empty(); });
      if (failed != failures.end()) {
        errors.push_back({solver, problem, *failed});
        continue;
      }
      std::optional<std::size_t> best;
      for (std::size_t i = 0; i < trials; ++i) {
        if (!best || (plans[i]->valid() && !plans[*best]->valid()) ||
            (plans[i]->valid() == plans[*best]->valid() &&
             plans[i]->cost_kj() < plans[*best]->cost_kj())) {
          best = i;
        }
      }
      result.best.push_back({solver, problem, std::move(*plans[*best])});
      result.reports.insert(result.reports.end(), reports.begin(), reports.end());
    }
  }
  result.summary = summarize(result.reports, errors);
  return result;
}

// ---- persisted formats ----

inline nlohmann::json to_json(const TrialReport& r, bool with_timing = true) {
  nlohmann::json j{{"schema", kSchemaVersion},
                   {"solver", to_string(r.solver)},
                   {"problem", to_string(r.problem)},
                   {"seed", r.seed},
                   {"valid", r.valid},
                   {"cost_kj", r.cost_kj},
                   {"distance_m", r.distance_m},
                   {"turn_deg", r.turn_deg},
                   {"failure", r.failure}};
  if (with_timing) j["wall_time_ms"] = r.wall_time_ms;
  return j;
}

inline TrialReport trial_from_json(const nlohmann::json& j) {
  if (j.at("schema").get<int>() != kSchemaVersion) {
    throw std::runtime_error("unsupported trial report schema");
  }
  TrialReport r;
  const auto solver = planner_from_string(j.at("solver").get<std::string>());
  if (!solver) throw std::runtime_error("unknown solver in trial report");
  r.solver = *solver;
  const std::string problem = j.at("problem").get<std::string>();
  if (problem != "single" && problem != "dual") throw std::runtime_error("unknown problem");
  r.problem = problem == "single" ? Problem::single : Problem::dual;
  r.seed = j.at("seed").get<std::uint64_t>();
  r.valid = j.at("valid").get<bool>();
  r.cost_kj = j.at("cost_kj").get<double>();
  r.distance_m = j.at("distance_m").get<double>();
  r.turn_deg = j.at("turn_deg").get<double>();
  r.wall_time_ms = j.value("wall_time_ms", 0.0);
  r.failure = j.value("failure", std::string("none"));
  return r;
}

/// One compact JSON document per line.
inline std::string to_jsonl(const std::vector<TrialReport>& reports, bool with_timing = true) {
  std::string out;
  for (const TrialReport& r : reports) {
    out += to_json(r, with_timing).dump();
    out += '\n';
  }
  return out;
}

inline std::vector<TrialReport> parse_jsonl(std::string_view text) {
  std::vector<TrialReport> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = text.substr(pos, end - pos);
    if (!line.empty()) out.push_back(trial_from_json(nlohmann::json::parse(line)));
    pos = end + 1;
  }
  return out;
}

inline nlohmann::json to_json(const BenchSummary& s) {
  nlohmann::json cells = nlohmann::json::array();
  for (const CellSummary& c : s.cells) {
    nlohmann::json j{{"solver", to_string(c.solver)},
                     {"problem", to_string(c.problem)},
                     {"trials_run", c.trials_run},
                     {"trials_valid", c.trials_valid}};
    if (c.mean_cost_kj) {
      j["mean_cost_kj"] = *c.mean_cost_kj;
      j["min_cost_kj"] = *c.min_cost_kj;
      j["max_cost_kj"] = *c.max_cost_kj;
      j["stddev_cost_kj"] = *c.stddev_cost_kj;
    } else if (!c.error) {
      j["note"] = "no valid solutions";
    }
    if (c.baseline_cost_kj) j["baseline_cost_kj"] = *c.baseline_cost_kj;
    if (c.improvement_pct) j["improvement_pct"] = *c.improvement_pct;
    if (c.error) j["error"] = *c.error;
    cells.push_back(std::move(j));
  }
  return {{"schema", kSchemaVersion}, {"cells", cells}};
}

}  // namespace farmguard
