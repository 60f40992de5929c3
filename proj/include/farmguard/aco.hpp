#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "farmguard/energy.hpp"
#include "farmguard/geometry.hpp"
#include "farmguard/routegraph.hpp"

namespace farmguard {

enum class AcoVariant { as, mmas };

inline std::string_view to_string(AcoVariant v) { return v == AcoVariant::as ? "AS" : "MMAS"; }

struct AcoParams {
  AcoVariant variant = AcoVariant::as;
  // Unset: one ant per waypoint, capped at 50.
  std::optional<std::size_t> n_ants;
  std::size_t n_iterations = 300;
  double alpha = 1.0;
  double beta = 3.0;
  // Unset: 0.5 for AS, 0.05 for MMAS.
  std::optional<double> rho;
  // Unset: energy of the greedy max-heuristic tour.
  std::optional<double> q_deposit;
  // MMAS lower trail bound is tau_max / (tau_min_factor * node count).
  double tau_min_factor = 2.0;
  std::uint64_t seed = 42;

  double evaporation() const { return rho.value_or(variant == AcoVariant::as ? 0.5 : 0.05); }

  std::size_t ants_for(const RouteGraph& g) const {
    return n_ants.value_or(std::clamp<std::size_t>(g.waypoint_count(), 1, 50));
  }

  void validate() const {
    if (n_ants && *n_ants < 1) throw std::invalid_argument("n_ants must be at least 1");
    if (n_iterations < 1) throw std::invalid_argument("n_iterations must be at least 1");
    if (!(alpha >= 0.0)) throw std::invalid_argument("alpha must be non-negative");
    if (!(beta >= 0.0)) throw std::invalid_argument("beta must be non-negative");
    const double r = evaporation();
    if (!(r > 0.0 && r < 1.0)) throw std::invalid_argument("rho must lie in (0, 1)");
    if (q_deposit && !(*q_deposit > 0.0)) throw std::invalid_argument("q_deposit must be positive");
    if (!(tau_min_factor > 0.0)) throw std::invalid_argument("tau_min_factor must be positive");
  }
};

/// Seeded generator with a platform-independent draw: mt19937_64 output is
/// fixed by the standard and the top 53 bits become a double in [0, 1).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

/// Symmetric per-edge trail levels. Entries for node pairs without an edge
/// stay at zero and are never touched by updates.
class PheromoneMatrix {
 public:
  PheromoneMatrix(const RouteGraph& g, double initial) : n_(g.size()), tau_(n_ * n_, 0.0) {
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) {
        if (g.has_edge(i, j)) tau_[i * n_ + j] = initial;
      }
    }
  }

  std::size_t size() const { return n_; }
  double at(std::size_t i, std::size_t j) const { return tau_[i * n_ + j]; }
  bool on_edge(std::size_t i, std::size_t j) const { return tau_[i * n_ + j] > 0.0; }

  void deposit(std::size_t i, std::size_t j, double amount) {
    tau_[i * n_ + j] += amount;
    tau_[j * n_ + i] += amount;
  }

  // Edge trails never underflow to zero, so the edge set stays intact.
  void evaporate(double rho) {
    for (double& t : tau_) {
      if (t > 0.0) t = std::max(t * (1.0 - rho), std::numeric_limits<double>::min());
    }
  }

  void clamp(double lo, double hi) {
    for (double& t : tau_) {
      if (t > 0.0) t = std::clamp(t, lo, hi);
    }
  }

  // Smallest and largest trail over edges.
  std::pair<double, double> range() const {
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (double t : tau_) {
      if (t > 0.0) {
        lo = std::min(lo, t);
        hi = std::max(hi, t);
      }
    }
    return {lo, hi};
  }

 private:
  std::size_t n_;
  std::vector<double> tau_;
};

/// Snapshot handed to the solver observer after every pheromone update.
struct IterationStats {
  std::size_t iteration = 0;
  std::size_t valid_ants = 0;
  double deposited = 0.0;
  // Trail bounds in force for MMAS; zero for AS.
  double tau_min = 0.0;
  double tau_max = 0.0;
  double best_cost = std::numeric_limits<double>::infinity();
};

struct SolverRun {
  Tour best_tour;
  // Best valid cost after each iteration; infinity until a valid tour appears.
  std::vector<double> best_cost_history;
  bool valid = false;
  std::uint64_t seed = 0;
  std::size_t iterations_executed = 0;
};

using AcoObserver = std::function<void(const IterationStats&, const PheromoneMatrix&)>;

namespace detail {

// Valid tours beat invalid ones; otherwise lower energy wins.
inline bool better(const Tour& a, const Tour& b) {
  if (a.is_valid != b.is_valid) return a.is_valid;
  return a.cost_kj < b.cost_kj;
}

}  // namespace detail

/// Tour construction for one colony. Caches eta^beta for every
/// (previous, current, next) triple on small graphs.
class AntColony {
 public:
  static constexpr std::size_t kTableLimit = 160;

  AntColony(const RouteGraph& g, const EnergyModel& m, const AcoParams& p)
      : g_(g), m_(m), beta_(p.beta), n_(g.size()) {
    if (n_ > kTableLimit) return;
    // Slot n_ stands for "no previous node".
    eta_beta_.assign((n_ + 1) * n_ * n_, 0.0);
    for (std::size_t h = 0; h <= n_; ++h) {
      for (std::size_t i = 0; i < n_; ++i) {
        if (h < n_ && (h == i || !g_.has_edge(h, i))) continue;
        for (std::size_t j = 0; j < n_; ++j) {
          if (!g_.has_edge(i, j) || j == h) continue;
          eta_beta_[(h * n_ + i) * n_ + j] = compute_eta_beta(h, i, j);
        }
      }
    }
  }

  std::size_t size() const { return n_; }

  /// One ant: leave home, repeatedly pick an unvisited reachable waypoint with
  /// probability proportional to tau^alpha * eta^beta, then close at home.
  /// `tau_alpha` holds tau^alpha row-major over node pairs. A stuck ant
  /// returns its partial tour flagged invalid.
  Tour construct(const std::vector<double>& tau_alpha, Rng& rng) const {
    const std::size_t home = g_.home();
    std::vector<std::size_t> nodes{home};
    std::vector<bool> visited(n_, false);
    visited[home] = true;
    std::vector<std::size_t> cand;
    std::vector<double> cumulative;
    cand.reserve(n_);
    cumulative.reserve(n_);
    std::size_t prev = n_;
    std::size_t cur = home;
    TourFailure failure = TourFailure::none;

    for (std::size_t step = 0; step < g_.waypoint_count(); ++step) {
      cand.clear();
      cumulative.clear();
      double total = 0.0;
      for (std::size_t j = 0; j < n_; ++j) {
        if (visited[j] || !g_.has_edge(cur, j)) continue;
        total += tau_alpha[cur * n_ + j] * eta_beta(prev, cur, j);
        cand.push_back(j);
        cumulative.push_back(total);
      }
      if (cand.empty()) {
        failure = TourFailure::dead_end;
        break;
      }
      const double u = rng.uniform();
      std::size_t pick = cand.size() - 1;
      if (total > 0.0 && std::isfinite(total)) {
        const double target = u * total;
        for (std::size_t k = 0; k < cand.size(); ++k) {
          if (cumulative[k] > target) {
            pick = k;
            break;
          }
        }
      } else {
        pick = std::min(cand.size() - 1, static_cast<std::size_t>(u * static_cast<double>(cand.size())));
      }
      prev = cur;
      cur = cand[pick];
      visited[cur] = true;
      nodes.push_back(cur);
    }
    if (failure == TourFailure::none) {
      if (g_.has_edge(cur, home)) {
        nodes.push_back(home);
      } else {
        failure = TourFailure::no_closing_edge;
      }
    }
    return finish(nodes, failure);
  }

  /// Deterministic construction that always takes the most desirable leg.
  Tour greedy() const {
    const std::size_t home = g_.home();
    std::vector<std::size_t> nodes{home};
    std::vector<bool> visited(n_, false);
    visited[home] = true;
    std::size_t prev = n_;
    std::size_t cur = home;
    TourFailure failure = TourFailure::none;
    for (std::size_t step = 0; step < g_.waypoint_count(); ++step) {
      std::size_t best = n_;
      double best_eta = -1.0;
      for (std::size_t j = 0; j < n_; ++j) {
        if (visited[j] || !g_.has_edge(cur, j)) continue;
        const double eta = heuristic(m_, prev < n_ ? std::optional(g_.position(prev)) : std::nullopt,
                                     g_.position(cur), g_.position(j), g_.edge_length(cur, j));
        if (eta > best_eta) {
          best_eta = eta;
          best = j;
        }
      }
      if (best == n_) {
        failure = TourFailure::dead_end;
        break;
      }
      prev = cur;
      cur = best;
      visited[cur] = true;
      nodes.push_back(cur);
    }
    if (failure == TourFailure::none) {
      if (g_.has_edge(cur, home)) {
        nodes.push_back(home);
      } else {
        failure = TourFailure::no_closing_edge;
      }
    }
    return finish(nodes, failure);
  }

 private:
  double compute_eta_beta(std::size_t h, std::size_t i, std::size_t j) const {
    const std::optional<Point2D> prev =
        h < n_ ? std::optional(g_.position(h)) : std::nullopt;
    const double eta =
        heuristic(m_, prev, g_.position(i), g_.position(j), g_.edge_length(i, j));
    return beta_ == 1.0 ? eta : std::pow(eta, beta_);
  }

  double eta_beta(std::size_t h, std::size_t i, std::size_t j) const {
    if (!eta_beta_.empty()) return eta_beta_[(h * n_ + i) * n_ + j];
    return compute_eta_beta(h, i, j);
  }

  Tour finish(const std::vector<std::size_t>& nodes, TourFailure failure) const {
    Tour t;
    if (nodes.size() >= 2) {
      t = tour_cost(g_, m_, nodes);
    } else {
      t.nodes = nodes;
    }
    t.failure = failure;
    t.is_valid = failure == TourFailure::none && t.is_valid;
    return t;
  }

  const RouteGraph& g_;
  EnergyModel m_;
  double beta_;
  std::size_t n_;
  std::vector<double> eta_beta_;
};

inline std::vector<double> trail_powers(const PheromoneMatrix& tau, double alpha) {
  const std::size_t n = tau.size();
  std::vector<double> out(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double t = tau.at(i, j);
      if (t > 0.0) out[i * n + j] = alpha == 1.0 ? t : std::pow(t, alpha);
    }
  }
  return out;
}

/// Single ant construction; see AntColony::construct.
inline Tour construct_tour(const RouteGraph& g, const EnergyModel& m, const PheromoneMatrix& tau,
                           const AcoParams& p, Rng& rng) {
  const AntColony colony(g, m, p);
  return colony.construct(trail_powers(tau, p.alpha), rng);
}

/// Deposit scale used when AcoParams::q_deposit is unset, and the reference
/// tour cost used to seed the initial trails.
inline double reference_tour_cost(const RouteGraph& g, const EnergyModel& m, const AntColony& colony) {
  const Tour greedy = colony.greedy();
  if (greedy.is_valid) return greedy.cost_kj;
  double total = 0.0;
  std::size_t edges = 0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (std::size_t j = i + 1; j < g.size(); ++j) {
      if (g.has_edge(i, j)) {
        total += g.edge_length(i, j);
        ++edges;
      }
    }
  }
  const double mean_leg = edges ? total / static_cast<double>(edges) : 1.0;
  return m.lambda_kj_per_m * mean_leg * static_cast<double>(g.size());
}

/// Ant System or Max-Min Ant System over `g`. Deterministic for a given seed.
///
/// Every iteration builds `n_ants` tours, evaporates all trails by rho and then
/// deposits Q / cost on the legs of the depositing tours: every valid ant for
/// AS, only the best-so-far valid tour for MMAS. MMAS trails are then clamped
/// to [tau_min, tau_max] with tau_max = Q / (rho * best cost) and tau_min =
/// tau_max / (tau_min_factor * nodes). Invalid tours never deposit.
inline SolverRun solve(const RouteGraph& g, const EnergyModel& m, const AcoParams& p,
                       const AcoObserver& observer = {}) {
  p.validate();
  m.validate();
  const AntColony colony(g, m, p);
  const std::size_t ants = p.ants_for(g);
  const double rho = p.evaporation();
  const double ref_cost = reference_tour_cost(g, m, colony);
  const double q = p.q_deposit.value_or(ref_cost);
  const bool mmas = p.variant == AcoVariant::mmas;
  const double node_count = static_cast<double>(g.size());

  double tau_max = q / (rho * ref_cost);
  double tau_min = tau_max / (p.tau_min_factor * node_count);
  const double tau0 = mmas ? tau_max : static_cast<double>(ants) * q / ref_cost;
  PheromoneMatrix tau(g, tau0);

  Rng rng(p.seed);
  SolverRun run;
  run.seed = p.seed;
  bool have_best = false;
  std::vector<Tour> tours(ants);

  for (std::size_t it = 0; it < p.n_iterations; ++it) {
    const std::vector<double> tau_alpha = trail_powers(tau, p.alpha);
    for (std::size_t k = 0; k < ants; ++k) tours[k] = colony.construct(tau_alpha, rng);
    for (const Tour& t : tours) {
      if (!have_best || detail::better(t, run.best_tour)) {
        run.best_tour = t;
        have_best = true;
      }
    }

    IterationStats stats;
    stats.iteration = it;
    tau.evaporate(rho);
    const auto lay = [&](const Tour& t) {
      const double amount = q / t.cost_kj;
      for (std::size_t k = 1; k < t.nodes.size(); ++k) {
        tau.deposit(t.nodes[k - 1], t.nodes[k], amount);
        stats.deposited += amount;
      }
    };
    for (const Tour& t : tours) stats.valid_ants += t.is_valid ? 1 : 0;
    if (mmas) {
      if (run.best_tour.is_valid) {
        lay(run.best_tour);
        tau_max = q / (rho * run.best_tour.cost_kj);
        tau_min = tau_max / (p.tau_min_factor * node_count);
      }
      tau.clamp(tau_min, tau_max);
      stats.tau_min = tau_min;
      stats.tau_max = tau_max;
    } else {
      for (const Tour& t : tours) {
        if (t.is_valid) lay(t);
      }
    }

    const double best = run.best_tour.is_valid ? run.best_tour.cost_kj
                                               : std::numeric_limits<double>::infinity();
    run.best_cost_history.push_back(best);
    stats.best_cost = best;
    run.iterations_executed = it + 1;
    if (observer) observer(stats, tau);
  }
  run.valid = run.best_tour.is_valid;
  return run;
}

}  // namespace farmguard
