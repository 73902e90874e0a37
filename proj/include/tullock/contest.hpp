#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

// Lottery contest primitives: utilities, best responses, the symmetric
// equilibrium, and multiplicative epsilon-gap measurement.
//
// Conventions:
//   - agents are indexed 0..n-1
//   - prize value is normalized to 1
//   - an agent facing an all-zero opponent profile plays the floor action `a`
//     (no true best response exists against 0)

namespace tullock {

using ActionProfile = std::vector<double>;

struct ContestConfig {
  std::size_t n = 0;
  std::vector<double> costs;
  double floor_action = 0.0;

  ContestConfig(std::size_t n_agents, std::vector<double> agent_costs, double a)
      : n(n_agents), costs(std::move(agent_costs)), floor_action(a) {
    if (n < 2) throw std::invalid_argument("ContestConfig: need n >= 2 agents");
    if (costs.size() != n)
      throw std::invalid_argument("ContestConfig: costs size != n");
    for (double c : costs)
      if (!(c > 0.0) || !std::isfinite(c))
        throw std::invalid_argument("ContestConfig: costs must be positive finite");
    // The floor must admit Example-2 style cycles, which sit exactly at 1/4.
    if (!(a > 0.0) || !(a <= 0.25))
      throw std::invalid_argument("ContestConfig: floor action must be in (0, 1/4]");
  }

  static ContestConfig homogeneous_config(std::size_t n_agents, double c, double a) {
    return ContestConfig(n_agents, std::vector<double>(n_agents, c), a);
  }

  bool homogeneous() const {
    return std::all_of(costs.begin(), costs.end(),
                       [&](double c) { return c == costs.front(); });
  }

  bool unit_cost() const { return homogeneous() && costs.front() == 1.0; }
};

inline void validate_profile(const ContestConfig& cfg, const ActionProfile& x) {
  if (x.size() != cfg.n)
    throw std::invalid_argument("ActionProfile: size != n");
  for (double v : x)
    if (!std::isfinite(v) || v < 0.0)
      throw std::invalid_argument("ActionProfile: entries must be finite and >= 0");
}

inline void check_agent(const ContestConfig& cfg, std::size_t i) {
  if (i >= cfg.n) throw std::out_of_range("agent index out of range");
}

inline double total_output(const ActionProfile& x) {
  double s = 0.0;
  for (double v : x) s += v;
  return s;
}

// Opponent mass sum_{j != i} x_j, summed directly (no cancellation).
inline double opponent_output(const ActionProfile& x, std::size_t i) {
  double s = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j)
    if (j != i) s += x[j];
  return s;
}

// u_i(x) = x_i / sum_j x_j - c_i x_i; the share is 1/n when everyone plays 0.
inline double utility(const ContestConfig& cfg, const ActionProfile& x, std::size_t i) {
  check_agent(cfg, i);
  validate_profile(cfg, x);
  const double s = total_output(x);
  const double share = s > 0.0 ? x[i] / s : 1.0 / static_cast<double>(cfg.n);
  return share - cfg.costs[i] * x[i];
}

// Best response to opponent mass S at cost c, with floor action a for S = 0.
// The middle branch includes S = 1/c, where it evaluates to 0 (continuity).
inline double best_response_to(double opp, double cost, double floor_action) {
  if (!std::isfinite(opp) || opp < 0.0)
    throw std::invalid_argument("best_response: opponent output must be finite and >= 0");
  if (opp == 0.0) return floor_action;
  if (opp > 1.0 / cost) return 0.0;
  return std::sqrt(opp / cost) - opp;
}

inline double best_response(const ContestConfig& cfg, const ActionProfile& x, std::size_t i) {
  check_agent(cfg, i);
  validate_profile(cfg, x);
  return best_response_to(opponent_output(x, i), cfg.costs[i], cfg.floor_action);
}

// sup_z u_i(z, x_{-i}).  Closed form (1 - sqrt(c_i S))^2 on the interior
// branch; at S = 0 the floor-action convention gives 1 - c_i a.
inline double best_deviation_to(double opp, double cost, double floor_action) {
  if (!std::isfinite(opp) || opp < 0.0)
    throw std::invalid_argument("best_deviation: opponent output must be finite and >= 0");
  if (opp == 0.0) return 1.0 - cost * floor_action;
  if (opp > 1.0 / cost) return 0.0;
  const double r = 1.0 - std::sqrt(cost * opp);
  return r * r;
}

inline double best_deviation_utility(const ContestConfig& cfg, const ActionProfile& x,
                                     std::size_t i) {
  check_agent(cfg, i);
  validate_profile(cfg, x);
  return best_deviation_to(opponent_output(x, i), cfg.costs[i], cfg.floor_action);
}

// Symmetric equilibrium x*_i = (n-1)/(n^2 c); homogeneous costs only.
inline ActionProfile equilibrium_profile(const ContestConfig& cfg) {
  if (!cfg.homogeneous())
    throw std::invalid_argument("equilibrium_profile: requires homogeneous costs");
  const double n = static_cast<double>(cfg.n);
  return ActionProfile(cfg.n, (n - 1.0) / (n * n * cfg.costs.front()));
}

// Smallest eps >= 0 with u_i(x) >= (1 - eps) * sup_z u_i(z, x_{-i}) for all i.
// Degenerate case: deviation payoff 0 contributes 0 if u_i >= 0, +inf otherwise.
//
// O(n): opponent masses come from one total, clamped at 0 against roundoff.
inline double epsilon_gap(const ContestConfig& cfg, const ActionProfile& x) {
  validate_profile(cfg, x);
  const double s = total_output(x);
  double worst = 0.0;
  for (std::size_t i = 0; i < cfg.n; ++i) {
    const double c = cfg.costs[i];
    const double share = s > 0.0 ? x[i] / s : 1.0 / static_cast<double>(cfg.n);
    const double u = share - c * x[i];
    const double opp = std::max(s - x[i], 0.0);
    const double d = best_deviation_to(opp, c, cfg.floor_action);
    if (d > 0.0) {
      worst = std::max(worst, 1.0 - u / d);
    } else if (u < 0.0) {
      return std::numeric_limits<double>::infinity();
    }
  }
  return worst;
}

inline bool is_epsilon_equilibrium(const ContestConfig& cfg, const ActionProfile& x,
                                   double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("is_epsilon_equilibrium: eps must be > 0");
  return epsilon_gap(cfg, x) <= eps;
}

// Change of variable to the unit-cost game: y = c x, a' = c a.  The dynamics
// of y under the new config mirror those of x under the old one.
inline std::pair<ContestConfig, ActionProfile> rescale_unit_cost(const ContestConfig& cfg,
                                                                 const ActionProfile& x) {
  if (!cfg.homogeneous())
    throw std::invalid_argument("rescale_unit_cost: requires homogeneous costs");
  validate_profile(cfg, x);
  const double c = cfg.costs.front();
  ActionProfile y(cfg.n);
  for (std::size_t i = 0; i < cfg.n; ++i) y[i] = c * x[i];
  return {ContestConfig::homogeneous_config(cfg.n, 1.0, c * cfg.floor_action), y};
}

}  // namespace tullock
