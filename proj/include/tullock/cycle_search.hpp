#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "tullock/contest.hpp"
#include "tullock/dynamics.hpp"

// Search for floor actions `a` that make the two-agent game with costs
// (1, c) cycle.  The reversed dynamics inverts each best-response move with
// the smaller root of
//   x2' = sqrt(x1 / c) - x1   =>   x1 = (1 - sqrt(1 - 4 c x2'))^2 / (4 c)
//   x1' = sqrt(x2) - x2       =>   x2 = (1 - sqrt(1 - 4 x1'))^2 / 4
// and pulls the overshoot set {x2 >= 1} backwards through the climb.  Every
// candidate is re-validated by forward simulation from (0, a).

namespace tullock {

struct CycleInterval {
  double lo = 0.0;
  double hi = 0.0;       // a in [lo, hi] predicts a cycle
  std::size_t period = 0;

  bool contains(double a) const { return a >= lo && a <= hi; }
};

namespace detail {
// smaller-root inverse of agent 2's move (cost c); 1 - sqrt(1-x) is computed
// as x / (1 + sqrt(1-x)) so deep pullbacks keep full relative precision
inline double invert_strong_move(double next_value, double c) {
  const double x = 4.0 * c * next_value;
  if (x > 1.0) throw std::domain_error("invert_strong_move: value beyond branch vertex");
  const double r = x / (1.0 + std::sqrt(1.0 - x));
  return r * r / (4.0 * c);
}

// smaller-root inverse of agent 1's move (cost 1)
inline double invert_weak_move(double next_value) { return invert_strong_move(next_value, 1.0); }
}  // namespace detail

// Intervals of a-values predicted to cycle, ordered by increasing period
// (2k + 2 for the k-th pullback).  Empty when c > 4/25 leaves no reachable
// overshoot: the climb tops out at x1 = 1/4, and BR2(1/4) >= 1 needs
// c <= 4/25.
inline std::vector<CycleInterval> cycle_candidate_intervals(double c, std::size_t max_k = 64,
                                                            double lo_cutoff = 1e-300) {
  if (!(c > 0.0) || !(c <= 1.0))
    throw std::invalid_argument("cycle_candidate_intervals: need 0 < c <= 1");
  std::vector<CycleInterval> out;
  if (!(c <= 0.25)) return out;  // overshoot impossible: max BR2 value is 1/(4c) < 1
  // u0: agent-1 values whose strong response overshoots, clipped to the
  // reachable climb range (0, 1/4].  The comparison carries a few ulps of
  // slack: at c = 4/25 the interval degenerates to exactly {1/4} and the
  // inversion rounds one ulp high.
  const double u0_lo = detail::invert_strong_move(1.0, c);
  const double u0_hi = 0.25;
  if (u0_lo > u0_hi * (1.0 + 1e-12)) return out;

  double ulo = std::min(u0_lo, u0_hi), uhi = u0_hi;
  for (std::size_t k = 1; k <= max_k; ++k) {
    // pull the u-interval back through agent 1's move: candidate a values
    const double vlo = detail::invert_weak_move(ulo);
    const double vhi = detail::invert_weak_move(uhi);
    out.push_back({vlo, vhi, 2 * k + 2});
    if (vlo < lo_cutoff || vlo == 0.0) break;
    // and back through agent 2's move for the next round
    ulo = detail::invert_strong_move(vlo, c);
    uhi = detail::invert_strong_move(vhi, c);
  }
  return out;
}

struct CycleSearchResult {
  double a = 0.0;
  std::optional<std::size_t> predicted_period;  // from interval membership
  std::optional<CycleReport> validated;         // forward simulation outcome
};

inline CycleSearchResult validate_cycle_candidate(double c, double a,
                                                  std::size_t max_steps = 20000) {
  CycleSearchResult res;
  res.a = a;
  ContestConfig cfg(2, {1.0, c}, a);
  auto traj = run(cfg, {0.0, a}, RoundRobin{}, {.eps = 1e-30, .max_steps = max_steps});
  if (traj.outcome == OutcomeKind::CycleDetected) res.validated = traj.cycle;
  return res;
}

// Check each a value against the candidate intervals and confirm by forward
// simulation; also probes the midpoint of every interval that meets [lo, hi]
// of the probed values, since log grids rarely land inside narrow intervals.
inline std::vector<CycleSearchResult> search_cycles(double c, const std::vector<double>& a_values,
                                                    std::size_t max_steps = 20000) {
  auto intervals = cycle_candidate_intervals(c);
  std::vector<CycleSearchResult> out;
  for (double a : a_values) {
    auto res = validate_cycle_candidate(c, a, max_steps);
    for (const auto& iv : intervals)
      if (iv.contains(a)) res.predicted_period = iv.period;
    out.push_back(res);
  }
  return out;
}

}  // namespace tullock
