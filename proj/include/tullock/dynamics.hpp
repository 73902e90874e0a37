#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "tullock/contest.hpp"
#include "tullock/potential.hpp"
#include "tullock/rng.hpp"

// Sequential best-response dynamics: one agent re-optimizes per time step,
// selected by a policy.  Runs record totals, gaps, movers and (for
// homogeneous games) the potential, and stop on convergence, a detected
// cycle, or step exhaustion.

namespace tullock {

// ---------------------------------------------------------------------------
// Selection policies

struct Uniform {};

struct RoundRobin {
  // mover at time t is (t + offset) mod n; offset 0 matches the plain cycle,
  // offset 1 gives the two-agent alternation where agent 1 responds first.
  std::size_t offset = 0;
};

struct Lexicographic {
  double threshold;  // move only if the utility gain strictly exceeds this
};

struct MyopicWorst {
  double threshold;
};

struct MyopicBest {};

// WeightedCustom emits a probability vector over agents at each step,
// bounded by 0 < L <= U < 1/2: every entry <= U, and every entry >= L
// except possibly the previous mover's.
struct WeightedCustom {
  using WeightFn = std::function<std::vector<double>(
      std::size_t t, const ActionProfile& x, std::optional<std::size_t> prev_mover)>;
  WeightFn weights;
  double lower_bound;  // L
  double upper_bound;  // U
};

using SelectionPolicy =
    std::variant<Uniform, RoundRobin, Lexicographic, MyopicWorst, MyopicBest, WeightedCustom>;

inline bool is_randomized(const SelectionPolicy& p) {
  return std::holds_alternative<Uniform>(p) || std::holds_alternative<WeightedCustom>(p);
}

inline bool cycle_detection_applies(const SelectionPolicy& p) {
  return std::holds_alternative<RoundRobin>(p);
}

// ---------------------------------------------------------------------------
// Run parameters and recorded trajectory

struct DynamicsParams {
  double eps;                   // target approximation, checked every step
  std::size_t max_steps = 1'000'000;
  std::uint64_t seed = 0;
  bool record_full = false;     // keep every profile (else just the final one)
};

struct CycleReport {
  std::size_t entry_time = 0;
  std::size_t period = 0;
  std::vector<ActionProfile> cycle_states;
};

enum class OutcomeKind { Converged, CycleDetected, Exhausted };

inline const char* outcome_name(OutcomeKind k) {
  switch (k) {
    case OutcomeKind::Converged: return "converged";
    case OutcomeKind::CycleDetected: return "cycle";
    case OutcomeKind::Exhausted: return "exhausted";
  }
  return "?";
}

struct Trajectory {
  std::vector<ActionProfile> profiles;  // full history iff record_full
  std::vector<std::size_t> movers;      // i_t for t = 0..steps-1
  std::vector<double> totals;           // s_t for t = 0..steps
  std::vector<double> potentials;       // f(c x_t), homogeneous games only
  std::vector<double> gaps;             // epsilon_gap(x_t) for t = 0..steps
  std::optional<std::size_t> warmup_end;
  ActionProfile final_profile;
  OutcomeKind outcome = OutcomeKind::Exhausted;
  std::size_t steps = 0;
  std::optional<CycleReport> cycle;
  bool stalled = false;          // policy found no mover while gap > eps
  bool bounds_warning = false;   // e.g. Uniform with n = 2 breaks U < 1/2
};

// ---------------------------------------------------------------------------
// One transition

inline ActionProfile step(const ContestConfig& cfg, const ActionProfile& x, std::size_t mover) {
  check_agent(cfg, mover);
  validate_profile(cfg, x);
  ActionProfile y = x;
  y[mover] = best_response_to(opponent_output(x, mover), cfg.costs[mover], cfg.floor_action);
  return y;
}

// Utility gain available to agent i by best responding.
inline double improvement(const ContestConfig& cfg, const ActionProfile& x, std::size_t i) {
  return best_deviation_utility(cfg, x, i) - utility(cfg, x, i);
}

inline void validate_weights(const WeightedCustom& wc, const std::vector<double>& w,
                             std::size_t n, std::optional<std::size_t> prev) {
  if (!(wc.lower_bound > 0.0 && wc.lower_bound <= wc.upper_bound && wc.upper_bound < 0.5))
    throw std::invalid_argument("WeightedCustom: need 0 < L <= U < 1/2");
  if (w.size() != n) throw std::invalid_argument("WeightedCustom: weight vector size != n");
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sum += w[i];
    if (w[i] > wc.upper_bound + 1e-12)
      throw std::invalid_argument("WeightedCustom: weight above U");
    const bool exempt = prev.has_value() && *prev == i;
    if (!exempt && w[i] < wc.lower_bound - 1e-12)
      throw std::invalid_argument("WeightedCustom: weight below L for non-previous mover");
  }
  if (std::abs(sum - 1.0) > 1e-12)
    throw std::invalid_argument("WeightedCustom: weights must sum to 1");
}

// Pick the mover at time t; nullopt signals policy-level termination
// (no agent clears the improvement threshold).
inline std::optional<std::size_t> select_mover(const SelectionPolicy& policy,
                                               const ContestConfig& cfg,
                                               const ActionProfile& x, std::size_t t,
                                               std::optional<std::size_t> prev_mover,
                                               SplitMix64& rng) {
  struct Visitor {
    const ContestConfig& cfg;
    const ActionProfile& x;
    std::size_t t;
    std::optional<std::size_t> prev;
    SplitMix64& rng;

    std::optional<std::size_t> operator()(const Uniform&) { return rng.next_index(cfg.n); }

    std::optional<std::size_t> operator()(const RoundRobin& rr) {
      return (t + rr.offset) % cfg.n;
    }

    std::optional<std::size_t> operator()(const Lexicographic& lex) {
      for (std::size_t i = 0; i < cfg.n; ++i)
        if (improvement(cfg, x, i) > lex.threshold) return i;
      return std::nullopt;
    }

    std::optional<std::size_t> operator()(const MyopicWorst& mw) {
      std::optional<std::size_t> best;
      double best_gain = 0.0;
      for (std::size_t i = 0; i < cfg.n; ++i) {
        const double gain = improvement(cfg, x, i);
        if (gain > mw.threshold && (!best || gain < best_gain)) {
          best = i;
          best_gain = gain;
        }
      }
      return best;
    }

    std::optional<std::size_t> operator()(const MyopicBest&) {
      std::size_t best = 0;
      double best_gain = improvement(cfg, x, 0);
      for (std::size_t i = 1; i < cfg.n; ++i) {
        const double gain = improvement(cfg, x, i);
        if (gain > best_gain) {
          best = i;
          best_gain = gain;
        }
      }
      return best;
    }

    std::optional<std::size_t> operator()(const WeightedCustom& wc) {
      std::vector<double> w = wc.weights(t, x, prev);
      validate_weights(wc, w, cfg.n, prev);
      return rng.next_categorical(w);
    }
  };
  return std::visit(Visitor{cfg, x, t, prev_mover, rng}, policy);
}

// ---------------------------------------------------------------------------
// Cycle detection: profiles hashed after rounding every coordinate to 12
// significant digits, keyed together with the schedule phase so a revisited
// profile implies a genuine cycle of the deterministic dynamics.

namespace detail {
inline std::string rounded_key(const ActionProfile& x, std::size_t phase) {
  std::string key = std::to_string(phase);
  char buf[32];
  for (double v : x) {
    if (v == 0.0) v = 0.0;  // normalize -0
    std::snprintf(buf, sizeof(buf), "|%.11e", v);
    key += buf;
  }
  return key;
}
}  // namespace detail

// A rounded-key collision is only a candidate: genuine cycles re-enter the
// exact same doubles once the orbit passes a floor reset, while a slowly
// converging run can produce 12-digit collisions between distinct states.
inline bool profiles_exactly_close(const ActionProfile& a, const ActionProfile& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (std::abs(a[i] - b[i]) > 1e-13 * std::max(1.0, std::abs(a[i]))) return false;
  return true;
}

class CycleDetector {
 public:
  explicit CycleDetector(std::size_t phase_modulus)
      : modulus_(phase_modulus ? phase_modulus : 1),
        max_states_(std::max<std::size_t>(4096, (64u << 20) / (24 * modulus_ + 64))) {}

  // Feed the state at time t; returns a report on the first exact revisit.
  std::optional<CycleReport> observe(std::size_t t, const ActionProfile& x) {
    if (history_.size() >= max_states_) return std::nullopt;  // memory cap
    const auto key = detail::rounded_key(x, t % modulus_);
    auto [it, inserted] = seen_.try_emplace(key, t);
    history_.push_back(x);
    if (inserted) return std::nullopt;
    if (!profiles_exactly_close(history_[it->second], x)) return std::nullopt;
    CycleReport report;
    report.entry_time = it->second;
    report.period = t - it->second;
    report.cycle_states.assign(history_.begin() + static_cast<std::ptrdiff_t>(report.entry_time),
                               history_.begin() + static_cast<std::ptrdiff_t>(t));
    return report;
  }

 private:
  std::size_t modulus_;
  std::size_t max_states_;
  std::unordered_map<std::string, std::size_t> seen_;
  std::vector<ActionProfile> history_;
};

// Replay a recorded profile sequence (profiles[t] is the state at time t).
inline std::optional<CycleReport> detect_cycle(const std::vector<ActionProfile>& profiles,
                                               std::size_t phase_modulus) {
  CycleDetector det(phase_modulus);
  for (std::size_t t = 0; t < profiles.size(); ++t)
    if (auto rep = det.observe(t, profiles[t])) return rep;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Warm-up phase (homogeneous games, conditions in the unit-cost frame):
//   1. every output is at most 1/4
//   2. at least two agents are strictly positive
//   3. the total output is strictly below 1

inline bool warmup_conditions_hold(const ContestConfig& cfg, const ActionProfile& x) {
  const double c = cfg.costs.front();
  std::size_t positive = 0;
  double total = 0.0;
  for (double v : x) {
    const double y = c * v;
    if (y > 0.25) return false;
    if (y > 0.0) ++positive;
    total += y;
  }
  return positive >= 2 && total < 1.0;
}

// First time the warm-up conditions hold along a recorded run.
inline std::optional<std::size_t> warmup_end(const ContestConfig& cfg,
                                             const std::vector<ActionProfile>& profiles) {
  if (!cfg.homogeneous())
    throw std::invalid_argument("warmup_end: requires homogeneous costs");
  for (std::size_t t = 0; t < profiles.size(); ++t)
    if (warmup_conditions_hold(cfg, profiles[t])) return t;
  return std::nullopt;
}

inline std::optional<std::size_t> warmup_end(const ContestConfig& cfg, const Trajectory& traj) {
  return warmup_end(cfg, traj.profiles);
}

// ---------------------------------------------------------------------------
// Full run.  Convergence (epsilon_gap <= eps) is checked at every time step
// including t = 0; cycle detection runs only under deterministic RoundRobin
// schedules; movers, totals and gaps are always recorded, potentials for
// homogeneous games, full profiles only when params.record_full.

inline Trajectory run(const ContestConfig& cfg, const ActionProfile& x0,
                      const SelectionPolicy& policy, const DynamicsParams& params) {
  validate_profile(cfg, x0);
  if (!(params.eps > 0.0)) throw std::invalid_argument("run: eps must be > 0");
  if (params.max_steps < 1) throw std::invalid_argument("run: max_steps must be >= 1");

  const bool homogeneous = cfg.homogeneous();
  const double cost = cfg.costs.front();
  SplitMix64 rng(params.seed);
  // Cycles require a deterministic schedule; homogeneous games with n >= 3
  // cannot cycle (the potential strictly decreases), so skip hashing there.
  std::optional<CycleDetector> detector;
  if (cycle_detection_applies(policy) && (!homogeneous || cfg.n == 2)) detector.emplace(cfg.n);

  Trajectory traj;
  traj.bounds_warning = std::holds_alternative<Uniform>(policy) && cfg.n == 2;
  traj.totals.reserve(256);
  traj.gaps.reserve(256);

  ActionProfile x = x0;
  ActionProfile scaled(cfg.n);  // unit-cost view, for warm-up and potential
  std::optional<std::size_t> prev_mover;

  auto record_state = [&](std::size_t t) {
    traj.totals.push_back(total_output(x));
    traj.gaps.push_back(epsilon_gap(cfg, x));
    if (params.record_full) traj.profiles.push_back(x);
    if (homogeneous) {
      for (std::size_t i = 0; i < cfg.n; ++i) scaled[i] = cost * x[i];
      traj.potentials.push_back(potential(scaled));
      if (!traj.warmup_end && warmup_conditions_hold(cfg, x)) traj.warmup_end = t;
    }
  };

  record_state(0);
  if (detector) detector->observe(0, x);

  for (std::size_t t = 0;; ++t) {
    if (traj.gaps.back() <= params.eps) {
      traj.outcome = OutcomeKind::Converged;
      traj.steps = t;
      break;
    }
    if (t == params.max_steps) {
      traj.outcome = OutcomeKind::Exhausted;
      traj.steps = t;
      break;
    }
    const auto mover = select_mover(policy, cfg, x, t, prev_mover, rng);
    if (!mover) {
      traj.outcome = OutcomeKind::Exhausted;
      traj.stalled = true;
      traj.steps = t;
      break;
    }
    x[*mover] = best_response_to(opponent_output(x, *mover), cfg.costs[*mover], cfg.floor_action);
    traj.movers.push_back(*mover);
    prev_mover = *mover;
    record_state(t + 1);
    // Convergence wins over a revisit of the same state.
    if (detector && traj.gaps.back() > params.eps) {
      if (auto rep = detector->observe(t + 1, x)) {
        traj.outcome = OutcomeKind::CycleDetected;
        traj.cycle = std::move(rep);
        traj.steps = t + 1;
        break;
      }
    }
  }
  traj.final_profile = x;
  return traj;
}

}  // namespace tullock
