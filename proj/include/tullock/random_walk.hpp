#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "tullock/rng.hpp"

// The biased random walk with a wall at state 1: from state 1 the chain stays
// w.p. 1-p and moves to 2 w.p. p; from i >= 2 it moves left w.p. 1-p and
// right w.p. p.  Models the interval index of the total output.  Also houses
// the coupled free walk used in the visit-count proof and coupon-collector
// coverage statistics for selection traces.

namespace tullock {

struct WalkConfig {
  double p = 0.0;        // probability of moving right, p < 1/2
  std::int64_t start = 1;

  WalkConfig(double right_prob, std::int64_t k) : p(right_prob), start(k) {
    if (!(p >= 0.0) || !(p < 0.5)) throw std::invalid_argument("WalkConfig: need 0 <= p < 1/2");
    if (start < 1) throw std::invalid_argument("WalkConfig: need start >= 1");
  }
};

struct WalkPath {
  std::vector<std::int64_t> states;  // y_0..y_horizon
  std::int64_t visits_to_one = 0;    // |{t >= 1 : y_t = 1}|, post-transition
};

inline WalkPath simulate_walk(const WalkConfig& cfg, std::size_t horizon, SplitMix64& rng) {
  WalkPath path;
  path.states.reserve(horizon + 1);
  std::int64_t y = cfg.start;
  path.states.push_back(y);
  for (std::size_t t = 0; t < horizon; ++t) {
    if (rng.next_bernoulli(cfg.p))
      ++y;
    else
      y = std::max<std::int64_t>(1, y - 1);
    path.states.push_back(y);
    if (y == 1) ++path.visits_to_one;
  }
  return path;
}

// Horizon after which the chain has visited state 1 at least m times w.p.
// >= 1 - delta:  ceil( 4/(1-2p) * max(m + k, ln(1/delta)/(1-2p)) ).
inline std::int64_t lemma_visit_bound(double p, std::int64_t k, std::int64_t m, double delta) {
  if (!(p >= 0.0) || !(p < 0.5)) throw std::invalid_argument("lemma_visit_bound: 0 <= p < 1/2");
  if (k < 1 || m < 1) throw std::invalid_argument("lemma_visit_bound: need k, m >= 1");
  if (!(delta > 0.0) || !(delta < 1.0))
    throw std::invalid_argument("lemma_visit_bound: delta in (0, 1)");
  const double drift = 1.0 - 2.0 * p;
  const double raw =
      4.0 / drift * std::max(static_cast<double>(m + k), std::log(1.0 / delta) / drift);
  return static_cast<std::int64_t>(std::ceil(raw));
}

// Fraction of `trials` independent walks whose visit count reaches m within
// `horizon` steps.  Trial r runs on its own derived stream.
inline double empirical_visit_success(const WalkConfig& cfg, std::int64_t m, std::size_t horizon,
                                      std::size_t trials, std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("empirical_visit_success: trials >= 1");
  std::size_t hits = 0;
  for (std::size_t r = 0; r < trials; ++r) {
    SplitMix64 rng(derive_seed(seed, r));
    std::int64_t y = cfg.start;
    std::int64_t visits = 0;
    for (std::size_t t = 0; t < horizon && visits < m; ++t) {
      if (rng.next_bernoulli(cfg.p))
        ++y;
      else
        y = std::max<std::int64_t>(1, y - 1);
      if (y == 1) ++visits;
    }
    if (visits >= m) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(trials);
}

// Walled and free walks driven by the same coin flips; the free walk may go
// below 1, and the walled one dominates it pointwise.
inline std::pair<WalkPath, std::vector<std::int64_t>> coupled_free_walk(const WalkConfig& cfg,
                                                                        std::size_t horizon,
                                                                        SplitMix64& rng) {
  WalkPath walled;
  walled.states.reserve(horizon + 1);
  std::vector<std::int64_t> free_states;
  free_states.reserve(horizon + 1);
  std::int64_t y = cfg.start, z = cfg.start;
  walled.states.push_back(y);
  free_states.push_back(z);
  for (std::size_t t = 0; t < horizon; ++t) {
    if (rng.next_bernoulli(cfg.p)) {
      ++y;
      ++z;
    } else {
      y = std::max<std::int64_t>(1, y - 1);
      --z;
    }
    walled.states.push_back(y);
    free_states.push_back(z);
    if (y == 1) ++walled.visits_to_one;
  }
  return {std::move(walled), std::move(free_states)};
}

// First index t with {trace[0..t]} = [n], or nullopt if coverage never
// completes within the trace.
inline std::optional<std::size_t> coverage_time(const std::vector<std::size_t>& trace,
                                                std::size_t n) {
  if (n == 0) throw std::invalid_argument("coverage_time: n must be > 0");
  std::vector<char> seen(n, 0);
  std::size_t covered = 0;
  for (std::size_t t = 0; t < trace.size(); ++t) {
    if (trace[t] >= n) throw std::invalid_argument("coverage_time: index out of range");
    if (!seen[trace[t]]) {
      seen[trace[t]] = 1;
      if (++covered == n) return t;
    }
  }
  return std::nullopt;
}

}  // namespace tullock
