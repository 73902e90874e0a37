#pragma once

#include <cmath>
#include <cstdarg>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "tullock/contest.hpp"
#include "tullock/cycle_search.hpp"
#include "tullock/dynamics.hpp"
#include "tullock/experiments.hpp"
#include "tullock/potential.hpp"
#include "tullock/random_walk.hpp"
#include "tullock/rng.hpp"

// Executable forms of every module's numeric invariants, shared by the CLI
// `verify` subcommand and the test suites.  `quick` shrinks the Monte Carlo
// sample counts for smoke runs; the defaults match the stated sizes.

namespace tullock::verify {

struct CheckResult {
  std::string module;
  std::string name;
  bool pass = true;
  std::string detail;
};

using CheckList = std::vector<CheckResult>;

namespace detail {

inline std::string fmt(const char* f, ...) {
  char buf[256];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof(buf), f, ap);
  va_end(ap);
  return buf;
}

inline double gaussian(SplitMix64& rng) {
  // Box-Muller; the log argument is bounded away from 0
  const double u1 = rng.next_double() + 1e-18;
  const double u2 = rng.next_double();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
}

inline ActionProfile random_simplex_profile(SplitMix64& rng, std::size_t n, double sigma) {
  ActionProfile x(n);
  double sum = 0.0;
  for (auto& v : x) sum += (v = rng.next_double() + 1e-9);
  for (auto& v : x) v *= sigma / sum;
  return x;
}

// First index with z_t >= 1/2 - eps.  For eps below double resolution the
// threshold rounds to exactly 1/2 while the sequence can park one ulp under
// it (a genuine fixed point of the rounded recurrence); entering that fixed
// point then counts as the crossing.
inline std::optional<std::size_t> crossing_time(const std::vector<double>& z, double eps) {
  const double threshold = 0.5 - eps;
  for (std::size_t t = 0; t < z.size(); ++t)
    if (z[t] >= threshold) return t;
  if (z.size() >= 2 && z.back() == z[z.size() - 2]) {
    for (std::size_t t = 0; t < z.size(); ++t)
      if (z[t] == z.back()) return t;
  }
  return std::nullopt;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// contest_core

inline CheckList verify_contest_core(bool quick = false) {
  CheckList checks;
  const std::size_t samples = quick ? 10'000 : 1'000'000;

  {  // best-response optimality against a dense grid on [0, 1/c]
    SplitMix64 rng(101);
    std::size_t violations = 0;
    double worst = 0.0;
    for (std::size_t trial = 0; trial < samples; ++trial) {
      const double c = 0.1 + 9.9 * rng.next_double();
      const std::size_t n = 2 + rng.next_index(5);
      double opp = 0.0;
      for (std::size_t j = 0; j + 1 < n; ++j)
        opp += rng.next_double() < 0.2 ? 0.0 : 2.0 * rng.next_double();
      if (opp <= 0.0) continue;
      const double br = best_response_to(opp, c, 0.01);
      const double at_br = br / (br + opp) - c * br;
      for (int k = 0; k <= 64; ++k) {
        const double z = static_cast<double>(k) / 64.0 / c;
        const double u = (z + opp) > 0.0 ? z / (z + opp) - c * z : 0.0;
        if (u > at_br + 1e-12) {
          ++violations;
          worst = std::max(worst, u - at_br);
        }
      }
    }
    checks.push_back({"contest_core", "best-response optimality vs grid", violations == 0,
                      detail::fmt("%zu samples, %zu violations, worst excess %.3e", samples,
                                  violations, worst)});
  }

  {  // deviation payoff: equals utility at BR (1e-12), matches grid max (1e-6)
    SplitMix64 rng(102);
    const std::size_t grid_samples = quick ? 20 : 300;
    std::size_t eq_viol = 0, grid_viol = 0;
    for (std::size_t trial = 0; trial < (quick ? 2'000 : 200'000); ++trial) {
      const double c = 0.1 + 3.9 * rng.next_double();
      const double opp = 0.01 + 2.0 * rng.next_double();
      const double dev = best_deviation_to(opp, c, 0.01);
      const double br = best_response_to(opp, c, 0.01);
      const double at_br = br / (br + opp) - c * br;
      if (std::abs(dev - at_br) > 1e-12) ++eq_viol;
    }
    for (std::size_t trial = 0; trial < grid_samples; ++trial) {
      const double c = 0.1 + 3.9 * rng.next_double();
      const double opp = 0.05 + rng.next_double();
      if (opp > 1.0 / c) continue;
      const double dev = best_deviation_to(opp, c, 0.01);
      double grid_max = 0.0;
      const double hi = 1.0 / c;
      const long points = 200'000;
      for (long k = 0; k <= points; ++k) {
        const double z = hi * static_cast<double>(k) / static_cast<double>(points);
        grid_max = std::max(grid_max, z / (z + opp) - c * z);
      }
      if (std::abs(dev - grid_max) > 1e-6) ++grid_viol;
    }
    checks.push_back({"contest_core", "deviation payoff = utility at BR = grid max",
                      eq_viol == 0 && grid_viol == 0,
                      detail::fmt("%zu closed-form violations, %zu grid violations", eq_viol,
                                  grid_viol)});
  }

  {  // continuity at the S = 1/c branch boundary
    std::size_t viol = 0;
    for (double c = 0.05; c <= 10.0; c += 0.05)
      if (std::abs(best_response_to(1.0 / c, c, 0.01)) > 1e-12) ++viol;
    checks.push_back({"contest_core", "branch continuity at S = 1/c", viol == 0,
                      detail::fmt("%zu violations over c grid", viol)});
  }

  {  // epsilon_gap at the exact equilibrium
    double worst = 0.0;
    for (std::size_t n = 2; n <= 50; ++n) {
      for (double c : {0.2, 1.0, 3.0}) {
        auto cfg = ContestConfig::homogeneous_config(n, c, 0.01);
        worst = std::max(worst, epsilon_gap(cfg, equilibrium_profile(cfg)));
      }
    }
    checks.push_back({"contest_core", "gap(equilibrium) <= 1e-12 for n in 2..50", worst <= 1e-12,
                      detail::fmt("worst gap %.3e", worst)});
  }

  {  // rescaling commutes with one dynamics step
    SplitMix64 rng(103);
    std::size_t viol = 0;
    for (std::size_t trial = 0; trial < (quick ? 500 : 50'000); ++trial) {
      const std::size_t n = 2 + rng.next_index(5);
      const double c = 0.25 + 3.75 * rng.next_double();
      auto cfg = ContestConfig::homogeneous_config(n, c, 0.2 * std::min(1.0, 1.0 / c));
      ActionProfile x(n);
      for (auto& v : x) v = rng.next_double() < 0.2 ? 0.0 : rng.next_double() / c;
      const std::size_t i = rng.next_index(n);
      auto [unit_a, y_of_step] = rescale_unit_cost(cfg, step(cfg, x, i));
      auto [unit_b, y] = rescale_unit_cost(cfg, x);
      auto step_of_y = step(unit_b, y, i);
      for (std::size_t j = 0; j < n; ++j)
        if (std::abs(y_of_step[j] - step_of_y[j]) > 1e-12) ++viol;
    }
    checks.push_back({"contest_core", "rescale commutes with step", viol == 0,
                      detail::fmt("%zu coordinate violations", viol)});
  }

  return checks;
}

// ---------------------------------------------------------------------------
// dynamics_engine

namespace detail {

struct DynamicsLawStats {
  std::size_t runs = 0;
  std::size_t persistence_viol = 0;
  std::size_t floor_viol = 0;
  std::size_t ratio_viol = 0;
  std::size_t drift_viol = 0;
  std::size_t no_warmup = 0;
};

// Seeded runs with initial profiles that violate at least one warm-up
// condition at t = 0 (the per-step laws assume a pre-warm-up move exists).
inline ActionProfile law_initial_profile(SplitMix64& rng, std::size_t n, double a) {
  ActionProfile x0(n, 0.0);
  switch (rng.next_index(4)) {
    case 0:  // lone floor holder
      x0[0] = a;
      break;
    case 1:  // everyone large
      for (auto& v : x0) v = 1.0 + rng.next_double();
      break;
    case 2:  // one oversized coordinate among small ones
      for (auto& v : x0) v = 0.1 * rng.next_double();
      x0[rng.next_index(n)] = 0.3 + 1.7 * rng.next_double();
      break;
    default:  // single positive coordinate
      x0[rng.next_index(n)] = 0.5 * rng.next_double() + 1e-6;
      break;
  }
  return x0;
}

inline void check_dynamics_laws(const ContestConfig& cfg, const Trajectory& traj,
                                const ActionProfile& x0, DynamicsLawStats& stats) {
  ++stats.runs;
  if (!traj.warmup_end) {
    ++stats.no_warmup;
    return;
  }
  const std::size_t tw = *traj.warmup_end;
  const double sqrt3_2 = std::sqrt(3.0) / 2.0;
  for (std::size_t t = tw; t < traj.profiles.size(); ++t)
    if (!warmup_conditions_hold(cfg, traj.profiles[t])) ++stats.persistence_viol;
  if (traj.totals[tw] < gamma_n_agent(x0, cfg.floor_action)) ++stats.floor_viol;
  for (std::size_t t = tw; t + 1 < traj.totals.size(); ++t) {
    if (traj.totals[t + 1] / traj.totals[t] < sqrt3_2 - 1e-12) ++stats.ratio_viol;
    const int before = interval_index(traj.totals[t]).index;
    const int after = interval_index(traj.totals[t + 1]).index;
    if (after > before + 1) ++stats.drift_viol;
  }
}

}  // namespace detail

inline CheckList verify_dynamics(bool quick = false) {
  CheckList checks;
  const std::size_t runs = quick ? 50 : 1000;

  {  // warm-up persistence, output floor, ratio bound, interval drift
    detail::DynamicsLawStats stats;
    SplitMix64 rng(201);
    for (std::size_t r = 0; r < runs; ++r) {
      const std::size_t n = 2 + rng.next_index(7);
      const double a = 1e-6 + 0.2 * rng.next_double();
      auto cfg = ContestConfig::homogeneous_config(n, 1.0, a);
      auto x0 = detail::law_initial_profile(rng, n, a);
      SelectionPolicy policy = RoundRobin{};
      if (n >= 3) {
        const auto pick = rng.next_index(3);
        if (pick == 1) policy = Uniform{};
        if (pick == 2) policy = MyopicBest{};
      }
      auto traj = run(cfg, x0, policy,
                      {.eps = 1e-8, .max_steps = 200'000, .seed = derive_seed(777, r),
                       .record_full = true});
      detail::check_dynamics_laws(cfg, traj, x0, stats);
    }
    const bool pass = stats.persistence_viol == 0 && stats.floor_viol == 0 &&
                      stats.ratio_viol == 0 && stats.drift_viol == 0 && stats.no_warmup == 0;
    checks.push_back(
        {"dynamics_engine", "warm-up absorbing / s floor / ratio / interval drift", pass,
         detail::fmt("%zu runs: %zu persistence, %zu floor, %zu ratio, %zu drift, %zu no-warmup",
                     stats.runs, stats.persistence_viol, stats.floor_viol, stats.ratio_viol,
                     stats.drift_viol, stats.no_warmup)});
  }

  {  // determinism: identical inputs give bit-identical trajectories
    bool pass = true;
    for (std::uint64_t seed = 1; seed <= (quick ? 3u : 20u); ++seed) {
      auto cfg = ContestConfig::homogeneous_config(5, 1.0, 1e-7);
      ActionProfile x0{1e-7, 0.0, 0.0, 0.0, 0.0};
      DynamicsParams params{.eps = 1e-10, .max_steps = 100'000, .seed = seed,
                            .record_full = true};
      auto a = run(cfg, x0, Uniform{}, params);
      auto b = run(cfg, x0, Uniform{}, params);
      pass = pass && a.profiles == b.profiles && a.movers == b.movers && a.totals == b.totals &&
             a.gaps == b.gaps && a.steps == b.steps;
    }
    checks.push_back({"dynamics_engine", "bit-identical reruns", pass, ""});
  }

  {  // two-agent alternation reduces to the geometric-mean sequence
    SplitMix64 rng(202);
    std::size_t viol = 0;
    for (std::size_t r = 0; r < (quick ? 10u : 200u); ++r) {
      const double z0 = 1e-4 + 0.45 * rng.next_double();
      const double x01 = z0 * z0;
      auto cfg = ContestConfig::homogeneous_config(2, 1.0, 1e-6);
      auto traj = run(cfg, {x01, 0.0}, RoundRobin{.offset = 1},
                      {.eps = 1e-11, .max_steps = 500, .record_full = true});
      if (traj.outcome != OutcomeKind::Converged) {
        ++viol;
        continue;
      }
      auto z = geometric_mean_sequence(z0, traj.steps);
      for (std::size_t t = 0; t < traj.steps; ++t)
        if (std::abs(std::sqrt(traj.profiles[t + 1][traj.movers[t]]) - z[t + 1]) > 1e-12) ++viol;
    }
    checks.push_back({"dynamics_engine", "two-agent run = geometric-mean sequence", viol == 0,
                      detail::fmt("%zu violations", viol)});
  }

  return checks;
}

// ---------------------------------------------------------------------------
// potential_analysis

inline CheckList verify_potential(bool quick = false) {
  CheckList checks;
  const std::size_t samples = quick ? 10'000 : 1'000'000;

  {  // range and the three potential bounds; the convexity/smoothness items
     // are n >= 3 statements (their 1/2 constants fail at n = 2)
    SplitMix64 rng(301);
    std::size_t range_viol = 0, low_viol = 0, convex_viol = 0, smooth_viol = 0;
    for (std::size_t trial = 0; trial < samples; ++trial) {
      const std::size_t n = 2 + rng.next_index(19);
      const double nn = static_cast<double>(n);
      auto x = detail::random_simplex_profile(rng, n, rng.next_double() * 0.9999);
      const double sigma = total_output(x);
      const double f = potential(x);
      const double ratio = (nn - 1.0) / nn;
      if (f < -1e-15 || f > 0.5) ++range_viol;
      if (sigma <= 0.75 * ratio && f < ratio * ratio * ratio / 40.0 - 1e-12) ++low_viol;
      if (n < 3) continue;
      const double q = (nn - 1.0) / (nn * nn);
      double dist = 0.0, smooth = 0.0, dev_sum = 0.0;
      for (double v : x) dev_sum += v - q;
      for (double v : x) {
        dist += (v - q) * (v - q);
        const double others = dev_sum - (v - q);
        smooth += others * others;
      }
      if (sigma >= 0.75 * ratio && f < 0.5 * dist - 1e-12) ++convex_viol;
      if (f > 0.5 * smooth + 1e-12) ++smooth_viol;
    }
    checks.push_back({"potential_analysis", "0 <= f <= 1/2 and lemma items 3-5",
                      range_viol + low_viol + convex_viol + smooth_viol == 0,
                      detail::fmt("%zu samples: %zu range, %zu low-mass, %zu convexity, "
                                  "%zu smoothness",
                                  samples, range_viol, low_viol, convex_viol, smooth_viol)});
  }

  {  // finite-difference gradient and Hessian eigenvalues
    SplitMix64 rng(302);
    const double h = 1e-5;   // gradient stencil
    const double hh = 3e-5;  // Hessian stencil (no truncation: f is cubic)
    std::size_t grad_viol = 0, eig_viol = 0;
    for (std::size_t trial = 0; trial < (quick ? 20u : 200u); ++trial) {
      const std::size_t n = 2 + rng.next_index(9);
      ActionProfile x;
      for (;;) {  // keep the central differences inside the domain
        x = detail::random_simplex_profile(rng, n, 0.4 + 0.55 * rng.next_double());
        double lo = x[0];
        for (double v : x) lo = std::min(lo, v);
        if (lo > 3.0 * hh) break;
      }
      auto grad = potential_gradient(x);
      for (std::size_t i = 0; i < n; ++i) {
        ActionProfile xp = x, xm = x;
        xp[i] += h;
        xm[i] -= h;
        if (xm[i] < 0.0) continue;
        if (std::abs(grad[i] - (potential(xp) - potential(xm)) / (2.0 * h)) > 1e-6) ++grad_viol;
      }
      auto eigs = potential_hessian_eigs(n, total_output(x));
      double ones_quot = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          ActionProfile xpp = x, xpm = x, xmp = x, xmm = x;
          xpp[i] += hh;
          xpp[j] += hh;
          xpm[i] += hh;
          xpm[j] -= hh;
          xmp[i] -= hh;
          xmp[j] += hh;
          xmm[i] -= hh;
          xmm[j] -= hh;
          ones_quot +=
              (potential(xpp) - potential(xpm) - potential(xmp) + potential(xmm)) / (4.0 * hh * hh);
        }
      }
      if (std::abs(ones_quot / static_cast<double>(n) - eigs.aligned) > 1e-6) ++eig_viol;
    }
    checks.push_back({"potential_analysis", "gradient & Hessian eigs vs finite differences",
                      grad_viol + eig_viol == 0,
                      detail::fmt("%zu gradient, %zu eigenvalue violations", grad_viol, eig_viol)});
  }

  {  // Lipschitz bridge: ||z - z*|| = eps < 1/(n sqrt n) gives gap <= 3 sqrt(n) eps
    SplitMix64 rng(303);
    std::size_t viol = 0;
    const std::size_t trials = quick ? 2'000 : 100'000;
    for (std::size_t trial = 0; trial < trials; ++trial) {
      const std::size_t n = 3 + rng.next_index(18);
      const double nn = static_cast<double>(n);
      auto cfg = ContestConfig::homogeneous_config(n, 1.0, 0.01);
      const double q = (nn - 1.0) / (nn * nn);
      const double eps = rng.next_double() * 0.999 / (nn * std::sqrt(nn));
      ActionProfile z(n);
      for (;;) {
        double norm = 0.0;
        std::vector<double> dir(n);
        for (auto& d : dir) {
          d = detail::gaussian(rng);
          norm += d * d;
        }
        norm = std::sqrt(norm);
        bool ok = true;
        for (std::size_t i = 0; i < n; ++i) {
          z[i] = q + eps * dir[i] / norm;
          if (z[i] < 0.0) ok = false;
        }
        if (ok) break;
      }
      if (epsilon_gap(cfg, z) > 3.0 * std::sqrt(nn) * eps) ++viol;
    }
    checks.push_back({"potential_analysis", "Lipschitz bridge gap <= 3 sqrt(n) eps", viol == 0,
                      detail::fmt("%zu trials, %zu violations", trials, viol)});
  }

  {  // geometric-mean first crossing inside the predicted window
    std::size_t viol = 0;
    for (int kg = 2; kg <= 64; ++kg) {
      for (int ke = 2; ke <= 64; ++ke) {
        const double gamma = std::ldexp(1.0, -kg);
        const double eps = std::ldexp(1.0, -ke);
        auto z = geometric_mean_sequence(gamma, 100);
        const auto cross = detail::crossing_time(z, eps);
        const double predicted =
            std::log2(std::log2(1.0 / gamma)) + std::log2(std::log2(1.0 / eps));
        if (!cross || static_cast<double>(*cross) < predicted - 3.0 ||
            static_cast<double>(*cross) > predicted)
          ++viol;
      }
    }
    checks.push_back({"potential_analysis", "z-sequence crossing in [P-3, P]", viol == 0,
                      detail::fmt("%zu grid violations", viol)});
  }

  return checks;
}

// ---------------------------------------------------------------------------
// random_walk

inline CheckList verify_random_walk(bool quick = false) {
  CheckList checks;

  {  // wall + coupling dominance
    std::size_t viol = 0;
    for (std::uint64_t seed = 0; seed < (quick ? 20u : 500u); ++seed) {
      SplitMix64 rng(derive_seed(401, seed));
      auto [walled, free_states] = coupled_free_walk(WalkConfig(0.35, 3), 300, rng);
      for (std::size_t t = 0; t < walled.states.size(); ++t) {
        if (walled.states[t] < 1) ++viol;
        if (walled.states[t] < free_states[t]) ++viol;
      }
    }
    checks.push_back({"random_walk", "wall invariant and coupling dominance", viol == 0,
                      detail::fmt("%zu violations", viol)});
  }

  {  // Markov-lemma bound across the full grid
    const std::size_t trials = quick ? 500 : 10'000;
    std::size_t failed_cells = 0;
    std::string first_fail;
    for (double p : {0.1, 0.2, 0.3, 0.4}) {
      for (std::int64_t k : {1, 5, 20}) {
        for (std::int64_t m : {1, 10, 50}) {
          for (double delta : {0.05, 0.1}) {
            const auto horizon = lemma_visit_bound(p, k, m, delta);
            const double frac =
                empirical_visit_success(WalkConfig(p, k), m, static_cast<std::size_t>(horizon),
                                        trials, derive_seed(402, k, m));
            if (frac < 1.0 - delta) {
              ++failed_cells;
              if (first_fail.empty())
                first_fail = detail::fmt("p=%.2f k=%lld m=%lld delta=%.2f frac=%.4f", p,
                                         static_cast<long long>(k), static_cast<long long>(m),
                                         delta, frac);
            }
          }
        }
      }
    }
    checks.push_back({"random_walk", "lemma horizon reaches m visits w.p. >= 1-delta",
                      failed_cells == 0,
                      failed_cells == 0 ? detail::fmt("72 cells x %zu trials", trials)
                                        : first_fail});
  }

  {  // dynamics-to-walk reduction under adversarial bounded weights
    const double upper = 0.4, lower = 0.15;
    const std::size_t n = 5;
    WeightedCustom weighted{
        [](std::size_t, const ActionProfile& x, std::optional<std::size_t>) {
          std::size_t big = 0;
          for (std::size_t i = 1; i < x.size(); ++i)
            if (x[i] > x[big]) big = i;
          std::vector<double> w(x.size(), 0.15);
          w[big] = 0.4;
          return w;
        },
        lower, upper};
    std::size_t transitions = 0, good = 0;
    const std::size_t want = quick ? 2'000 : 100'000;
    for (std::uint64_t r = 0; transitions < want && r < 5'000; ++r) {
      auto cfg = ContestConfig::homogeneous_config(n, 1.0, 1e-8);
      ActionProfile x0(n, 0.0);
      x0[0] = 1e-8;
      auto traj = run(cfg, x0, weighted,
                      {.eps = 1e-12, .max_steps = 100'000, .seed = derive_seed(403, r),
                       .record_full = true});
      if (!traj.warmup_end) continue;
      for (std::size_t t = *traj.warmup_end; t + 1 < traj.totals.size(); ++t) {
        const int before = interval_index(traj.totals[t]).index;
        const int after = interval_index(traj.totals[t + 1]).index;
        ++transitions;
        if (after < before || (before == 1 && after == 1)) ++good;
      }
    }
    const double frac =
        transitions > 0 ? static_cast<double>(good) / static_cast<double>(transitions) : 0.0;
    checks.push_back({"random_walk", "interval index moves left w.p. >= 1-U",
                      transitions >= want && frac >= 1.0 - upper,
                      detail::fmt("%zu transitions, left-or-hold fraction %.4f (need >= %.2f)",
                                  transitions, frac, 1.0 - upper)});
  }

  return checks;
}

// ---------------------------------------------------------------------------
// experiments_cli

inline CheckList verify_experiments(bool quick = false) {
  CheckList checks;

  {  // byte-identical pipeline determinism
    ExperimentSpec spec;
    spec.policies = {PolicyKind::Unif, PolicyKind::Round};
    spec.n_grid = {3, 5};
    spec.eps_grid = {1e-6};
    spec.gamma_grid = {1e-4};
    spec.replicates = quick ? 3 : 10;
    spec.base_seed = 4242;
    const auto csv_a = emit_csv(run_experiment(spec));
    const auto csv_b = emit_csv(run_experiment(spec));
    const auto parsed = parse_csv(csv_a);
    const bool round_trip = emit_csv(parsed) == csv_a;
    checks.push_back({"experiments_cli", "byte-identical reruns and CSV round-trip",
                      csv_a == csv_b && round_trip, ""});
  }

  {  // converged rows re-simulate to an eps-equilibrium from their own seed
    ExperimentSpec spec;
    spec.policies = {PolicyKind::Unif, PolicyKind::Best};
    spec.n_grid = {4};
    spec.eps_grid = {1e-8};
    spec.gamma_grid = {1e-6};
    spec.replicates = quick ? 3 : 25;
    spec.base_seed = 4243;
    std::size_t converged = 0, viol = 0;
    for (const auto& row : run_experiment(spec)) {
      if (row.outcome != "converged") continue;
      ++converged;
      auto kind = parse_policy(row.policy);
      auto cfg = ContestConfig::homogeneous_config(row.n, 1.0, row.gamma);
      ActionProfile x0(row.n, 0.0);
      x0[0] = row.gamma;
      auto traj = run(cfg, x0, make_policy(*kind, row.eps),
                      {.eps = row.eps, .max_steps = spec.max_steps, .seed = row.seed});
      if (traj.outcome != OutcomeKind::Converged || traj.steps != row.steps ||
          !is_epsilon_equilibrium(cfg, traj.final_profile, row.eps))
        ++viol;
    }
    checks.push_back({"experiments_cli", "converged rows re-simulate to equilibrium",
                      converged > 0 && viol == 0,
                      detail::fmt("%zu converged rows, %zu violations", converged, viol)});
  }

  {  // reversed-dynamics cycle search: predictions validate by forward runs
    const double c = 0.01;
    auto intervals = cycle_candidate_intervals(c);
    std::size_t validated = 0, mismatched = 0;
    for (const auto& iv : intervals) {
      if (iv.hi < 1e-12 || iv.lo > 0.1) continue;
      const double mid = std::exp(0.5 * (std::log(iv.lo) + std::log(iv.hi)));
      auto res = validate_cycle_candidate(c, mid);
      if (res.validated) {
        ++validated;
        if (res.validated->period != iv.period) ++mismatched;
      } else {
        ++mismatched;
      }
    }
    checks.push_back({"experiments_cli", "cycle intervals validate by forward simulation",
                      !intervals.empty() && validated > 0 && mismatched == 0,
                      detail::fmt("%zu intervals, %zu validated midpoints, %zu mismatches",
                                  intervals.size(), validated, mismatched)});
  }

  return checks;
}

inline CheckList verify_all(bool quick = false) {
  CheckList all;
  for (auto fn : {verify_contest_core, verify_dynamics, verify_potential, verify_random_walk,
                  verify_experiments}) {
    auto part = fn(quick);
    all.insert(all.end(), part.begin(), part.end());
  }
  return all;
}

}  // namespace tullock::verify
