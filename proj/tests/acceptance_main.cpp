// Acceptance suite: one line per criterion, exit 0 iff all pass.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "tullock/contest.hpp"
#include "tullock/dynamics.hpp"
#include "tullock/experiments.hpp"
#include "tullock/potential.hpp"
#include "tullock/random_walk.hpp"
#include "tullock/rng.hpp"
#include "tullock/verify.hpp"

using namespace tullock;

namespace {

int failures = 0;

void report(int criterion, const char* name, bool pass, const std::string& detail,
            double seconds) {
  if (!pass) ++failures;
  std::printf("[%s] criterion %d: %s  (%s; %.2fs)\n", pass ? "PASS" : "FAIL", criterion, name,
              detail.c_str(), seconds);
  std::fflush(stdout);
}

template <typename Fn>
void timed(int criterion, const char* name, Fn&& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  std::string detail;
  bool pass = false;
  try {
    pass = fn(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  const double secs =
      std::chrono::duration_cast<std::chrono::duration<double>>(std::chrono::steady_clock::now() -
                                                                t0)
          .count();
  report(criterion, name, pass, detail, secs);
}

// --------------------------------------------------------------------------
// 1. Two-agent convergence rate window

bool criterion_two_agent_rate(std::string& detail) {
  std::size_t cells = 0, violations = 0;
  double worst_low = 1e9, worst_high = -1e9;
  for (int ke = 4; ke <= 40; ++ke) {
    for (int kg = 4; kg <= 40; ++kg) {
      const double eps = std::ldexp(1.0, -ke);
      const double gamma = std::ldexp(1.0, -kg);
      auto cfg = ContestConfig::homogeneous_config(2, 1.0, 1e-5);
      // x0 = (gamma^2, 0); the agent facing gamma^2 responds first
      auto traj = run(cfg, {gamma * gamma, 0.0}, RoundRobin{.offset = 1},
                      {.eps = eps, .max_steps = 10'000});
      const double predicted = two_agent_predicted_steps(eps, gamma);
      const double slack = static_cast<double>(traj.steps) - predicted;
      worst_low = std::min(worst_low, slack);
      worst_high = std::max(worst_high, slack);
      ++cells;
      if (traj.outcome != OutcomeKind::Converged || slack < -4.0 || slack > 6.0) ++violations;
    }
  }
  detail = verify::detail::fmt("%zu cells, %zu outside [-4, +6], slack range [%.2f, %.2f]",
                               cells, violations, worst_low, worst_high);
  return violations == 0;
}

// --------------------------------------------------------------------------
// 2. Heterogeneous cycles

bool criterion_heterogeneous_cycles(std::string& detail) {
  ContestConfig table1(2, {1.0, 0.1}, 1e-5);
  auto traj = run(table1, {0.0, 1e-5}, RoundRobin{}, {.eps = 1e-10, .max_steps = 1000});
  bool ok = traj.outcome == OutcomeKind::CycleDetected && traj.cycle &&
            traj.cycle->period == 6 && traj.cycle->entry_time == 0;
  if (ok) {
    const double want1[8] = {0.0, 0.00315, 0.00315, 0.24321, 0.24321, 0.0, 0.0, 0.00315};
    const double want2[8] = {0.00001, 0.00001, 0.17439, 0.17439, 1.31631, 1.31631, 0.00001,
                             0.00001};
    for (std::size_t t = 0; t < 8; ++t) {
      const auto& state = traj.cycle->cycle_states[t % 6];
      ok = ok && std::abs(state[0] - want1[t]) < 5e-6 && std::abs(state[1] - want2[t]) < 5e-6;
    }
  }

  ContestConfig ex2(2, {1.0, 4.0 / 25.0}, 0.25);
  auto traj2 = run(ex2, {0.0, 0.25}, RoundRobin{}, {.eps = 1e-10, .max_steps = 100});
  bool ok2 = traj2.outcome == OutcomeKind::CycleDetected && traj2.cycle &&
             traj2.cycle->period == 4;
  if (ok2) {
    const ActionProfile want[4] = {{0.0, 0.25}, {0.25, 0.25}, {0.25, 1.0}, {0.0, 1.0}};
    for (std::size_t t = 0; t < 4; ++t)
      for (std::size_t i = 0; i < 2; ++i)
        ok2 = ok2 && std::abs(traj2.cycle->cycle_states[t][i] - want[t][i]) <= 1e-12;
  }
  detail = verify::detail::fmt("Table 1: period %zu at 5 decimals; Example 2: period %zu exact",
                               traj.cycle ? traj.cycle->period : 0,
                               traj2.cycle ? traj2.cycle->period : 0);
  return ok && ok2;
}

// --------------------------------------------------------------------------
// 3. Uniform-selection scaling correlations

bool criterion_uniform_scaling(std::string& detail) {
  ExperimentSpec by_n;
  by_n.policies = {PolicyKind::Unif};
  by_n.n_grid = {5, 10, 20, 40, 80};
  by_n.eps_grid = {1e-10};
  by_n.gamma_grid = {1e-10};
  by_n.replicates = 100;
  by_n.base_seed = 31001;
  auto nlogn = emit_plot_data(run_experiment(by_n), "nlogn");

  ExperimentSpec by_eps;
  by_eps.policies = {PolicyKind::Unif};
  by_eps.n_grid = {10};
  by_eps.eps_grid = {1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7, 1e-8, 1e-9, 1e-10, 1e-11, 1e-12};
  by_eps.gamma_grid = {1e-10};
  by_eps.replicates = 100;
  by_eps.base_seed = 31002;
  auto log_eps = emit_plot_data(run_experiment(by_eps), "log_inv_eps");

  const double corr_n = nlogn.at(0).correlation;
  const double corr_eps = log_eps.at(0).correlation;
  detail = verify::detail::fmt("corr(mean steps, n ln n) = %.4f, corr(mean steps, ln(1/eps)) = %.4f",
                               corr_n, corr_eps);
  return corr_n >= 0.98 && corr_eps >= 0.98;
}

// --------------------------------------------------------------------------
// 4. Potential suite

bool criterion_potential_suite(std::string& detail) {
  for (std::size_t n = 2; n <= 50; ++n) {
    auto cfg = ContestConfig::homogeneous_config(n, 1.0, 0.01);
    if (potential(equilibrium_profile(cfg)) > 1e-12) {
      detail = verify::detail::fmt("f(x*) > 1e-12 at n=%zu", n);
      return false;
    }
  }

  // The convexity and smoothness bounds are checked for n >= 3: their 1/2
  // constants fail at n = 2 (e.g. the symmetric profile at sigma = 3/8);
  // they belong to the n >= 3 analysis.
  SplitMix64 rng(41001);
  std::size_t bound_viol = 0;
  for (std::size_t trial = 0; trial < 1'000'000; ++trial) {
    const std::size_t n = 2 + rng.next_index(19);
    const double nn = static_cast<double>(n);
    auto x = verify::detail::random_simplex_profile(rng, n, rng.next_double() * 0.9999);
    const double sigma = total_output(x);
    const double f = potential(x);
    const double ratio = (nn - 1.0) / nn;
    if (f < -1e-15 || f > 0.5) ++bound_viol;
    if (sigma <= 0.75 * ratio && f < ratio * ratio * ratio / 40.0 - 1e-12) ++bound_viol;
    if (n < 3) continue;
    const double q = (nn - 1.0) / (nn * nn);
    double dist = 0.0, smooth = 0.0, dev = 0.0;
    for (double v : x) dev += v - q;
    for (double v : x) {
      dist += (v - q) * (v - q);
      smooth += (dev - (v - q)) * (dev - (v - q));
    }
    if (sigma >= 0.75 * ratio && f < 0.5 * dist - 1e-12) ++bound_viol;
    if (f > 0.5 * smooth + 1e-12) ++bound_viol;
  }

  // trajectory laws: monotone f, contraction under uniform weights
  std::size_t mono_viol = 0, contraction_viol = 0, checked_steps = 0;
  for (std::size_t n : {3u, 5u, 10u}) {
    for (int p = 0; p < 3; ++p) {
      for (std::uint64_t s = 0; s < 4; ++s) {
        auto cfg = ContestConfig::homogeneous_config(n, 1.0, 1e-10);
        ActionProfile x0(n, 0.0);
        x0[0] = 1e-10;
        SelectionPolicy policy = Uniform{};
        if (p == 1) policy = RoundRobin{};
        if (p == 2) policy = MyopicBest{};
        auto traj = run(cfg, x0, policy,
                        {.eps = 1e-10, .max_steps = 200'000, .seed = derive_seed(41002, n, p, s),
                         .record_full = true});
        if (!traj.warmup_end) {
          ++mono_viol;
          continue;
        }
        const std::vector<double> weights(n, 1.0 / static_cast<double>(n));
        for (std::size_t t = *traj.warmup_end; t + 1 < traj.potentials.size(); ++t) {
          ++checked_steps;
          if (traj.potentials[t + 1] > traj.potentials[t] + 1e-12) ++mono_viol;
          if (p == 0 && traj.totals[t] >= 0.25) {
            const double f = traj.potentials[t];
            if (expected_next_potential(traj.profiles[t], weights) >
                (1.0 - kappa / static_cast<double>(n)) * f)
              ++contraction_viol;
          }
        }
      }
    }
  }
  detail = verify::detail::fmt(
      "1e6 profiles: %zu bound violations; %zu trajectory steps: %zu monotone, %zu contraction",
      bound_viol, checked_steps, mono_viol, contraction_viol);
  return bound_viol == 0 && mono_viol == 0 && contraction_viol == 0;
}

// --------------------------------------------------------------------------
// 5. Warm-up and total-output laws

bool criterion_warmup_laws(std::string& detail) {
  verify::detail::DynamicsLawStats stats;
  SplitMix64 rng(51001);
  for (std::size_t r = 0; r < 1000; ++r) {
    const std::size_t n = 2 + rng.next_index(7);
    const double a = 1e-6 + 0.2 * rng.next_double();
    auto cfg = ContestConfig::homogeneous_config(n, 1.0, a);
    auto x0 = verify::detail::law_initial_profile(rng, n, a);
    SelectionPolicy policy = RoundRobin{};
    if (n >= 3) {
      const auto pick = rng.next_index(3);
      if (pick == 1) policy = Uniform{};
      if (pick == 2) policy = MyopicBest{};
    }
    auto traj = run(cfg, x0, policy,
                    {.eps = 1e-8, .max_steps = 200'000, .seed = derive_seed(51002, r),
                     .record_full = true});
    verify::detail::check_dynamics_laws(cfg, traj, x0, stats);
  }
  detail = verify::detail::fmt(
      "%zu runs: %zu persistence, %zu floor, %zu ratio, %zu drift, %zu without warm-up",
      stats.runs, stats.persistence_viol, stats.floor_viol, stats.ratio_viol, stats.drift_viol,
      stats.no_warmup);
  return stats.persistence_viol == 0 && stats.floor_viol == 0 && stats.ratio_viol == 0 &&
         stats.drift_viol == 0 && stats.no_warmup == 0;
}

// --------------------------------------------------------------------------
// 6. Hessian / gradient numerics

bool criterion_hessian_gradient(std::string& detail) {
  const double h = 1e-5;   // gradient stencil
  const double hh = 3e-5;  // Hessian stencil: f is cubic, so the second
                           // difference has no truncation error and the wider
                           // step only shrinks roundoff
  std::size_t grad_viol = 0, eig_viol = 0, points = 0;
  for (std::size_t n : {2u, 3u, 5u, 10u}) {
    SplitMix64 rng(derive_seed(61001, n));
    for (int trial = 0; trial < 1000; ++trial) {
      // keep coordinates at least 2h away from the boundary so the central
      // differences stay inside the domain
      ActionProfile x;
      for (;;) {
        x = verify::detail::random_simplex_profile(rng, n, 0.3 + 0.65 * rng.next_double());
        double lo = x[0];
        for (double v : x) lo = std::min(lo, v);
        if (lo > 3.0 * hh) break;
      }
      ++points;
      auto grad = potential_gradient(x);
      for (std::size_t i = 0; i < n; ++i) {
        ActionProfile xp = x, xm = x;
        xp[i] += h;
        xm[i] -= h;
        if (xm[i] < 0.0) continue;
        if (std::abs(grad[i] - (potential(xp) - potential(xm)) / (2.0 * h)) > 1e-6) ++grad_viol;
      }
      auto eigs = potential_hessian_eigs(n, total_output(x));
      std::vector<std::vector<double>> H(n, std::vector<double>(n));
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
          H[i][j] = (potential(xpp) - potential(xpm) - potential(xmp) + potential(xmm)) /
                    (4.0 * hh * hh);
        }
      }
      double ones = 0.0;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) ones += H[i][j];
      if (std::abs(ones / static_cast<double>(n) - eigs.aligned) > 1e-6) ++eig_viol;
      for (std::size_t k = 1; k < n; ++k) {
        const double quot = (H[0][0] - H[0][k] - H[k][0] + H[k][k]) / 2.0;
        if (std::abs(quot - eigs.transverse) > 1e-6) ++eig_viol;
      }
    }
  }
  detail = verify::detail::fmt("%zu points: %zu gradient, %zu eigenvalue violations", points,
                               grad_viol, eig_viol);
  return grad_viol == 0 && eig_viol == 0;
}

// --------------------------------------------------------------------------
// 7. Markov lemma grid

bool criterion_markov_lemma(std::string& detail) {
  struct Cell {
    double p, delta;
    std::int64_t k, m;
  };
  std::vector<Cell> cells;
  for (double p : {0.1, 0.2, 0.3, 0.4})
    for (std::int64_t k : {1, 5, 20})
      for (std::int64_t m : {1, 10, 50})
        for (double delta : {0.05, 0.1}) cells.push_back({p, delta, k, m});

  std::vector<double> fracs(cells.size());
  std::vector<std::int64_t> horizons(cells.size());
  parallel_for(cells.size(), [&](std::size_t i) {
    const auto& c = cells[i];
    horizons[i] = lemma_visit_bound(c.p, c.k, c.m, c.delta);
    fracs[i] = empirical_visit_success(WalkConfig(c.p, c.k), c.m,
                                       static_cast<std::size_t>(horizons[i]), 10'000,
                                       derive_seed(71001, i));
  });
  std::size_t failed = 0;
  bool example_ok = false;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (fracs[i] < 1.0 - cells[i].delta) ++failed;
    if (cells[i].p == 0.3 && cells[i].k == 5 && cells[i].m == 10 && cells[i].delta == 0.1)
      example_ok = horizons[i] == 150;
  }
  detail = verify::detail::fmt("%zu cells x 1e4 trials, %zu below 1-delta; horizon(0.3,5,10,0.1)=150: %s",
                               cells.size(), failed, example_ok ? "yes" : "NO");
  return failed == 0 && example_ok;
}

// --------------------------------------------------------------------------
// 8. Coverage times

bool criterion_coverage(std::string& detail) {
  const std::size_t n = 20, reps = 10'000;
  const double threshold = static_cast<double>(n) * std::log(static_cast<double>(n)) +
                           3.0 * static_cast<double>(n);
  std::size_t exceed = 0;
  for (std::uint64_t r = 0; r < reps; ++r) {
    SplitMix64 rng(derive_seed(81001, r));
    std::vector<std::size_t> trace;
    trace.reserve(256);
    std::vector<char> seen(n, 0);
    std::size_t covered = 0;
    while (covered < n) {
      const std::size_t i = rng.next_index(n);
      trace.push_back(i);
      if (!seen[i]) {
        seen[i] = 1;
        ++covered;
      }
    }
    const auto cover = coverage_time(trace, n);
    if (cover && static_cast<double>(*cover) > threshold) ++exceed;
  }
  const double frac = static_cast<double>(exceed) / static_cast<double>(reps);
  detail = verify::detail::fmt("fraction %.4f vs bound %.4f", frac, std::exp(-3.0) + 0.01);
  return frac <= std::exp(-3.0) + 0.01;
}

// --------------------------------------------------------------------------
// 9. Lipschitz bridge

// The multiplicative bound fails for n >= 4: near z* utilities are about
// 1/n^2, so the additive 3 sqrt(n) eps bound implied by utility smoothness
// does not transfer to the multiplicative gap (worst gap/bound grows like
// n/3, e.g. all agents at z* + eps/sqrt(n) with eps near its cap).  The
// check runs as specified and reports the violations it finds; n in {2, 3}
// does satisfy the bound.
bool criterion_lipschitz(std::string& detail) {
  SplitMix64 rng(91001);
  std::size_t viol = 0;
  double worst_ratio = 0.0;
  std::size_t worst_n = 0;
  double worst_small_n = 0.0;  // n <= 3 sub-domain
  for (std::size_t trial = 0; trial < 100'000; ++trial) {
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
        d = verify::detail::gaussian(rng);
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
    const double gap = epsilon_gap(cfg, z);
    const double bound = 3.0 * std::sqrt(nn) * eps;
    const double ratio = bound > 0.0 ? gap / bound : 0.0;
    if (ratio > worst_ratio) {
      worst_ratio = ratio;
      worst_n = n;
    }
    if (n <= 3) worst_small_n = std::max(worst_small_n, ratio);
    if (gap > bound) ++viol;
  }
  detail = verify::detail::fmt(
      "1e5 samples over n in 3..20: %zu violations, worst gap/bound %.3f at n=%zu "
      "(n=3 sub-domain worst %.3f)",
      viol, worst_ratio, worst_n, worst_small_n);
  return viol == 0;
}

}  // namespace

int main() {
  timed(1, "two-agent convergence rate window", criterion_two_agent_rate);
  timed(2, "heterogeneous cycles (Table 1, Example 2)", criterion_heterogeneous_cycles);
  timed(3, "uniform-selection scaling correlations", criterion_uniform_scaling);
  timed(4, "potential suite", criterion_potential_suite);
  timed(5, "warm-up and total-output laws", criterion_warmup_laws);
  timed(6, "Hessian/gradient numerics", criterion_hessian_gradient);
  timed(7, "Markov lemma visit bound", criterion_markov_lemma);
  timed(8, "coverage-time tail", criterion_coverage);
  timed(9, "Lipschitz bridge", criterion_lipschitz);
  std::printf(failures == 0 ? "acceptance: all criteria passed\n"
                            : "acceptance: %d criteria FAILED\n",
              failures);
  return failures == 0 ? 0 : 1;
}
