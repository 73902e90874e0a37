#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "tullock/contest.hpp"

// Best-response potential for the homogeneous unit-cost game,
//
//   f(x) = (1/3) (sum_i x_i)^3 - sum_{i<j} x_i x_j + (1/6) ((n-1)/n)^3,
//
// minimized at the equilibrium x*_i = (n-1)/n^2, together with the analytic
// machinery around it: per-move potential values, contraction constants,
// gamma floors, the two-agent geometric-mean sequence, and the
// double-exponential discretization of the total output.

namespace tullock {

struct IntervalIndex {
  int index = 0;
  bool capped = false;  // true when the interval's lower endpoint underflows
};

inline constexpr double kappa_g = 0.05 < (1.0 / 3.0 - 27.0 / 125.0) / 64.0
                                      ? 0.05
                                      : (1.0 / 3.0 - 27.0 / 125.0) / 64.0;

namespace detail {
// (sqrt(6/5) - 1)^2 / 8 evaluated at compile time is not available pre-C++26;
// a constexpr Newton square root keeps the constant exact to double precision.
constexpr double constexpr_sqrt(double v) {
  double r = v, prev = 0.0;
  while (r != prev) {
    prev = r;
    r = 0.5 * (r + v / r);
  }
  return r;
}
}  // namespace detail

inline constexpr double kappa_h = [] {
  const double c1 = (detail::constexpr_sqrt(1.2) - 1.0) * (detail::constexpr_sqrt(1.2) - 1.0) / 8.0;
  const double c2 = 1.0 / 12.0;
  return c1 < c2 ? c1 : c2;
}();

inline constexpr double kappa = kappa_g * kappa_h;

// f evaluated through its exact expansion around the equilibrium,
//   f(x) = (s* - 1/2) S^2 + S^3/3 + ||u||^2 / 2,
// with u = x - x*, S = sum u_i, s* = (n-1)/n.  Algebraically identical to the
// defining cubic, but keeps full relative precision as f -> 0, which the
// contraction tests need; the defining form cancels to ~1e-17 absolute noise.
inline double potential(const ActionProfile& x) {
  const std::size_t n = x.size();
  if (n < 2) throw std::invalid_argument("potential: need at least 2 agents");
  const double nn = static_cast<double>(n);
  const double xstar = (nn - 1.0) / (nn * nn);
  const double sigma_star = (nn - 1.0) / nn;
  double shift_sum = 0.0, shift_sq = 0.0;
  for (double v : x) {
    if (!(v >= 0.0)) throw std::invalid_argument("potential: outputs must be >= 0");
    const double u = v - xstar;
    shift_sum += u;
    shift_sq += u * u;
  }
  return (sigma_star - 0.5) * shift_sum * shift_sum + shift_sum * shift_sum * shift_sum / 3.0 +
         0.5 * shift_sq;
}

// f(x) - f(step(x, i)) = (y - s)^2 (2y + s) / 3 with y = sqrt(s - x_i);
// exact factorization of the closed-form difference, nonnegative for
// s - x_i in [0, 1] and stable where both potentials nearly cancel.
inline double potential_decrease(const ActionProfile& x, std::size_t i) {
  if (i >= x.size()) throw std::out_of_range("potential_decrease: agent index");
  const double s = total_output(x);
  const double rest = s - x[i];
  if (!(rest >= 0.0) || rest > 1.0)
    throw std::domain_error("potential_decrease: requires 0 <= s - x_i <= 1");
  const double y = std::sqrt(rest);
  const double d = y - s;
  return d * d * (2.0 * y + s) / 3.0;
}

// Potential after agent i best-responds (closed form, no profile mutation).
// Requires the post-warm-up regime 0 < s - x_i < 1.
inline double per_agent_next_potential(const ActionProfile& x, std::size_t i) {
  if (i >= x.size()) throw std::out_of_range("per_agent_next_potential: agent index");
  const double rest = total_output(x) - x[i];
  if (!(rest > 0.0) || !(rest < 1.0))
    throw std::domain_error("per_agent_next_potential: requires 0 < s - x_i < 1");
  return potential(x) - potential_decrease(x, i);
}

inline void validate_probability_vector(const std::vector<double>& w, std::size_t n) {
  if (w.size() != n) throw std::invalid_argument("weights: size mismatch");
  double sum = 0.0;
  for (double v : w) {
    if (!(v >= 0.0)) throw std::invalid_argument("weights: entries must be >= 0");
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-12) throw std::invalid_argument("weights: must sum to 1");
}

// E[f(x_{t+1}) | x_t] = sum_i w_i f_i(x_t), computed exactly (no sampling).
inline double expected_next_potential(const ActionProfile& x, const std::vector<double>& weights) {
  validate_probability_vector(weights, x.size());
  double expected_drop = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i)
    expected_drop += weights[i] * potential_decrease(x, i);
  return potential(x) - expected_drop;
}

struct PotentialReport {
  double value = 0.0;
  std::vector<double> per_agent_next;
  double expected_next = 0.0;
  bool contraction_ok = false;
  double sigma = 0.0;
};

// Snapshot of the potential around one state: f, every f_i, the expected next
// value under `weights`, and whether the contraction bound
// E[f'] <= (1 - kappa * min w) f held (required only when sigma >= 1/4;
// below 1/4 only monotonicity E[f'] <= f is asserted).
inline PotentialReport analyze_potential(const ActionProfile& x,
                                         const std::vector<double>& weights) {
  validate_probability_vector(weights, x.size());
  PotentialReport rep;
  rep.sigma = total_output(x);
  rep.value = potential(x);
  rep.per_agent_next.resize(x.size());
  double expected_drop = 0.0;
  double min_w = 1.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double drop = potential_decrease(x, i);
    rep.per_agent_next[i] = rep.value - drop;
    expected_drop += weights[i] * drop;
    min_w = std::min(min_w, weights[i]);
  }
  rep.expected_next = rep.value - expected_drop;
  rep.contraction_ok =
      rep.sigma >= 0.25 ? expected_drop >= kappa * min_w * rep.value : expected_drop >= 0.0;
  return rep;
}

// grad f: df/dx_i = sigma^2 - sum_{j != i} x_j.
inline std::vector<double> potential_gradient(const ActionProfile& x) {
  const double sigma = total_output(x);
  std::vector<double> g(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) g[i] = sigma * sigma - (sigma - x[i]);
  return g;
}

struct HessianEigs {
  double transverse = 1.0;   // multiplicity n-1, eigenvectors orthogonal to 1
  std::size_t transverse_multiplicity = 0;
  double aligned = 0.0;      // multiplicity 1, eigenvector all-ones
  std::size_t aligned_multiplicity = 1;
};

// Hessian of f is (2 sigma - 1) J + I; eigenvalues 1 (n-1 times) and
// 2 n sigma - (n - 1) (once).
inline HessianEigs potential_hessian_eigs(std::size_t n, double sigma) {
  if (n < 2) throw std::invalid_argument("potential_hessian_eigs: need n >= 2");
  if (!(sigma >= 0.0)) throw std::invalid_argument("potential_hessian_eigs: sigma must be >= 0");
  HessianEigs e;
  e.transverse_multiplicity = n - 1;
  e.aligned = 2.0 * static_cast<double>(n) * sigma - (static_cast<double>(n) - 1.0);
  return e;
}

// ---------------------------------------------------------------------------
// Initial-state floors

// Initial-state floor for the two-agent rate.  On [1/4, 1) the signed form
// x - sqrt(x) would be negative; the first move lands at its magnitude
// sqrt(x) - x, which is what we return.
inline double gamma_two_agent(const ActionProfile& x0, double a) {
  if (x0.size() != 2) throw std::invalid_argument("gamma_two_agent: requires n = 2");
  const double x = x0[0];
  if (x > 0.0 && x < 0.25) return std::sqrt(x);
  if (x >= 0.25 && x < 1.0) return std::sqrt(x) - x;
  return std::sqrt(a);
}

// n-agent floor: gamma = min(A u B u {a}) with A the initial outputs in (0,1)
// and B = { sqrt((1 - sqrt(y)) / 2) : y in A }.
inline double gamma_n_agent(const ActionProfile& x0, double a) {
  double gamma = a;
  for (double v : x0) {
    if (v > 0.0 && v < 1.0) {
      gamma = std::min(gamma, v);
      gamma = std::min(gamma, std::sqrt((1.0 - std::sqrt(v)) / 2.0));
    }
  }
  return gamma;
}

// z_0 = gamma, z_{t+1} = sqrt(z_t (1 - z_t)): the two-agent dynamics in
// square-root coordinates.  Returns z_0..z_steps.
inline std::vector<double> geometric_mean_sequence(double gamma, std::size_t steps) {
  if (!(gamma > 0.0) || !(gamma < 0.5))
    throw std::invalid_argument("geometric_mean_sequence: gamma must be in (0, 1/2)");
  std::vector<double> z(steps + 1);
  z[0] = gamma;
  for (std::size_t t = 0; t < steps; ++t) z[t + 1] = std::sqrt(z[t] * (1.0 - z[t]));
  return z;
}

// lg lg(1/gamma) + lg lg(1/eps): the Theta(1)-free part of the two-agent rate.
inline double two_agent_predicted_steps(double eps, double gamma) {
  if (!(eps > 0.0) || !(eps < 0.5))
    throw std::invalid_argument("two_agent_predicted_steps: eps must be in (0, 1/2)");
  if (!(gamma > 0.0) || !(gamma < 0.5))
    throw std::invalid_argument("two_agent_predicted_steps: gamma must be in (0, 1/2)");
  return std::log2(std::log2(1.0 / gamma)) + std::log2(std::log2(1.0 / eps));
}

// Index of the double-exponential partition of (0,1):
//   1 for [1/4, 1), and ell >= 2 for [(1/2)^(2^{ell-1}+1), (1/2)^(2^{ell-2}+1)).
// Once the lower endpoint underflows doubles the index is reported capped.
inline IntervalIndex interval_index(double s) {
  if (!(s > 0.0) || !(s < 1.0))
    throw std::domain_error("interval_index: s must be in (0, 1)");
  if (s >= 0.25) return {1, false};
  for (int ell = 2;; ++ell) {
    const double lo = std::ldexp(1.0, -((1 << (ell - 1)) + 1));
    if (lo == 0.0) return {ell, true};
    if (s >= lo) return {ell, false};
  }
}

}  // namespace tullock
