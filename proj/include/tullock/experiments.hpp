#pragma once

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <exception>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "tullock/contest.hpp"
#include "tullock/dynamics.hpp"
#include "tullock/rng.hpp"

// Experiment grids over (policy, n, eps, gamma), CSV output, and the
// transformed series behind the convergence-time plots.  Grids replicate the
// simulation setup: homogeneous unit-cost agents starting from (a, 0, ..., 0)
// with a = gamma, converging to an eps-approximate equilibrium.

namespace tullock {

// ---------------------------------------------------------------------------
// Policies by name

enum class PolicyKind { Unif, Round, Lex, Worst, Best };

inline const char* policy_name(PolicyKind k) {
  switch (k) {
    case PolicyKind::Unif: return "unif";
    case PolicyKind::Round: return "round";
    case PolicyKind::Lex: return "lex";
    case PolicyKind::Worst: return "worst";
    case PolicyKind::Best: return "best";
  }
  return "?";
}

inline std::optional<PolicyKind> parse_policy(const std::string& name) {
  if (name == "unif") return PolicyKind::Unif;
  if (name == "round") return PolicyKind::Round;
  if (name == "lex") return PolicyKind::Lex;
  if (name == "worst") return PolicyKind::Worst;
  if (name == "best") return PolicyKind::Best;
  return std::nullopt;
}

inline bool policy_is_randomized(PolicyKind k) { return k == PolicyKind::Unif; }

// lex/worst thresholds default to the run's eps.
inline SelectionPolicy make_policy(PolicyKind k, double eps) {
  switch (k) {
    case PolicyKind::Unif: return Uniform{};
    case PolicyKind::Round: return RoundRobin{};
    case PolicyKind::Lex: return Lexicographic{eps};
    case PolicyKind::Worst: return MyopicWorst{eps};
    case PolicyKind::Best: return MyopicBest{};
  }
  throw std::invalid_argument("make_policy: unknown policy");
}

// ---------------------------------------------------------------------------
// Grid specification and result rows

struct ExperimentSpec {
  std::vector<PolicyKind> policies{PolicyKind::Unif};
  std::vector<std::size_t> n_grid{10};
  std::vector<double> eps_grid{1e-10};
  std::vector<double> gamma_grid{1e-10};
  std::size_t replicates = 100;  // randomized policies; deterministic ones run once
  std::uint64_t base_seed = 20240101;
  std::size_t max_steps = 5'000'000;
  bool measure_time = false;  // real wall-clock nanos break byte-determinism
  std::vector<std::string> plots;

  void validate() const {
    if (policies.empty() || n_grid.empty() || eps_grid.empty() || gamma_grid.empty())
      throw std::invalid_argument("ExperimentSpec: grids must be non-empty");
    if (replicates < 1) throw std::invalid_argument("ExperimentSpec: replicates >= 1");
    if (max_steps < 1) throw std::invalid_argument("ExperimentSpec: max_steps >= 1");
    for (auto n : n_grid)
      if (n < 2) throw std::invalid_argument("ExperimentSpec: n >= 2");
    for (auto e : eps_grid)
      if (!(e > 0.0)) throw std::invalid_argument("ExperimentSpec: eps > 0");
    for (auto g : gamma_grid)
      if (!(g > 0.0) || !(g <= 0.25))
        throw std::invalid_argument("ExperimentSpec: gamma in (0, 1/4]");
  }
};

struct ResultRow {
  std::string policy;
  std::size_t n = 0;
  double eps = 0.0;
  double gamma = 0.0;
  std::uint64_t seed = 0;
  std::size_t steps = 0;
  std::string outcome;  // converged | cycle | exhausted
  std::optional<std::size_t> warmup_end;
  std::uint64_t nanos = 0;

  friend bool operator==(const ResultRow&, const ResultRow&) = default;
};

// ---------------------------------------------------------------------------
// Parallel map over independent tasks

template <typename Fn>
void parallel_for(std::size_t count, Fn&& fn) {
  const std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t workers = std::min(hw, count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::atomic<bool> failed{false};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= count || failed.load()) return;
        try {
          fn(i);
        } catch (...) {
          if (!failed.exchange(true)) error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

// ---------------------------------------------------------------------------
// Running a grid

// The per-run seed is derived from (base_seed, grid indices, replicate), and
// is stored in the row: a row re-simulates in isolation from its own fields.
inline ResultRow run_one_cell(PolicyKind kind, std::size_t n, double eps, double gamma,
                              std::uint64_t seed, std::size_t max_steps, bool measure_time) {
  ResultRow row;
  row.policy = policy_name(kind);
  row.n = n;
  row.eps = eps;
  row.gamma = gamma;
  row.seed = seed;
  try {
    auto cfg = ContestConfig::homogeneous_config(n, 1.0, gamma);
    ActionProfile x0(n, 0.0);
    x0[0] = gamma;
    const auto t0 = std::chrono::steady_clock::now();
    auto traj = run(cfg, x0, make_policy(kind, eps),
                    {.eps = eps, .max_steps = max_steps, .seed = seed});
    const auto t1 = std::chrono::steady_clock::now();
    row.steps = traj.steps;
    row.outcome = outcome_name(traj.outcome);
    row.warmup_end = traj.warmup_end;
    if (measure_time)
      row.nanos = static_cast<std::uint64_t>(
          std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count());
  } catch (const std::exception&) {
    row.outcome = "exhausted";  // cell failure recorded, sweep continues
  }
  return row;
}

inline std::vector<ResultRow> run_experiment(const ExperimentSpec& spec) {
  spec.validate();
  struct Task {
    PolicyKind kind;
    std::size_t n;
    double eps, gamma;
    std::uint64_t seed;
  };
  std::vector<Task> tasks;
  for (std::size_t pi = 0; pi < spec.policies.size(); ++pi) {
    const auto kind = spec.policies[pi];
    const std::size_t reps = policy_is_randomized(kind) ? spec.replicates : 1;
    for (std::size_t ni = 0; ni < spec.n_grid.size(); ++ni)
      for (std::size_t ei = 0; ei < spec.eps_grid.size(); ++ei)
        for (std::size_t gi = 0; gi < spec.gamma_grid.size(); ++gi)
          for (std::size_t r = 0; r < reps; ++r)
            tasks.push_back({kind, spec.n_grid[ni], spec.eps_grid[ei], spec.gamma_grid[gi],
                             derive_seed(spec.base_seed, pi, ni, ei, gi, r)});
  }
  std::vector<ResultRow> rows(tasks.size());
  parallel_for(tasks.size(), [&](std::size_t i) {
    const auto& t = tasks[i];
    rows[i] = run_one_cell(t.kind, t.n, t.eps, t.gamma, t.seed, spec.max_steps,
                           spec.measure_time);
  });
  std::sort(rows.begin(), rows.end(), [](const ResultRow& a, const ResultRow& b) {
    return std::tie(a.policy, a.n, a.eps, a.gamma, a.seed) <
           std::tie(b.policy, b.n, b.eps, b.gamma, b.seed);
  });
  return rows;
}

// ---------------------------------------------------------------------------
// CSV (schema: policy,n,eps,gamma,seed,steps,outcome,warmup_end,nanos)

namespace detail {
inline std::string shortest(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}
}  // namespace detail

inline constexpr const char* kCsvHeader = "policy,n,eps,gamma,seed,steps,outcome,warmup_end,nanos";

inline std::string emit_csv(const std::vector<ResultRow>& rows) {
  std::string out = kCsvHeader;
  out += '\n';
  for (const auto& r : rows) {
    out += r.policy;
    out += ',';
    out += std::to_string(r.n);
    out += ',';
    out += detail::shortest(r.eps);
    out += ',';
    out += detail::shortest(r.gamma);
    out += ',';
    out += std::to_string(r.seed);
    out += ',';
    out += std::to_string(r.steps);
    out += ',';
    out += r.outcome;
    out += ',';
    if (r.warmup_end) out += std::to_string(*r.warmup_end);
    out += ',';
    out += std::to_string(r.nanos);
    out += '\n';
  }
  return out;
}

inline std::vector<ResultRow> parse_csv(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader)
    throw std::invalid_argument("parse_csv: bad header");
  std::vector<ResultRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (std::size_t pos = 0; pos <= line.size(); ++pos) {
      if (pos == line.size() || line[pos] == ',') {
        fields.push_back(line.substr(start, pos - start));
        start = pos + 1;
      }
    }
    if (fields.size() != 9) throw std::invalid_argument("parse_csv: bad row");
    ResultRow r;
    r.policy = fields[0];
    r.n = std::stoul(fields[1]);
    std::from_chars(fields[2].data(), fields[2].data() + fields[2].size(), r.eps);
    std::from_chars(fields[3].data(), fields[3].data() + fields[3].size(), r.gamma);
    r.seed = std::stoull(fields[4]);
    r.steps = std::stoul(fields[5]);
    r.outcome = fields[6];
    if (!fields[7].empty()) r.warmup_end = std::stoul(fields[7]);
    r.nanos = std::stoull(fields[8]);
    rows.push_back(std::move(r));
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Plot series: per-policy (transformed x, mean steps, standard error), plus a
// least-squares line and the Pearson correlation of mean steps vs x.

struct PlotPoint {
  double x = 0.0;
  double mean = 0.0;
  double stderr_mean = 0.0;
  std::size_t count = 0;
};

struct PlotSeries {
  std::string policy;
  std::vector<PlotPoint> points;
  double slope = 0.0;
  double intercept = 0.0;
  double correlation = 0.0;
};

enum class PlotAxis { Eps, N, Gamma };

// Tags follow the plotted transforms: time vs 1/eps, log(1/eps),
// lglg(1/eps), (1/eps)^(1/5), (log(1/eps))^5, n log n, n^2, n^3, lglg(1/gamma).
// log is natural, lglg is base-2 (matching the stated rates).
inline PlotAxis plot_axis(const std::string& tag) {
  if (tag == "inv_eps" || tag == "log_inv_eps" || tag == "loglog_inv_eps" ||
      tag == "inv_eps_root5" || tag == "log_inv_eps_pow5")
    return PlotAxis::Eps;
  if (tag == "nlogn" || tag == "n_squared" || tag == "n_cubed") return PlotAxis::N;
  if (tag == "loglog_inv_gamma") return PlotAxis::Gamma;
  throw std::invalid_argument("unknown plot transform tag: " + tag);
}

inline double plot_transform(const std::string& tag, const ResultRow& row) {
  if (tag == "inv_eps") return 1.0 / row.eps;
  if (tag == "log_inv_eps") return std::log(1.0 / row.eps);
  if (tag == "loglog_inv_eps") return std::log2(std::log2(1.0 / row.eps));
  if (tag == "inv_eps_root5") return std::pow(1.0 / row.eps, 0.2);
  if (tag == "log_inv_eps_pow5") return std::pow(std::log(1.0 / row.eps), 5.0);
  if (tag == "nlogn")
    return static_cast<double>(row.n) * std::log(static_cast<double>(row.n));
  if (tag == "n_squared") return static_cast<double>(row.n) * static_cast<double>(row.n);
  if (tag == "n_cubed") return std::pow(static_cast<double>(row.n), 3.0);
  if (tag == "loglog_inv_gamma") return std::log2(std::log2(1.0 / row.gamma));
  throw std::invalid_argument("unknown plot transform tag: " + tag);
}

inline std::vector<PlotSeries> emit_plot_data(const std::vector<ResultRow>& rows,
                                              const std::string& tag) {
  plot_axis(tag);  // validates the tag
  struct Acc {
    double sum = 0.0, sum_sq = 0.0;
    std::size_t count = 0;
  };
  // policy -> x -> accumulated steps
  std::vector<std::string> policy_order;
  std::vector<std::vector<std::pair<double, Acc>>> acc;
  for (const auto& row : rows) {
    const double x = plot_transform(tag, row);
    std::size_t p = 0;
    while (p < policy_order.size() && policy_order[p] != row.policy) ++p;
    if (p == policy_order.size()) {
      policy_order.push_back(row.policy);
      acc.emplace_back();
    }
    auto& series = acc[p];
    std::size_t k = 0;
    while (k < series.size() && series[k].first != x) ++k;
    if (k == series.size()) series.push_back({x, Acc{}});
    auto& a = series[k].second;
    a.sum += static_cast<double>(row.steps);
    a.sum_sq += static_cast<double>(row.steps) * static_cast<double>(row.steps);
    a.count += 1;
  }

  std::vector<PlotSeries> out;
  for (std::size_t p = 0; p < policy_order.size(); ++p) {
    PlotSeries s;
    s.policy = policy_order[p];
    auto& series = acc[p];
    std::sort(series.begin(), series.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (const auto& [x, a] : series) {
      PlotPoint pt;
      pt.x = x;
      pt.count = a.count;
      pt.mean = a.sum / static_cast<double>(a.count);
      if (a.count > 1) {
        const double var =
            std::max(0.0, (a.sum_sq - a.sum * a.sum / static_cast<double>(a.count)) /
                              static_cast<double>(a.count - 1));
        pt.stderr_mean = std::sqrt(var / static_cast<double>(a.count));
      }
      s.points.push_back(pt);
    }
    // least squares + correlation over the aggregated points
    const std::size_t m = s.points.size();
    double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
    for (const auto& pt : s.points) {
      sx += pt.x;
      sy += pt.mean;
      sxx += pt.x * pt.x;
      syy += pt.mean * pt.mean;
      sxy += pt.x * pt.mean;
    }
    const double dm = static_cast<double>(m);
    const double cov = sxy - sx * sy / dm;
    const double vx = sxx - sx * sx / dm;
    const double vy = syy - sy * sy / dm;
    if (m >= 2 && vx > 0.0) {
      s.slope = cov / vx;
      s.intercept = (sy - s.slope * sx) / dm;
      s.correlation = vy > 0.0 ? cov / std::sqrt(vx * vy) : 0.0;
    } else if (m == 1) {
      s.intercept = s.points.front().mean;  // degenerate single-point series
    }
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace tullock
