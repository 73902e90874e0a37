#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tullock/contest.hpp"
#include "tullock/cycle_search.hpp"
#include "tullock/dynamics.hpp"
#include "tullock/experiments.hpp"
#include "tullock/svg.hpp"
#include "tullock/verify.hpp"

// Command-line front end: `simulate` (one run), `experiment` (grid sweep to
// CSV/SVG), `verify` (module invariant suites), `cycle` (heterogeneous cycle
// search over a floor-action grid).  Exit codes: 0 success, 1 invariant
// failure, 2 usage or configuration error.

namespace tullock::cli {

namespace detail {

inline std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  std::size_t start = 0;
  for (std::size_t pos = 0; pos <= text.size(); ++pos) {
    if (pos == text.size() || text[pos] == ',') {
      const auto item = text.substr(start, pos - start);
      if (!item.empty()) out.push_back(std::stod(item));
      start = pos + 1;
    }
  }
  return out;
}

inline ExperimentSpec spec_from_json(const nlohmann::json& j) {
  static const std::vector<std::string> known = {"policies", "n",         "eps",
                                                 "gamma",    "replicates", "base_seed",
                                                 "max_steps", "measure_time", "plots"};
  for (const auto& [key, value] : j.items()) {
    (void)value;
    bool ok = false;
    for (const auto& k : known) ok = ok || k == key;
    if (!ok) throw std::invalid_argument("config: unknown key '" + key + "'");
  }
  ExperimentSpec spec;
  if (j.contains("policies")) {
    spec.policies.clear();
    for (const auto& name : j.at("policies")) {
      auto kind = parse_policy(name.get<std::string>());
      if (!kind)
        throw std::invalid_argument("config: unknown policy '" + name.get<std::string>() + "'");
      spec.policies.push_back(*kind);
    }
  }
  if (j.contains("n")) spec.n_grid = j.at("n").get<std::vector<std::size_t>>();
  if (j.contains("eps")) spec.eps_grid = j.at("eps").get<std::vector<double>>();
  if (j.contains("gamma")) spec.gamma_grid = j.at("gamma").get<std::vector<double>>();
  if (j.contains("replicates")) spec.replicates = j.at("replicates").get<std::size_t>();
  if (j.contains("base_seed")) spec.base_seed = j.at("base_seed").get<std::uint64_t>();
  if (j.contains("max_steps")) spec.max_steps = j.at("max_steps").get<std::size_t>();
  if (j.contains("measure_time")) spec.measure_time = j.at("measure_time").get<bool>();
  if (j.contains("plots")) spec.plots = j.at("plots").get<std::vector<std::string>>();
  spec.validate();
  for (const auto& tag : spec.plots) plot_axis(tag);  // reject unknown tags early
  return spec;
}

inline void print_profile(const ActionProfile& x) {
  std::printf("(");
  const std::size_t shown = std::min<std::size_t>(x.size(), 16);
  for (std::size_t i = 0; i < shown; ++i)
    std::printf("%s%.10g", i ? ", " : "", x[i]);
  if (shown < x.size()) std::printf(", ... %zu more", x.size() - shown);
  std::printf(")\n");
}

inline int run_simulate(std::size_t n, const std::string& costs_text, double floor_action,
                        const std::string& x0_text, const std::string& policy_name_text,
                        double eps, std::size_t max_steps, std::uint64_t seed, bool record_full) {
  std::vector<double> costs =
      costs_text.empty() ? std::vector<double>(n, 1.0) : parse_double_list(costs_text);
  if (costs.size() == 1 && n > 1) costs.assign(n, costs.front());
  ContestConfig cfg(n, costs, floor_action);

  ActionProfile x0(n, 0.0);
  if (x0_text.empty())
    x0[0] = floor_action;
  else
    x0 = parse_double_list(x0_text);

  auto kind = parse_policy(policy_name_text);
  if (!kind) throw std::invalid_argument("unknown policy '" + policy_name_text + "'");

  auto traj = run(cfg, x0, make_policy(*kind, eps),
                  {.eps = eps, .max_steps = max_steps, .seed = seed, .record_full = record_full});

  std::printf("policy: %s   n: %zu   eps: %g   seed: %llu\n", policy_name(*kind), n, eps,
              static_cast<unsigned long long>(seed));
  if (traj.bounds_warning)
    std::printf("warning: uniform selection with n = 2 violates the U < 1/2 model bound\n");
  std::printf("outcome: %s%s   steps: %zu\n", outcome_name(traj.outcome),
              traj.stalled ? " (policy stalled)" : "", traj.steps);
  std::printf("final gap: %.6g\n", traj.gaps.back());
  if (traj.warmup_end)
    std::printf("warm-up completed at t = %zu\n", *traj.warmup_end);
  std::printf("final profile: ");
  print_profile(traj.final_profile);
  if (traj.cycle) {
    std::printf("cycle: entry t = %zu, period %zu\n", traj.cycle->entry_time, traj.cycle->period);
    for (const auto& state : traj.cycle->cycle_states) {
      std::printf("  ");
      print_profile(state);
    }
  }
  return 0;
}

inline int run_experiment_cmd(const std::string& config_path, std::optional<std::uint64_t> seed,
                              const std::string& out_dir, const std::string& format,
                              bool timing) {
  ExperimentSpec spec;
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) throw std::invalid_argument("cannot open config file: " + config_path);
    nlohmann::json j;
    in >> j;
    spec = spec_from_json(j);
  }
  if (seed) spec.base_seed = *seed;
  if (timing) spec.measure_time = true;
  if (format != "csv" && format != "svg" && format != "both")
    throw std::invalid_argument("format must be csv, svg, or both");

  const auto rows = run_experiment(spec);
  std::filesystem::create_directories(out_dir);
  const auto results_path = std::filesystem::path(out_dir) / "results.csv";
  {
    std::ofstream out(results_path, std::ios::binary);
    out << emit_csv(rows);
  }
  std::printf("wrote %s (%zu rows)\n", results_path.string().c_str(), rows.size());

  for (const auto& tag : spec.plots) {
    const auto series = emit_plot_data(rows, tag);
    if (format == "csv" || format == "both") {
      const auto path = std::filesystem::path(out_dir) / ("plot_" + tag + ".csv");
      std::ofstream out(path, std::ios::binary);
      out << "policy,x,mean_steps,stderr,count\n";
      for (const auto& s : series)
        for (const auto& p : s.points)
          out << s.policy << ',' << tullock::detail::shortest(p.x) << ','
              << tullock::detail::shortest(p.mean) << ','
              << tullock::detail::shortest(p.stderr_mean) << ',' << p.count << '\n';
      std::printf("wrote %s\n", path.string().c_str());
    }
    if (format == "svg" || format == "both") {
      const auto path = std::filesystem::path(out_dir) / ("plot_" + tag + ".svg");
      std::ofstream out(path, std::ios::binary);
      out << emit_svg(series, tag, "convergence time vs " + tag);
      std::printf("wrote %s\n", path.string().c_str());
    }
  }
  return 0;
}

inline int run_verify(bool quick) {
  const auto checks = tullock::verify::verify_all(quick);
  std::size_t failed = 0;
  std::printf("%-18s  %-52s  %s\n", "module", "check", "status");
  for (const auto& c : checks) {
    if (!c.pass) ++failed;
    std::printf("%-18s  %-52s  %s%s%s\n", c.module.c_str(), c.name.c_str(),
                c.pass ? "PASS" : "FAIL", c.detail.empty() ? "" : "  -- ", c.detail.c_str());
  }
  std::printf("%zu/%zu checks passed\n", checks.size() - failed, checks.size());
  return failed == 0 ? 0 : 1;
}

inline int run_cycle_search(double c2, const std::string& a_grid_text, std::size_t points,
                            std::size_t max_steps) {
  const auto colon = a_grid_text.find(':');
  if (colon == std::string::npos)
    throw std::invalid_argument("--a-grid expects the form LO:HI, e.g. 1e-12:1e-1");
  const double lo = std::stod(a_grid_text.substr(0, colon));
  const double hi = std::stod(a_grid_text.substr(colon + 1));
  if (!(lo > 0.0) || !(hi > lo)) throw std::invalid_argument("--a-grid needs 0 < LO < HI");

  const auto intervals = cycle_candidate_intervals(c2);
  std::printf("cost ratio c2 = %g: %zu candidate interval(s) from the reversed dynamics\n", c2,
              intervals.size());
  for (const auto& iv : intervals)
    std::printf("  a in [%.6g, %.6g]  ->  predicted period %zu\n", iv.lo, iv.hi, iv.period);
  if (intervals.empty()) {
    std::printf("no overshoot reachable (cycles require c2 <= 4/25 = 0.16)\n");
    return 0;
  }

  // log-spaced grid plus the midpoint of every interval that meets [lo, hi]
  std::vector<double> a_values;
  for (std::size_t k = 0; k < points; ++k) {
    const double t = points > 1 ? static_cast<double>(k) / static_cast<double>(points - 1) : 0.0;
    a_values.push_back(std::exp(std::log(lo) + t * (std::log(hi) - std::log(lo))));
  }
  for (const auto& iv : intervals)
    if (iv.hi >= lo && iv.lo <= hi && iv.lo > 0.0)
      a_values.push_back(std::exp(0.5 * (std::log(iv.lo) + std::log(iv.hi))));

  std::size_t confirmed = 0;
  for (const auto& res : search_cycles(c2, a_values, max_steps)) {
    if (!res.validated) continue;
    ++confirmed;
    std::printf("  a = %-14.6g cycle confirmed: period %zu (entry t = %zu)%s\n", res.a,
                res.validated->period, res.validated->entry_time,
                res.predicted_period ? "" : "  [outside predicted intervals]");
  }
  std::printf("%zu of %zu probed floor actions produce cycles\n", confirmed, a_values.size());
  return 0;
}

}  // namespace detail

inline int cli_main(int argc, const char* const* argv) {
  CLI::App app{"best-response dynamics in lottery contests"};
  app.require_subcommand(1);

  // simulate
  auto* sim = app.add_subcommand("simulate", "run one best-response dynamics trajectory");
  std::size_t sim_n = 2;
  std::string sim_costs, sim_x0;
  double sim_a = 0.01, sim_eps = 1e-10;
  std::string sim_policy = "round";
  std::size_t sim_max_steps = 1'000'000;
  std::uint64_t sim_seed = 0;
  bool sim_record = false;
  sim->add_option("--n", sim_n, "number of agents");
  sim->add_option("--costs", sim_costs, "comma-separated agent costs (default: all 1)");
  sim->add_option("--a", sim_a, "floor action in (0, 1/4]");
  sim->add_option("--x0", sim_x0, "comma-separated initial profile (default: a,0,...,0)");
  sim->add_option("--policy", sim_policy, "unif | round | lex | worst | best");
  sim->add_option("--eps", sim_eps, "target approximation");
  sim->add_option("--max-steps", sim_max_steps, "step budget");
  sim->add_option("--seed", sim_seed, "RNG seed");
  sim->add_flag("--record-full", sim_record, "record every profile");

  // experiment
  auto* exp = app.add_subcommand("experiment", "run a grid sweep and emit CSV/SVG");
  std::string exp_config, exp_out = ".", exp_format = "csv";
  std::uint64_t exp_seed = 0;
  bool exp_seed_set = false, exp_timing = false;
  exp->add_option("--config", exp_config, "JSON experiment spec (defaults used when omitted)");
  exp->add_option("--seed", exp_seed, "override the base seed")->each([&](const std::string&) {
    exp_seed_set = true;
  });
  exp->add_option("--out", exp_out, "output directory");
  exp->add_option("--format", exp_format, "csv | svg | both");
  exp->add_flag("--timing", exp_timing,
                "measure wall-clock nanos (breaks byte-determinism of the CSV)");

  // verify
  auto* ver = app.add_subcommand("verify", "run the module invariant suites");
  bool ver_quick = false;
  ver->add_flag("--quick", ver_quick, "reduced sample counts");

  // cycle
  auto* cyc = app.add_subcommand("cycle", "search floor actions that make (1, c2) games cycle");
  double cyc_c2 = 0.1;
  std::string cyc_grid = "1e-12:1e-1";
  std::size_t cyc_points = 41, cyc_max_steps = 20'000;
  cyc->add_option("--c2", cyc_c2, "cost of the strong agent (agent 1 has cost 1)")->required();
  cyc->add_option("--a-grid", cyc_grid, "LO:HI range of floor actions to probe");
  cyc->add_option("--points", cyc_points, "log-spaced probe count");
  cyc->add_option("--max-steps", cyc_max_steps, "forward-validation step budget");

  try {
    app.parse(argc, argv);
    if (sim->parsed())
      return detail::run_simulate(sim_n, sim_costs, sim_a, sim_x0, sim_policy, sim_eps,
                                  sim_max_steps, sim_seed, sim_record);
    if (exp->parsed())
      return detail::run_experiment_cmd(
          exp_config, exp_seed_set ? std::optional<std::uint64_t>{exp_seed} : std::nullopt,
          exp_out, exp_format, exp_timing);
    if (ver->parsed()) return detail::run_verify(ver_quick);
    if (cyc->parsed())
      return detail::run_cycle_search(cyc_c2, cyc_grid, cyc_points, cyc_max_steps);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 2;
}

}  // namespace tullock::cli
