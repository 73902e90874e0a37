#include "tullock/contest.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "tullock/rng.hpp"

using namespace tullock;

namespace {

// Independent oracle: dense grid search for sup_z u_i(z, opp).
double grid_max_utility(double opp, double cost, double z_hi, double step_size) {
  double best = 0.0;
  for (double z = 0.0; z <= z_hi; z += step_size) {
    const double u = (z + opp) > 0.0 ? z / (z + opp) - cost * z : 0.0;
    best = std::max(best, u);
  }
  return best;
}

ContestConfig two_unit() { return ContestConfig::homogeneous_config(2, 1.0, 0.01); }

TEST(ContestConfig, Invariants) {
  EXPECT_THROW(ContestConfig(1, {1.0}, 0.01), std::invalid_argument);
  EXPECT_THROW(ContestConfig(2, {1.0, -1.0}, 0.01), std::invalid_argument);
  EXPECT_THROW(ContestConfig(2, {1.0, 0.0}, 0.01), std::invalid_argument);
  EXPECT_THROW(ContestConfig(2, {1.0, 1.0}, 0.0), std::invalid_argument);
  EXPECT_THROW(ContestConfig(2, {1.0, 1.0}, 0.26), std::invalid_argument);
  EXPECT_NO_THROW(ContestConfig(2, {1.0, 0.16}, 0.25));  // Example-2 floor
  EXPECT_TRUE(ContestConfig(3, {2.0, 2.0, 2.0}, 0.1).homogeneous());
  EXPECT_FALSE(ContestConfig(2, {1.0, 0.1}, 0.1).homogeneous());
}

TEST(Utility, SymmetricHalfShare) {
  EXPECT_DOUBLE_EQ(utility(two_unit(), {0.25, 0.25}, 0), 0.25);
}

TEST(Utility, AllZeroProfileGivesEqualShare) {
  auto cfg = ContestConfig::homogeneous_config(3, 1.0, 0.01);
  EXPECT_DOUBLE_EQ(utility(cfg, {0.0, 0.0, 0.0}, 0), 1.0 / 3.0);
}

TEST(Utility, Table1State) {
  // Direct evaluation at the Table-1 state; hand value 0.17439/0.17754 - 0.0174390.
  ContestConfig cfg(2, {1.0, 0.1}, 1e-5);
  EXPECT_NEAR(utility(cfg, {0.00315, 0.17439}, 1), 0.964818519432241, 1e-12);
}

TEST(Utility, Errors) {
  EXPECT_THROW(utility(two_unit(), {0.1, 0.1}, 2), std::out_of_range);
  EXPECT_THROW(utility(two_unit(), {0.1}, 0), std::invalid_argument);
  EXPECT_THROW(utility(two_unit(), {0.1, std::nan("")}, 0), std::invalid_argument);
  EXPECT_THROW(utility(two_unit(), {0.1, -0.1}, 0), std::invalid_argument);
}

TEST(BestResponse, Branches) {
  EXPECT_DOUBLE_EQ(best_response_to(0.09, 1.0, 0.01), 0.21);
  EXPECT_DOUBLE_EQ(best_response_to(0.0, 1.0, 0.01), 0.01);       // floor
  EXPECT_NEAR(best_response_to(0.00315, 0.1, 1e-5), 0.174332393492988, 1e-12);
  // Example 2: c2 = 4/25, S = 1/4 -> sqrt(25/16) - 1/4 = 1, exactly.
  EXPECT_EQ(best_response_to(0.25, 4.0 / 25.0, 0.25), 1.0);
  EXPECT_DOUBLE_EQ(best_response_to(1.5, 1.0, 0.01), 0.0);        // beyond 1/c
}

TEST(BestResponse, ContinuityAtUpperBranch) {
  for (double c : {0.1, 0.5, 1.0, 2.0, 7.5}) {
    EXPECT_LE(std::abs(best_response_to(1.0 / c, c, 0.01)), 1e-12) << "c=" << c;
  }
}

TEST(BestDeviationUtility, ClosedForm) {
  EXPECT_DOUBLE_EQ(best_deviation_to(0.25, 1.0, 0.01), 0.25);
  EXPECT_DOUBLE_EQ(best_deviation_to(1.5, 1.0, 0.01), 0.0);
  EXPECT_DOUBLE_EQ(best_deviation_to(0.09, 1.0, 0.01), 0.49);
  EXPECT_DOUBLE_EQ(best_deviation_to(0.0, 1.0, 0.01), 0.99);  // 1 - c a at S = 0
}

TEST(BestDeviationUtility, MatchesUtilityAtBestResponseAndGridMax) {
  SplitMix64 rng(7001);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 2 + rng.next_index(4);
    const double c = 0.1 + 3.9 * rng.next_double();
    auto cfg = ContestConfig::homogeneous_config(n, c, 0.01);
    ActionProfile x(n);
    for (auto& v : x) v = 0.05 + rng.next_double();
    const std::size_t i = rng.next_index(n);
    const double opp = opponent_output(x, i);
    const double dev = best_deviation_utility(cfg, x, i);

    ActionProfile at_br = x;
    at_br[i] = best_response(cfg, x, i);
    EXPECT_NEAR(dev, utility(cfg, at_br, i), 1e-12);
    EXPECT_GE(dev + 1e-12, utility(cfg, x, i));  // deviating never hurts

    if (opp <= 1.0 / c) {
      const double grid = grid_max_utility(opp, c, 1.0 / c, 5e-5 / c);
      EXPECT_NEAR(dev, grid, 1e-6);
      EXPECT_GE(dev + 1e-15, grid);
    }
  }
}

TEST(BestResponse, OptimalityAgainstGrid) {
  // Utility at the best response beats every grid point on [0, 1/c].
  SplitMix64 rng(7002);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t n = 2 + rng.next_index(4);
    std::vector<double> costs(n);
    for (auto& c : costs) c = 0.1 + 9.9 * rng.next_double();
    ContestConfig cfg(n, costs, 0.01);
    ActionProfile x(n);
    for (auto& v : x) v = rng.next_double() < 0.2 ? 0.0 : 2.0 * rng.next_double();
    const std::size_t i = rng.next_index(n);
    if (opponent_output(x, i) == 0.0) continue;
    ActionProfile y = x;
    y[i] = best_response(cfg, x, i);
    const double at_br = utility(cfg, y, i);
    for (int k = 0; k <= 64; ++k) {
      y[i] = k / 64.0 / cfg.costs[i];
      EXPECT_GE(at_br + 1e-12, utility(cfg, y, i));
    }
  }
}

TEST(EquilibriumProfile, ClosedForm) {
  EXPECT_EQ(equilibrium_profile(two_unit()), (ActionProfile{0.25, 0.25}));
  auto e3 = equilibrium_profile(ContestConfig::homogeneous_config(3, 1.0, 0.01));
  EXPECT_DOUBLE_EQ(e3[0], 2.0 / 9.0);
  auto ec2 = equilibrium_profile(ContestConfig::homogeneous_config(2, 2.0, 0.01));
  EXPECT_DOUBLE_EQ(ec2[1], 0.125);
  EXPECT_THROW(equilibrium_profile(ContestConfig(2, {1.0, 0.5}, 0.01)), std::invalid_argument);
}

TEST(EpsilonGap, ExactEquilibriumIsZero) {
  for (std::size_t n = 2; n <= 50; ++n) {
    auto cfg = ContestConfig::homogeneous_config(n, 1.0, 0.01);
    EXPECT_LE(epsilon_gap(cfg, equilibrium_profile(cfg)), 1e-12) << "n=" << n;
  }
}

TEST(EpsilonGap, FrozenGridSearchValue) {
  // Oracle: grid search over z in [0,1] step 1e-6 maximizing u_i(z, opp) gives
  // deviation payoffs d1 = 0.293484861008, d2 = 0.49; u = (0.21, 0.49), so
  // gap = 1 - 0.21/0.2934848610 = 0.284460536470501 and agent 2 contributes 0.
  const double gap = epsilon_gap(two_unit(), {0.09, 0.21});
  EXPECT_NEAR(gap, 0.284460536470501, 1e-12);

  const double grid_d1 = grid_max_utility(0.21, 1.0, 1.0, 1e-6);
  EXPECT_NEAR(1.0 - 0.21 / grid_d1, gap, 1e-6);
}

TEST(EpsilonGap, AllZerosUsesFloorConvention) {
  ContestConfig cfg(2, {1.0, 1.0}, 0.01);
  EXPECT_NEAR(epsilon_gap(cfg, {0.0, 0.0}), 1.0 - 0.5 / (1.0 - 0.01), 1e-15);
}

TEST(EpsilonGap, InfiniteWhenDeviationZeroAndUtilityNegative) {
  auto cfg = ContestConfig::homogeneous_config(3, 1.0, 0.01);
  EXPECT_TRUE(std::isinf(epsilon_gap(cfg, {1.0, 1.0, 1.0})));
}

TEST(IsEpsilonEquilibrium, Basics) {
  auto cfg = two_unit();
  EXPECT_TRUE(is_epsilon_equilibrium(cfg, equilibrium_profile(cfg), 1e-9));
  EXPECT_FALSE(is_epsilon_equilibrium(cfg, {1.0, 1.0}, 0.999));
  EXPECT_TRUE(is_epsilon_equilibrium(cfg, {0.09, 0.21}, 0.5));
  EXPECT_FALSE(is_epsilon_equilibrium(cfg, {0.09, 0.21}, 0.2));
  EXPECT_THROW(is_epsilon_equilibrium(cfg, {0.1, 0.1}, 0.0), std::invalid_argument);
}

TEST(RescaleUnitCost, Examples) {
  ContestConfig cfg = ContestConfig::homogeneous_config(2, 2.0, 0.01);
  auto [unit, y] = rescale_unit_cost(cfg, {0.125, 0.125});
  EXPECT_EQ(unit.costs.front(), 1.0);
  EXPECT_DOUBLE_EQ(unit.floor_action, 0.02);
  EXPECT_EQ(y, (ActionProfile{0.25, 0.25}));

  auto cfg1 = two_unit();
  auto [same, z] = rescale_unit_cost(cfg1, {0.1, 0.2});
  EXPECT_EQ(z, (ActionProfile{0.1, 0.2}));
  EXPECT_EQ(same.floor_action, cfg1.floor_action);

  auto cfg_half = ContestConfig::homogeneous_config(3, 0.5, 0.01);
  auto [unit3, w] = rescale_unit_cost(cfg_half, {0.5, 0.5, 0.0});
  EXPECT_EQ(w, (ActionProfile{0.25, 0.25, 0.0}));
  EXPECT_EQ(unit3.costs.front(), 1.0);

  EXPECT_THROW(rescale_unit_cost(ContestConfig(2, {1.0, 2.0}, 0.01), {0.1, 0.1}),
               std::invalid_argument);

  // a rescaled floor c*a beyond 1/4 cannot form a valid config
  auto big_floor = ContestConfig::homogeneous_config(2, 4.0, 0.2);
  EXPECT_THROW(rescale_unit_cost(big_floor, {0.1, 0.1}), std::invalid_argument);
}

TEST(RescaleUnitCost, CommutesWithBestResponse) {
  // rescale(step(x)) == step(rescale(x)) for the moving agent's entry.
  SplitMix64 rng(7003);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t n = 2 + rng.next_index(4);
    const double c = 0.25 + 3.75 * rng.next_double();
    auto cfg = ContestConfig::homogeneous_config(n, c, 0.2 * std::min(1.0, 1.0 / c));
    ActionProfile x(n);
    for (auto& v : x) v = rng.next_double() < 0.2 ? 0.0 : rng.next_double() / c;
    const std::size_t i = rng.next_index(n);

    ActionProfile stepped = x;
    stepped[i] = best_response(cfg, x, i);
    auto [unit_a, y_of_step] = rescale_unit_cost(cfg, stepped);

    auto [unit_b, y] = rescale_unit_cost(cfg, x);
    ActionProfile step_of_y = y;
    step_of_y[i] = best_response(unit_b, y, i);

    for (std::size_t j = 0; j < n; ++j)
      EXPECT_NEAR(y_of_step[j], step_of_y[j], 1e-12);
  }
}

}  // namespace
