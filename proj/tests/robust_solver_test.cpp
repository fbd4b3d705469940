// Copyright 2026 The detune-forge Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "detune_forge/elliptic.hpp"
#include "detune_forge/error.hpp"
#include "detune_forge/robust_solver.hpp"
#include "oracles.hpp"

namespace df = detune_forge;
using df::Branch;
using std::numbers::pi;

// (θ_f, k, branch, T) roots frozen from an mpmath bisection on the
// quadrature form of the constraint.
struct Root {
  double theta_f;
  double k;
  Branch branch;
  double T;
};

constexpr Root kRoots[] = {
    {1e-3, 1.210535459871393, Branch::B, 16.874975694548209},
    {pi / 2, 1.301626977090666, Branch::B, 13.733882512456103},
    {pi, 1.367646628539438, Branch::B, 10.768820014901933},
    {1.5 * pi, 1.165027809096369, Branch::A, 8.219015325773366},
    {1.8 * pi, 0.648948589066866, Branch::A, 6.972553678377547},
};

TEST(ConstraintG, FullTurnAtZeroParameterVanishes) {
  EXPECT_NEAR(df::constraint_g(2 * pi, 0.0, Branch::A), 0.0, 1e-14);
}

TEST(ConstraintG, FrozenValues) {
  EXPECT_NEAR(df::constraint_g(2 * pi, 0.5, Branch::A), -0.638594030853654981, 1e-13);
  EXPECT_NEAR(df::constraint_g(pi, 1.3, Branch::B), -0.746254655506407, 1e-12);
  EXPECT_NEAR(df::constraint_g(pi, 1.3, Branch::A), 2.18538224894026, 1e-12);
  EXPECT_NEAR(df::constraint_g(1.5 * pi, 1.1, Branch::A), 0.637843373822431, 1e-12);
  EXPECT_NEAR(df::constraint_g(1.0, 2.5, Branch::B), 4.18277826941204, 1e-12);
  EXPECT_NEAR(df::operation_time(2 * pi, 0.5, Branch::A), 7.416298709205487674, 1e-13);
}

TEST(ConstraintG, MatchesPendulumOde) {
  for (const auto& [theta, k, branch] :
       {std::tuple{2 * pi, 0.5, Branch::A}, std::tuple{pi, 1.3, Branch::B},
        std::tuple{pi, 1.3, Branch::A}, std::tuple{1.0, 2.5, Branch::B}}) {
    const double T = oracle::operation_time(theta, k, branch == Branch::B);
    EXPECT_NEAR(df::operation_time(theta, k, branch), T, 1e-10);
    EXPECT_NEAR(df::constraint_g(theta, k, branch), oracle::constraint_g(k, T), 1e-9);
  }
}

TEST(ConstraintG, SignChangeBracketsPiRoot) {
  EXPECT_LT(df::constraint_g(pi, 1.3, Branch::B), 0.0);
  EXPECT_GT(df::constraint_g(pi, 1.45, Branch::B), 0.0);
}

TEST(ConstraintG, Errors) {
  EXPECT_THROW(df::constraint_g(pi, 2.5, Branch::A), df::EllipticDomainError);
  EXPECT_THROW(df::constraint_g(pi, 0.9, Branch::B), df::PreconditionError);
}

TEST(SolveK, FullTurn) {
  const auto sol = df::solve_k(2 * pi);
  EXPECT_NEAR(sol.k, 0.0, 1e-6);
  EXPECT_EQ(sol.branch, Branch::A);
  EXPECT_NEAR(sol.T, 2 * pi, 1e-8);
  EXPECT_LT(std::abs(sol.g_residual), 1e-8);
  EXPECT_DOUBLE_EQ(sol.lambda, pi);
}

TEST(SolveK, FrozenRoots) {
  for (const Root& r : kRoots) {
    const auto sol = df::solve_k(r.theta_f);
    EXPECT_EQ(sol.branch, r.branch) << r.theta_f;
    EXPECT_NEAR(sol.k, r.k, 1e-12) << r.theta_f;
    EXPECT_NEAR(sol.T, r.T, 1e-11) << r.theta_f;
    EXPECT_LT(std::abs(sol.g_residual), 1e-12) << r.theta_f;
  }
}

TEST(SolveK, SmallAngleLimit) {
  const auto sol = df::solve_k(1e-3);
  EXPECT_NEAR(sol.k, 1.2, 0.1);
}

TEST(SolveK, ZeroAngle) {
  const auto trivial = df::solve_k(0.0);
  EXPECT_TRUE(trivial.trivial());
  df::SolveOptions opts;
  opts.nontrivial_at_zero = true;
  const auto osc = df::solve_k(0.0, opts);
  EXPECT_EQ(osc.branch, Branch::B);
  EXPECT_NEAR(osc.k, 1.2, 0.1);
  EXPECT_GT(osc.T, 0.0);
}

TEST(SolveK, JustBelowFullTurn) {
  const auto sol = df::solve_k(6.2831853);
  EXPECT_EQ(sol.branch, Branch::A);
  EXPECT_LT(sol.k, 1e-6);
}

TEST(SolveK, Errors) {
  EXPECT_THROW(df::solve_k(-0.5), df::PreconditionError);
  EXPECT_THROW(df::solve_k(7.0), df::PreconditionError);
}

TEST(BranchSwitch, Threshold) {
  const double t = df::branch_switch_threshold();
  EXPECT_GT(t, 0.0);
  EXPECT_LT(t, 2 * pi);
  EXPECT_NEAR(t, 4.562636613681294, 1e-4);
  // Both readings of the quoted value, for the record only.
  RecordProperty("threshold_over_pi", std::to_string(t / pi));
}

TEST(BranchSwitch, WaveformSignsEitherSide) {
  const double t = df::branch_switch_threshold();
  const auto above = df::solve_k(t + 0.1);
  const auto below = df::solve_k(t - 0.1);
  EXPECT_EQ(above.branch, Branch::A);
  EXPECT_EQ(below.branch, Branch::B);
  const auto s_above = df::pa_optimal_schedule(above, 513);
  const auto s_below = df::pa_optimal_schedule(below, 513);
  bool above_positive = true;
  bool below_negative = false;
  for (const auto& f : s_above.samples) above_positive = above_positive && f.x > 0.0;
  for (const auto& f : s_below.samples) below_negative = below_negative || f.x < 0.0;
  EXPECT_TRUE(above_positive);
  EXPECT_TRUE(below_negative);
}

TEST(BranchSwitch, RootMeetsKSup) {
  const double t = df::branch_switch_threshold();
  EXPECT_NEAR(df::constraint_g(t, df::k_sup(t), Branch::B), 0.0, 1e-9);
}

TEST(Sweep, SinglePointAtFullTurn) {
  const std::vector<double> grid{2 * pi};
  const auto rows = df::sweep(grid);
  ASSERT_EQ(rows.size(), 1U);
  EXPECT_TRUE(rows[0].ok());
  EXPECT_NEAR(rows[0].k, 0.0, 1e-6);
  EXPECT_EQ(rows[0].branch, Branch::A);
  EXPECT_NEAR(rows[0].T, 2 * pi, 1e-8);
  EXPECT_NEAR(rows[0].L_p, 2 * pi, 1e-6);
  EXPECT_NEAR(rows[0].L_t_sc, 2 * pi, 1e-12);
  EXPECT_EQ(rows[0].L_direct, 2 * pi);
}

TEST(Sweep, RowsFollowGridOrderWithAnyThreadCount) {
  const std::vector<double> grid{4.0, 1.0, 6.0, 2.5, 0.3};
  df::SweepOptions one;
  one.threads = 1;
  one.samples = 513;
  df::SweepOptions many = one;
  many.threads = 4;
  const auto a = df::sweep(grid, one);
  const auto b = df::sweep(grid, many);
  ASSERT_EQ(a.size(), grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    EXPECT_EQ(a[i].theta_f, grid[i]);
    EXPECT_EQ(a[i].k, b[i].k);
    EXPECT_EQ(a[i].L_p, b[i].L_p);
    EXPECT_EQ(a[i].u1_norm, b[i].u1_norm);
  }
}

TEST(Sweep, FullGridProperties) {
  const auto grid = df::linspace(2 * pi / 100, 2 * pi, 100);
  const auto rows = df::sweep(grid);
  const double threshold = df::branch_switch_threshold();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    ASSERT_TRUE(r.ok()) << r.theta_f;
    EXPECT_LT(r.u1_norm, 1e-6) << r.theta_f;
    EXPECT_LE(r.L_p, r.L_p_sc + 1e-9) << r.theta_f;
    EXPECT_GE(r.L_t, r.L_t_sc - 1e-9) << r.theta_f;
    if (i > 0) {
      EXPECT_LT(r.L_t, rows[i - 1].L_t) << r.theta_f;
    }
    if (r.theta_f > threshold) {
      EXPECT_EQ(r.branch, Branch::A);
      EXPECT_NEAR(r.L_p, r.theta_f, 1e-4);
    }
  }
  EXPECT_TRUE(df::continuity_violations(rows).empty());
}

TEST(Sweep, RejectsOutOfRangeGrid) {
  const std::vector<double> grid{0.0, 1.0};
  EXPECT_THROW(df::sweep(grid), df::PreconditionError);
}

TEST(TimeOptimalParams, Examples) {
  const auto p = df::time_optimal_params(pi);
  EXPECT_NEAR(p.theta_SB, pi / 6, 1e-15);
  EXPECT_NEAR(p.b, std::sqrt(3.0) / 2, 1e-15);
  EXPECT_NEAR(p.switch_angle, 5 * pi / 6, 1e-15);
  EXPECT_EQ(df::time_optimal_params(0.0).theta_SB, 0.0);
  const auto full = df::time_optimal_params(2 * pi);
  EXPECT_NEAR(full.theta_SB, 0.0, 1e-15);
  EXPECT_NEAR(full.b, 1.0, 1e-15);
}

TEST(TimeOptimalParams, SwitchbackCondition) {
  for (const double theta : {0.2, pi / 2, pi, 1.5 * pi, 2 * pi}) {
    const auto p = df::time_optimal_params(theta);
    EXPECT_NEAR(4 * std::sin(p.theta_SB), 2 * std::sin(theta / 2), 1e-15);
    EXPECT_NEAR(4 * std::sin(p.switch_angle), 2 * std::sin(theta / 2), 1e-14);
    EXPECT_LE(std::abs(p.b), 1.0);
    EXPECT_NEAR(p.kappa, df::short_corpse_params(theta).kappa, 0.0);
  }
}

TEST(PhasePortrait, CurveShape) {
  for (const double theta : {pi / 2, pi, 1.5 * pi}) {
    const auto p = df::time_optimal_params(theta);
    const auto pts = df::phase_portrait(theta, 64);
    ASSERT_EQ(pts.size(), 3U * 64);
    EXPECT_NEAR(pts.front().Theta, -theta / 2, 1e-15);
    EXPECT_NEAR(pts.back().Theta, theta / 2, 1e-15);
    EXPECT_NEAR(pts.front().gamma_x, -p.k_b, 1e-15);
    EXPECT_NEAR(pts.back().gamma_x, -p.k_b, 1e-15);
    int zero_rows = 0;
    for (const auto& q : pts) {
      if (std::abs(std::abs(q.Theta) - p.switch_angle) < 1e-15) {
        EXPECT_NEAR(q.gamma_x, 0.0, 1e-10);
        ++zero_rows;
      }
      EXPECT_EQ(q.gamma_x > 1e-12, q.segment_index == 1 && std::abs(q.Theta) < p.switch_angle);
    }
    EXPECT_EQ(zero_rows, 4);
  }
}

TEST(PhasePortrait, ReconstructionMatchesShortCorpse) {
  for (const double theta : {pi / 2, pi, 1.5 * pi}) {
    const auto sc = df::short_corpse(theta, 0.0);
    const double T = sc.params.total_time();
    for (int i = 0; i <= 200; ++i) {
      const double t = T * i / 200.0;
      EXPECT_NEAR(df::portrait_angle(theta, t), df::coaxial_angle(sc.schedule, t) - theta / 2, 1e-9);
    }
  }
}

TEST(PhasePortrait, FullTurnDropsEmptySegments) {
  const auto pts = df::phase_portrait(2 * pi, 10);
  EXPECT_EQ(pts.size(), 10U);
  EXPECT_EQ(pts.front().segment_index, 1);
}
