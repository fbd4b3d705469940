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

#pragma once

// Robustness constraint and root search for the pulse-area-optimal pendulum
// parameter, θ_f sweeps, and the phase-portrait picture of the time-optimal
// (short-CORPSE) control.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "detune_forge/pendulum.hpp"
#include "detune_forge/propagation.hpp"
#include "detune_forge/schedules.hpp"

namespace detune_forge {

inline constexpr double kConstraintTolerance = 1e-8;
inline constexpr double kSearchMaxK = 50.0;

/// g(θ_f, k) = ∫₀^T cos Θ(t) dt with T from the branch formula. Closed form:
/// g = 4(U − 2∫₀^U sn²(u, k) du), U = T/4. Throws EllipticDomainError when
/// k > k_sup and PreconditionError for branch B with k ≤ 1.
double constraint_g(double theta_f, double k, Branch branch);

struct SolveOptions {
  /// At θ_f = 0 return the k ≈ 1.2 oscillation instead of the identity.
  bool nontrivial_at_zero = false;
};

/// Root of constraint_g over k. Tries the branch expected from the cached
/// branch-switch threshold first and falls back to the other one. Throws
/// SolverError if neither branch brackets a root with |g| < 1e-8.
PendulumSolution solve_k(double theta_f, const SolveOptions& opts = {});

/// θ* in (π, 2π) where k(θ_f) meets k_sup and the solution moves from branch
/// B to branch A. Computed once per process.
double branch_switch_threshold();

struct SweepOptions {
  std::size_t samples = kDefaultSamples;
  double h = kDefaultStep;
  /// 0 means DETUNE_FORGE_THREADS, falling back to the hardware count.
  std::size_t threads = 0;
};

struct SweepRow {
  double theta_f = 0.0;
  double k = 0.0;
  Branch branch = Branch::A;
  double T = 0.0;
  double L_p = 0.0;
  double L_t = 0.0;
  double L_e = 0.0;
  double g_residual = 0.0;
  double u1_norm = 0.0;
  double L_t_sc = 0.0;  // short-CORPSE, equal to its pulse area
  double L_p_sc = 0.0;
  double L_direct = 0.0;
  std::string status = "ok";

  bool ok() const { return status == "ok"; }
};

/// Linearly spaced grid of n points on [start, stop].
std::vector<double> linspace(double start, double stop, std::size_t n);

/// One row per grid point, in grid order. A failed solve marks its row's
/// status and the sweep continues. Grid values must lie in (0, 2π].
std::vector<SweepRow> sweep(std::span<const double> theta_f_grid, const SweepOptions& opts = {});

/// Indices i where k jumps between rows i and i+1 by more than 10·Δθ_f
/// without a branch change.
std::vector<std::size_t> continuity_violations(std::span<const SweepRow> rows);

struct TimeOptimalParams {
  double theta_f = 0.0;
  double theta_SB = 0.0;  // arcsin(sin(θ_f/2)/2), equal to short-CORPSE κ
  double b = 1.0;         // cos κ
  double kappa = 0.0;
  /// |Θ| where γ_x = ±(b + cos Θ) vanishes: π − θ_SB.
  double switch_angle = 0.0;
  /// |γ_x| at the endpoints Θ = ±θ_f/2: cos(θ_f/2) + b.
  double k_b = 0.0;
};

TimeOptimalParams time_optimal_params(double theta_f);

struct PortraitPoint {
  double Theta = 0.0;
  double gamma_x = 0.0;
  int segment_index = 0;
};

/// The short-CORPSE curve in the (Θ, γ_x) plane: segment 0 runs from
/// (−θ_f/2, −k_b) down to the switchback at −switch_angle, segment 1 up to
/// +switch_angle on the γ_x > 0 side, segment 2 down to (θ_f/2, −k_b).
/// n points per segment; degenerate segments are omitted.
std::vector<PortraitPoint> phase_portrait(double theta_f, std::size_t n);

/// Θ(t) obtained by traversing the portrait at unit speed |dΘ/dt| = 1.
double portrait_angle(double theta_f, double t);

}  // namespace detune_forge
