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

// Propagation of control schedules under the faulty Hamiltonian
//
//   H_total(t) = ω_x σx/2 + ω_y σy/2 + f σz/2,
//
// either exactly (piecewise-constant schedules, closed-form segment rotors)
// or with fixed-step RK4 (sampled schedules). The order-by-order pair
// (U0, U1) of U = U0 + f U1 + O(f²) is available from both, as is the
// robustness integral W = ∫ U0† σz U0 dt; U1(T) = 0 exactly when W = 0.

#include <cstddef>
#include <span>
#include <vector>

#include "detune_forge/schedules.hpp"
#include "detune_forge/su2.hpp"

namespace detune_forge {

inline constexpr double kDefaultStep = 1e-3;

struct OrderByOrder {
  Rotor u0;
  FirstOrderTerm u1;
};

struct TrajectoryPoint {
  double t = 0.0;
  BlochPoint p;
};

struct CostReport {
  double L_t = 0.0;  // operation time
  double L_p = 0.0;  // pulse area ∫|ω| dt
  double L_e = 0.0;  // energy ∫|ω|² dt
};

struct ScanPoint {
  double f = 0.0;
  double infidelity = 0.0;
};

struct SimulationOptions {
  double h = kDefaultStep;
  std::size_t trajectory_points = 0;  // 0 disables the trajectory
  BlochPoint start{0.0, 0.0, 1.0};
};

struct SimulationResult {
  Rotor u_final;  // full faulty propagator at strength f
  Rotor u0_final;
  FirstOrderTerm u1_final;
  std::vector<TrajectoryPoint> trajectory;
  double f = 0.0;
};

/// Rotor of one constant segment of length dt under detuning f.
Rotor segment_rotor(const Segment& seg, double f, double dt);

Rotor propagate_exact(const PiecewiseSchedule& s, double f);

/// RK4 on the Pauli 4-vector; h is an upper bound on the step.
Rotor propagate_rk4(const SampledSchedule& s, double f, double h = kDefaultStep);
/// Segment-aligned RK4, for cross-checking against propagate_exact.
Rotor propagate_rk4(const PiecewiseSchedule& s, double f, double h = kDefaultStep);

/// Exact for piecewise schedules, RK4 for sampled ones.
Rotor propagate(const Schedule& s, double f, double h = kDefaultStep);

/// Integrates dU0/dt = −iH_cont U0 and dU1/dt = −i(H_cont U1 + σz/2 U0) together.
OrderByOrder propagate_order_by_order(const SampledSchedule& s, double h = kDefaultStep);
OrderByOrder propagate_order_by_order(const PiecewiseSchedule& s, double h = kDefaultStep);
OrderByOrder propagate_order_by_order(const Schedule& s, double h = kDefaultStep);

/// (x, y, z) Pauli components of ∫₀^T U0†(t) σz U0(t) dt. Closed form per
/// segment for piecewise schedules; RK4 alongside U0 for sampled ones.
Vec3 robustness_integral(const PiecewiseSchedule& s);
Vec3 robustness_integral(const SampledSchedule& s, double h = kDefaultStep);
Vec3 robustness_integral(const Schedule& s, double h = kDefaultStep);

/// U1(T) = −i U0(T) ∫ U0† (σz/2) U0 dt.
FirstOrderTerm first_order_from_integral(const Rotor& u0_final, const Vec3& integral);

/// n_out uniformly spaced Bloch vectors of the faulty evolution from `start`.
std::vector<TrajectoryPoint> bloch_trajectory(const PiecewiseSchedule& s, double f,
                                              const BlochPoint& start, std::size_t n_out);
std::vector<TrajectoryPoint> bloch_trajectory(const SampledSchedule& s, double f,
                                              const BlochPoint& start, std::size_t n_out,
                                              double h = kDefaultStep);
std::vector<TrajectoryPoint> bloch_trajectory(const Schedule& s, double f,
                                              const BlochPoint& start, std::size_t n_out,
                                              double h = kDefaultStep);

/// Exact sums on piecewise schedules, trapezoid rule on sampled ones.
CostReport costs(const PiecewiseSchedule& s);
CostReport costs(const SampledSchedule& s);
CostReport costs(const Schedule& s);

SimulationResult simulate(const Schedule& s, double f, const SimulationOptions& opts = {});

/// {1e-3, 3e-3, 1e-2, 3e-2, 1e-1}
std::vector<double> default_scan_grid();

/// 1 − F(target, U_f) for each f ∈ (0, 0.5].
std::vector<ScanPoint> infidelity_scan(const Schedule& s, const Rotor& target,
                                       std::span<const double> f_list,
                                       double h = kDefaultStep);

/// Least-squares slope of log(1 − F) against log f. Points with zero
/// infidelity are skipped.
double fit_loglog_slope(std::span<const ScanPoint> scan);

}  // namespace detune_forge
