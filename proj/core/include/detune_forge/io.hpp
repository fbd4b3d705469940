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

// Flat-file artifacts consumed by the plotting scripts. CSV files carry a
// header row and print floating-point values with 12 significant digits.

#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "detune_forge/pendulum.hpp"
#include "detune_forge/propagation.hpp"
#include "detune_forge/robust_solver.hpp"
#include "detune_forge/schedules.hpp"

namespace detune_forge::io {

/// "%.12g"
std::string format_number(double v);

// t, omega_x, omega_y
void write_schedule_csv(std::ostream& os, const SampledSchedule& s);
// index, duration, omega_x, omega_y
void write_schedule_csv(std::ostream& os, const PiecewiseSchedule& s);
void write_schedule_csv(std::ostream& os, const Schedule& s);

/// Inverse of the sampled writer; T is taken from the last row. Throws
/// std::runtime_error on malformed input.
SampledSchedule read_sampled_schedule_csv(std::istream& is);
PiecewiseSchedule read_piecewise_schedule_csv(std::istream& is);

// t, x, y, z
void write_trajectory_csv(std::ostream& os, std::span<const TrajectoryPoint> traj);
// f, infidelity
void write_scan_csv(std::ostream& os, std::span<const ScanPoint> scan);
// theta_f, k, branch, T, L_p, L_t, L_e, g_residual, u1_norm, L_t_sc, L_p_sc, L_direct, status
void write_sweep_csv(std::ostream& os, std::span<const SweepRow> rows);
std::vector<SweepRow> read_sweep_csv(std::istream& is);
// Theta, gamma_x, segment_index
void write_portrait_csv(std::ostream& os, std::span<const PortraitPoint> pts);
// t, theta
void write_angle_csv(std::ostream& os, std::span<const std::pair<double, double>> pts);

struct ResultSummary {
  double theta_f = 0.0;
  std::string schedule_kind;
  CostReport cost;
  double u1_norm = 0.0;
  double fidelity_f0 = 0.0;
};

/// {theta_f, schedule_kind, L_t, L_p, L_e, u1_norm, fidelity_f0}
std::string result_json(const ResultSummary& r);
/// {theta_f, k, branch, T, g_residual}
std::string solution_json(const PendulumSolution& sol);
PendulumSolution parse_solution_json(const std::string& text);

}  // namespace detune_forge::io
