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

// Control waveforms (ω_x(t), ω_y(t)) for H_cont = ω_x σx/2 + ω_y σy/2, with
// time measured in units of the inverse maximum field strength, so every
// schedule satisfies ω_x² + ω_y² ≤ 1.

#include <cstddef>
#include <variant>
#include <vector>

#include "detune_forge/pendulum.hpp"

namespace detune_forge {

inline constexpr std::size_t kDefaultSamples = 4096;
inline constexpr double kFieldBoundSlack = 1e-12;

struct Field {
  double x = 0.0;
  double y = 0.0;
};

struct Segment {
  double duration = 0.0;
  double omega_x = 0.0;
  double omega_y = 0.0;
};

struct PiecewiseSchedule {
  std::vector<Segment> segments;
  double phi_f = 0.0;

  double total_duration() const;
};

/// Uniform samples t_i = i·T/(n−1). Between samples the field is the cubic
/// through the four nearest samples.
struct SampledSchedule {
  double T = 0.0;
  std::vector<Field> samples;
  double phi_f = 0.0;

  std::size_t size() const { return samples.size(); }
  double spacing() const;
  double time_at(std::size_t i) const;
  Field field_at(double t) const;
};

using Schedule = std::variant<PiecewiseSchedule, SampledSchedule>;

struct ShortCorpseParams {
  double theta_f = 0.0;
  double kappa = 0.0;
  double theta1 = 0.0;
  double theta2 = 0.0;

  double total_time() const { return 2.0 * theta1 + theta2; }
};

struct ShortCorpse {
  PiecewiseSchedule schedule;
  ShortCorpseParams params;
};

/// κ = asin(sin(θ_f/2)/2), θ1 = π − κ − θ_f/2, θ2 = 2π − 2κ.
ShortCorpseParams short_corpse_params(double theta_f);

/// One full-strength segment of length θ_f along (cos φ_f, sin φ_f).
/// θ_f = 0 gives the empty (identity) schedule.
PiecewiseSchedule direct_schedule(double theta_f, double phi_f);

/// Segments (−θ1, +θ2, −θ1) at full strength along φ_f. With
/// `use_complement` and θ_f ≤ π the sequence for 2π − θ_f about the reversed
/// axis φ_f + π is built instead; it reaches the same gate up to global phase
/// in less time. Zero-length segments are dropped (θ_f = 2π gives the direct
/// 2π rotation).
ShortCorpse short_corpse(double theta_f, double phi_f, bool use_complement = false);

/// Samples ω_x(t) = dn((t − T/2)/2, k), ω_y = 0 of a solved pendulum
/// solution. The trivial solution (T = 0) gives a zero-duration schedule.
SampledSchedule pa_optimal_schedule(const PendulumSolution& sol,
                                    std::size_t n = kDefaultSamples);

/// Rotates every field sample by φ_f about z.
PiecewiseSchedule rotate_axis(const PiecewiseSchedule& s, double phi_f);
SampledSchedule rotate_axis(const SampledSchedule& s, double phi_f);

/// Signed rotation angle accumulated along the schedule's axis φ_f up to t.
double coaxial_angle(const PiecewiseSchedule& s, double t);

/// Cumulative coaxial angle at every sample time (fourth-order accurate).
std::vector<double> coaxial_angles(const SampledSchedule& s);

double max_field(const PiecewiseSchedule& s);
double max_field(const SampledSchedule& s);

double total_duration(const Schedule& s);

}  // namespace detune_forge
