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

#include "detune_forge/schedules.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <type_traits>

#include "detune_forge/error.hpp"

namespace detune_forge {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kAngleSlack = 1e-12;

void require_angle_range(double theta_f, const char* fn) {
  if (!(theta_f >= -kAngleSlack && theta_f <= 2.0 * kPi + kAngleSlack)) {
    throw PreconditionError(std::string(fn) + ": theta_f = " + std::to_string(theta_f) +
                            " outside [0, 2pi]");
  }
}

Field rotate(const Field& f, double c, double s) { return {f.x * c - f.y * s, f.x * s + f.y * c}; }

// Lagrange cubic through samples j..j+3 evaluated at local coordinate x
// (sample j at x = 0).
double cubic(double f0, double f1, double f2, double f3, double x) {
  const double l0 = -(x - 1.0) * (x - 2.0) * (x - 3.0) / 6.0;
  const double l1 = x * (x - 2.0) * (x - 3.0) / 2.0;
  const double l2 = -x * (x - 1.0) * (x - 3.0) / 2.0;
  const double l3 = x * (x - 1.0) * (x - 2.0) / 6.0;
  return l0 * f0 + l1 * f1 + l2 * f2 + l3 * f3;
}

}  // namespace

double PiecewiseSchedule::total_duration() const {
  double t = 0.0;
  for (const Segment& seg : segments) t += seg.duration;
  return t;
}

double SampledSchedule::spacing() const {
  return samples.size() < 2 ? 0.0 : T / static_cast<double>(samples.size() - 1);
}

double SampledSchedule::time_at(std::size_t i) const {
  return static_cast<double>(i) * spacing();
}

Field SampledSchedule::field_at(double t) const {
  const std::size_t n = samples.size();
  if (n == 0) return {};
  if (n == 1 || T <= 0.0) return samples.front();
  const double pos = std::clamp(t / spacing(), 0.0, static_cast<double>(n - 1));
  if (n < 4) {
    const auto i = std::min(static_cast<std::size_t>(pos), n - 2);
    const double w = pos - static_cast<double>(i);
    return {(1.0 - w) * samples[i].x + w * samples[i + 1].x,
            (1.0 - w) * samples[i].y + w * samples[i + 1].y};
  }
  const auto i = std::min(static_cast<std::size_t>(pos), n - 2);
  const std::size_t j = std::clamp<std::size_t>(i == 0 ? 0 : i - 1, 0, n - 4);
  const double x = pos - static_cast<double>(j);
  return {cubic(samples[j].x, samples[j + 1].x, samples[j + 2].x, samples[j + 3].x, x),
          cubic(samples[j].y, samples[j + 1].y, samples[j + 2].y, samples[j + 3].y, x)};
}

ShortCorpseParams short_corpse_params(double theta_f) {
  ShortCorpseParams p;
  p.theta_f = theta_f;
  p.kappa = std::asin(0.5 * std::sin(0.5 * theta_f));
  p.theta1 = kPi - p.kappa - 0.5 * theta_f;
  if (std::abs(p.theta1) < kAngleSlack) p.theta1 = 0.0;
  p.theta2 = 2.0 * kPi - 2.0 * p.kappa;
  return p;
}

PiecewiseSchedule direct_schedule(double theta_f, double phi_f) {
  require_angle_range(theta_f, "direct_schedule");
  PiecewiseSchedule s;
  s.phi_f = phi_f;
  if (theta_f > 0.0) s.segments.push_back({theta_f, std::cos(phi_f), std::sin(phi_f)});
  return s;
}

ShortCorpse short_corpse(double theta_f, double phi_f, bool use_complement) {
  require_angle_range(theta_f, "short_corpse");
  const bool complement = use_complement && theta_f <= kPi;
  const double angle = complement ? 2.0 * kPi - theta_f : theta_f;
  const double axis = complement ? phi_f + kPi : phi_f;

  ShortCorpse out;
  out.params = short_corpse_params(angle);
  out.schedule.phi_f = phi_f;
  const double cx = std::cos(axis);
  const double cy = std::sin(axis);
  const Segment legs[] = {{out.params.theta1, -cx, -cy},
                          {out.params.theta2, cx, cy},
                          {out.params.theta1, -cx, -cy}};
  for (const Segment& seg : legs) {
    if (seg.duration > 0.0) out.schedule.segments.push_back(seg);
  }
  return out;
}

SampledSchedule pa_optimal_schedule(const PendulumSolution& sol, std::size_t n) {
  if (!sol.solved) throw PreconditionError("pa_optimal_schedule: pendulum solution is unsolved");
  if (n < 2) throw PreconditionError("pa_optimal_schedule: need at least 2 samples");
  SampledSchedule s;
  s.T = sol.T;
  if (sol.trivial()) {
    s.samples.assign(2, Field{});
    return s;
  }
  s.samples.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    s.samples[i] = {pendulum_rate(sol, s.time_at(i)), 0.0};
  }
  // Pin the symmetric partner exactly; dn is even about T/2.
  for (std::size_t i = 0; i < n / 2; ++i) s.samples[n - 1 - i] = s.samples[i];
  return s;
}

PiecewiseSchedule rotate_axis(const PiecewiseSchedule& s, double phi_f) {
  const double c = std::cos(phi_f);
  const double sn = std::sin(phi_f);
  PiecewiseSchedule out = s;
  for (Segment& seg : out.segments) {
    const Field f = rotate({seg.omega_x, seg.omega_y}, c, sn);
    seg.omega_x = f.x;
    seg.omega_y = f.y;
  }
  out.phi_f = s.phi_f + phi_f;
  return out;
}

SampledSchedule rotate_axis(const SampledSchedule& s, double phi_f) {
  const double c = std::cos(phi_f);
  const double sn = std::sin(phi_f);
  SampledSchedule out = s;
  for (Field& f : out.samples) f = rotate(f, c, sn);
  out.phi_f = s.phi_f + phi_f;
  return out;
}

double coaxial_angle(const PiecewiseSchedule& s, double t) {
  const double cx = std::cos(s.phi_f);
  const double cy = std::sin(s.phi_f);
  double angle = 0.0;
  double elapsed = 0.0;
  for (const Segment& seg : s.segments) {
    const double dt = std::min(seg.duration, std::max(0.0, t - elapsed));
    angle += dt * (seg.omega_x * cx + seg.omega_y * cy);
    elapsed += seg.duration;
    if (elapsed >= t) break;
  }
  return angle;
}

std::vector<double> coaxial_angles(const SampledSchedule& s) {
  const double cx = std::cos(s.phi_f);
  const double cy = std::sin(s.phi_f);
  std::vector<double> out(s.size(), 0.0);
  if (s.size() < 2 || s.T <= 0.0) return out;
  // Three-point Gauss–Legendre is exact on the cubic interpolant.
  const double h = s.spacing();
  const double g = std::sqrt(0.6);
  const double nodes[] = {-g, 0.0, g};
  const double weights[] = {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};
  for (std::size_t i = 0; i + 1 < s.size(); ++i) {
    const double mid = (static_cast<double>(i) + 0.5) * h;
    double acc = 0.0;
    for (int q = 0; q < 3; ++q) {
      const Field f = s.field_at(mid + 0.5 * h * nodes[q]);
      acc += weights[q] * (f.x * cx + f.y * cy);
    }
    out[i + 1] = out[i] + 0.5 * h * acc;
  }
  return out;
}

double max_field(const PiecewiseSchedule& s) {
  double m = 0.0;
  for (const Segment& seg : s.segments) m = std::max(m, std::hypot(seg.omega_x, seg.omega_y));
  return m;
}

double max_field(const SampledSchedule& s) {
  double m = 0.0;
  for (const Field& f : s.samples) m = std::max(m, std::hypot(f.x, f.y));
  return m;
}

double total_duration(const Schedule& s) {
  return std::visit(
      [](const auto& sched) {
        if constexpr (std::is_same_v<std::decay_t<decltype(sched)>, PiecewiseSchedule>) {
          return sched.total_duration();
        } else {
          return sched.T;
        }
      },
      s);
}

}  // namespace detune_forge
