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

#include "detune_forge/propagation.hpp"

#include <array>
#include <cmath>
#include <string>
#include <type_traits>

#include "detune_forge/error.hpp"

namespace detune_forge {
namespace {

constexpr std::size_t kRenormalizeEvery = 1000;

template <std::size_t N>
using State = std::array<double, N>;

template <std::size_t N>
State<N> axpy(const State<N>& y, double a, const State<N>& k) {
  State<N> out;
  for (std::size_t i = 0; i < N; ++i) out[i] = y[i] + a * k[i];
  return out;
}

// (0, v) ⊗ (w, u) for the Pauli-coefficient product, v = half the field.
void pure_times(const Vec3& v, const double* q, double* out) {
  const double w = q[0];
  const double ux = q[1];
  const double uy = q[2];
  const double uz = q[3];
  out[0] = -(v.x * ux + v.y * uy + v.z * uz);
  out[1] = w * v.x + v.y * uz - v.z * uy;
  out[2] = w * v.y + v.z * ux - v.x * uz;
  out[3] = w * v.z + v.x * uy - v.y * ux;
}

void renormalize_head(double* q) {
  const double n = std::sqrt(q[0] * q[0] + q[1] * q[1] + q[2] * q[2] + q[3] * q[3]);
  for (int i = 0; i < 4; ++i) q[i] /= n;
}

void require_step(double h, const char* fn) {
  if (!(h > 0.0)) {
    throw PreconditionError(std::string(fn) + ": step h = " + std::to_string(h) +
                            " must be positive");
  }
}

std::size_t step_count(double duration, double h) {
  if (duration <= 0.0) return 0;
  const double n = std::ceil(duration / h - 1e-9);
  return static_cast<std::size_t>(std::max(1.0, n));
}

// Classic RK4 over [t0, t0 + steps·dt]; field(t) gives the control at time t.
// The first four state entries hold U0 and are renormalized periodically.
template <std::size_t N, class FieldFn, class Deriv>
void rk4_run(State<N>& y, double t0, double dt, std::size_t steps, std::size_t& counter,
             FieldFn&& field, Deriv&& deriv) {
  for (std::size_t i = 0; i < steps; ++i) {
    const double t = t0 + static_cast<double>(i) * dt;
    const Field f0 = field(t);
    const Field fm = field(t + 0.5 * dt);
    const Field f1 = field(t + dt);
    const State<N> k1 = deriv(f0, y);
    const State<N> k2 = deriv(fm, axpy(y, 0.5 * dt, k1));
    const State<N> k3 = deriv(fm, axpy(y, 0.5 * dt, k2));
    const State<N> k4 = deriv(f1, axpy(y, dt, k3));
    for (std::size_t j = 0; j < N; ++j) y[j] += dt / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
    if (++counter % kRenormalizeEvery == 0) renormalize_head(y.data());
  }
}

// Runs rk4 across a whole schedule, honoring segment boundaries for piecewise input.
template <std::size_t N, class Deriv>
void integrate(const SampledSchedule& s, double h, State<N>& y, Deriv&& deriv) {
  const std::size_t steps = step_count(s.T, h);
  std::size_t counter = 0;
  if (steps == 0) return;
  rk4_run(y, 0.0, s.T / static_cast<double>(steps), steps, counter,
          [&](double t) { return s.field_at(t); }, deriv);
}

template <std::size_t N, class Deriv>
void integrate(const PiecewiseSchedule& s, double h, State<N>& y, Deriv&& deriv) {
  std::size_t counter = 0;
  double t0 = 0.0;
  for (const Segment& seg : s.segments) {
    const std::size_t steps = step_count(seg.duration, h);
    if (steps > 0) {
      const Field f{seg.omega_x, seg.omega_y};
      rk4_run(y, t0, seg.duration / static_cast<double>(steps), steps, counter,
              [&](double) { return f; }, deriv);
    }
    t0 += seg.duration;
  }
}

auto faulty_deriv(double f) {
  return [f](const Field& w, const State<4>& y) {
    State<4> d;
    pure_times({0.5 * w.x, 0.5 * w.y, 0.5 * f}, y.data(), d.data());
    return d;
  };
}

State<8> order_deriv(const Field& w, const State<8>& y) {
  State<8> d;
  const Vec3 half{0.5 * w.x, 0.5 * w.y, 0.0};
  pure_times(half, y.data(), d.data());
  pure_times(half, y.data() + 4, d.data() + 4);
  double src[4];
  pure_times({0.0, 0.0, 0.5}, y.data(), src);
  for (int i = 0; i < 4; ++i) d[4 + i] += src[i];
  return d;
}

State<7> robustness_deriv(const Field& w, const State<7>& y) {
  State<7> d{};
  pure_times({0.5 * w.x, 0.5 * w.y, 0.0}, y.data(), d.data());
  const Rotor u{y[0], y[1], y[2], y[3]};
  const Vec3 zr = apply_to_bloch(dagger(u), {0.0, 0.0, 1.0});
  d[4] = zr.x;
  d[5] = zr.y;
  d[6] = zr.z;
  return d;
}

Rotor head_rotor(const double* y) { return Rotor{y[0], y[1], y[2], y[3]}.normalized(); }

// ∫₀^τ R(−α s, n) v ds for the rotation generated by a unit-speed segment.
Vec3 rotated_vector_integral(const Vec3& n, double alpha, double tau, const Vec3& v) {
  if (alpha == 0.0) return tau * v;
  const double along = dot(n, v);
  const double s1 = std::sin(alpha * tau) / alpha;
  const double c1 = (1.0 - std::cos(alpha * tau)) / alpha;
  return s1 * v + (-c1) * cross(n, v) + (along * (tau - s1)) * n;
}

template <class Visitor>
decltype(auto) visit_schedule(const Schedule& s, Visitor&& v) {
  return std::visit(std::forward<Visitor>(v), s);
}

}  // namespace

Rotor segment_rotor(const Segment& seg, double f, double dt) {
  const double mag = std::sqrt(seg.omega_x * seg.omega_x + seg.omega_y * seg.omega_y + f * f);
  if (mag == 0.0 || dt == 0.0) return Rotor::identity();
  const double half = 0.5 * dt * mag;
  const double s = std::sin(half) / mag;
  return {std::cos(half), s * seg.omega_x, s * seg.omega_y, s * f};
}

Rotor propagate_exact(const PiecewiseSchedule& s, double f) {
  Rotor u = Rotor::identity();
  std::size_t count = 0;
  for (const Segment& seg : s.segments) {
    u = compose(segment_rotor(seg, f, seg.duration), u);
    if (++count % kRenormalizeEvery == 0) u = u.normalized();
  }
  return u;
}

Rotor propagate_rk4(const SampledSchedule& s, double f, double h) {
  require_step(h, "propagate_rk4");
  State<4> y{1.0, 0.0, 0.0, 0.0};
  integrate(s, h, y, faulty_deriv(f));
  return head_rotor(y.data());
}

Rotor propagate_rk4(const PiecewiseSchedule& s, double f, double h) {
  require_step(h, "propagate_rk4");
  State<4> y{1.0, 0.0, 0.0, 0.0};
  integrate(s, h, y, faulty_deriv(f));
  return head_rotor(y.data());
}

Rotor propagate(const Schedule& s, double f, double h) {
  return visit_schedule(s, [&](const auto& sched) -> Rotor {
    if constexpr (std::is_same_v<std::decay_t<decltype(sched)>, PiecewiseSchedule>) {
      return propagate_exact(sched, f);
    } else {
      return propagate_rk4(sched, f, h);
    }
  });
}

OrderByOrder propagate_order_by_order(const SampledSchedule& s, double h) {
  require_step(h, "propagate_order_by_order");
  State<8> y{1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0};
  integrate(s, h, y, order_deriv);
  return {head_rotor(y.data()), FirstOrderTerm{y[4], y[5], y[6], y[7]}};
}

OrderByOrder propagate_order_by_order(const PiecewiseSchedule& s, double h) {
  require_step(h, "propagate_order_by_order");
  State<8> y{1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0};
  integrate(s, h, y, order_deriv);
  return {head_rotor(y.data()), FirstOrderTerm{y[4], y[5], y[6], y[7]}};
}

OrderByOrder propagate_order_by_order(const Schedule& s, double h) {
  return visit_schedule(s, [&](const auto& sched) { return propagate_order_by_order(sched, h); });
}

Vec3 robustness_integral(const PiecewiseSchedule& s) {
  Rotor u0 = Rotor::identity();
  Vec3 w{};
  const Vec3 z{0.0, 0.0, 1.0};
  for (const Segment& seg : s.segments) {
    const double alpha = std::hypot(seg.omega_x, seg.omega_y);
    const Vec3 n = alpha > 0.0 ? Vec3{seg.omega_x / alpha, seg.omega_y / alpha, 0.0} : Vec3{};
    const Vec3 local = rotated_vector_integral(n, alpha, seg.duration, z);
    w += apply_to_bloch(dagger(u0), local);
    u0 = compose(segment_rotor(seg, 0.0, seg.duration), u0);
  }
  return w;
}

Vec3 robustness_integral(const SampledSchedule& s, double h) {
  require_step(h, "robustness_integral");
  State<7> y{1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0};
  integrate(s, h, y, robustness_deriv);
  return {y[4], y[5], y[6]};
}

Vec3 robustness_integral(const Schedule& s, double h) {
  return visit_schedule(s, [&](const auto& sched) -> Vec3 {
    if constexpr (std::is_same_v<std::decay_t<decltype(sched)>, PiecewiseSchedule>) {
      return robustness_integral(sched);
    } else {
      return robustness_integral(sched, h);
    }
  });
}

FirstOrderTerm first_order_from_integral(const Rotor& u0_final, const Vec3& integral) {
  return compose(u0_final, FirstOrderTerm{0.0, 0.5 * integral.x, 0.5 * integral.y, 0.5 * integral.z});
}

std::vector<TrajectoryPoint> bloch_trajectory(const PiecewiseSchedule& s, double f,
                                              const BlochPoint& start, std::size_t n_out) {
  std::vector<TrajectoryPoint> out;
  if (n_out == 0) return out;
  out.reserve(n_out);
  const double T = s.total_duration();
  Rotor done = Rotor::identity();  // product of all completed segments
  std::size_t seg_index = 0;
  double seg_start = 0.0;
  for (std::size_t j = 0; j < n_out; ++j) {
    const double t = n_out == 1 ? 0.0 : T * static_cast<double>(j) / static_cast<double>(n_out - 1);
    while (seg_index < s.segments.size() &&
           seg_start + s.segments[seg_index].duration <= t) {
      const Segment& seg = s.segments[seg_index];
      done = compose(segment_rotor(seg, f, seg.duration), done);
      seg_start += seg.duration;
      ++seg_index;
    }
    Rotor u = done;
    if (seg_index < s.segments.size()) {
      u = compose(segment_rotor(s.segments[seg_index], f, t - seg_start), done);
    }
    out.push_back({t, apply_to_bloch(u, start)});
  }
  return out;
}

std::vector<TrajectoryPoint> bloch_trajectory(const SampledSchedule& s, double f,
                                              const BlochPoint& start, std::size_t n_out,
                                              double h) {
  require_step(h, "bloch_trajectory");
  std::vector<TrajectoryPoint> out;
  if (n_out == 0) return out;
  out.reserve(n_out);
  out.push_back({0.0, start});
  if (n_out == 1) return out;
  const double interval = s.T / static_cast<double>(n_out - 1);
  const std::size_t sub = std::max<std::size_t>(1, step_count(interval, h));
  const double dt = interval / static_cast<double>(sub);
  State<4> y{1.0, 0.0, 0.0, 0.0};
  std::size_t counter = 0;
  const auto deriv = faulty_deriv(f);
  for (std::size_t j = 1; j < n_out; ++j) {
    const double t0 = interval * static_cast<double>(j - 1);
    if (interval > 0.0) {
      rk4_run(y, t0, dt, sub, counter, [&](double t) { return s.field_at(t); }, deriv);
    }
    out.push_back({interval * static_cast<double>(j), apply_to_bloch(head_rotor(y.data()), start)});
  }
  return out;
}

std::vector<TrajectoryPoint> bloch_trajectory(const Schedule& s, double f,
                                              const BlochPoint& start, std::size_t n_out,
                                              double h) {
  return visit_schedule(s, [&](const auto& sched) {
    if constexpr (std::is_same_v<std::decay_t<decltype(sched)>, PiecewiseSchedule>) {
      return bloch_trajectory(sched, f, start, n_out);
    } else {
      return bloch_trajectory(sched, f, start, n_out, h);
    }
  });
}

CostReport costs(const PiecewiseSchedule& s) {
  CostReport c;
  for (const Segment& seg : s.segments) {
    const double e = seg.omega_x * seg.omega_x + seg.omega_y * seg.omega_y;
    c.L_t += seg.duration;
    c.L_p += seg.duration * std::sqrt(e);
    c.L_e += seg.duration * e;
  }
  return c;
}

CostReport costs(const SampledSchedule& s) {
  CostReport c;
  c.L_t = s.T;
  if (s.size() < 2 || s.T <= 0.0) return c;
  const double h = s.spacing();
  for (std::size_t i = 0; i + 1 < s.size(); ++i) {
    const Field& a = s.samples[i];
    const Field& b = s.samples[i + 1];
    const double ea = a.x * a.x + a.y * a.y;
    const double eb = b.x * b.x + b.y * b.y;
    c.L_p += 0.5 * h * (std::sqrt(ea) + std::sqrt(eb));
    c.L_e += 0.5 * h * (ea + eb);
  }
  return c;
}

CostReport costs(const Schedule& s) {
  return visit_schedule(s, [](const auto& sched) { return costs(sched); });
}

SimulationResult simulate(const Schedule& s, double f, const SimulationOptions& opts) {
  SimulationResult r;
  r.f = f;
  r.u_final = propagate(s, f, opts.h);
  const OrderByOrder ob = propagate_order_by_order(s, opts.h);
  r.u0_final = ob.u0;
  r.u1_final = ob.u1;
  if (opts.trajectory_points > 0) {
    r.trajectory = bloch_trajectory(s, f, opts.start, opts.trajectory_points, opts.h);
  }
  return r;
}

std::vector<double> default_scan_grid() { return {1e-3, 3e-3, 1e-2, 3e-2, 1e-1}; }

std::vector<ScanPoint> infidelity_scan(const Schedule& s, const Rotor& target,
                                       std::span<const double> f_list, double h) {
  std::vector<ScanPoint> out;
  out.reserve(f_list.size());
  for (const double f : f_list) {
    if (!(f > 0.0 && f <= 0.5)) {
      throw PreconditionError("infidelity_scan: f = " + std::to_string(f) + " outside (0, 0.5]");
    }
    out.push_back({f, trace_infidelity(target, propagate(s, f, h))});
  }
  return out;
}

double fit_loglog_slope(std::span<const ScanPoint> scan) {
  double sx = 0.0;
  double sy = 0.0;
  double sxx = 0.0;
  double sxy = 0.0;
  double n = 0.0;
  for (const ScanPoint& p : scan) {
    if (!(p.infidelity > 0.0) || !(p.f > 0.0)) continue;
    const double x = std::log(p.f);
    const double y = std::log(p.infidelity);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    n += 1.0;
  }
  if (n < 2.0) throw PreconditionError("fit_loglog_slope: need two points with nonzero infidelity");
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace detune_forge
