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

#include "detune_forge/su2.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "detune_forge/error.hpp"

namespace detune_forge {
namespace {

struct Quat {
  double w, x, y, z;
};

// (a0 − i a·σ)(b0 − i b·σ) = (a0 b0 − a·b) − i (a0 b + b0 a + a×b)·σ
constexpr Quat qmul(const Quat& a, const Quat& b) {
  return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
          a.w * b.x + b.w * a.x + a.y * b.z - a.z * b.y,
          a.w * b.y + b.w * a.y + a.z * b.x - a.x * b.z,
          a.w * b.z + b.w * a.z + a.x * b.y - a.y * b.x};
}

constexpr Quat as_quat(const Rotor& r) { return {r.id, r.x, r.y, r.z}; }
constexpr Quat as_quat(const FirstOrderTerm& r) { return {r.id, r.x, r.y, r.z}; }

}  // namespace

Rotor Rotor::normalized() const {
  const double n = norm();
  return {id / n, x / n, y / n, z / n};
}

Rotor rotor_from_axis_angle(double theta, const Vec3& axis) {
  const double n = axis.norm();
  if (!(std::abs(n - 1.0) <= 1e-9)) {
    throw PreconditionError("rotor_from_axis_angle: axis norm " + std::to_string(n) +
                            " is not 1");
  }
  const double c = std::cos(0.5 * theta);
  const double s = std::sin(0.5 * theta);
  return {c, s * axis.x, s * axis.y, s * axis.z};
}

Rotor planar_rotor(double theta, double phi) {
  return rotor_from_axis_angle(theta, {std::cos(phi), std::sin(phi), 0.0});
}

Rotor compose(const Rotor& a, const Rotor& b) {
  const Quat q = qmul(as_quat(a), as_quat(b));
  return {q.w, q.x, q.y, q.z};
}

FirstOrderTerm compose(const Rotor& a, const FirstOrderTerm& b) {
  const Quat q = qmul(as_quat(a), as_quat(b));
  return {q.w, q.x, q.y, q.z};
}

FirstOrderTerm compose(const FirstOrderTerm& a, const Rotor& b) {
  const Quat q = qmul(as_quat(a), as_quat(b));
  return {q.w, q.x, q.y, q.z};
}

Rotor dagger(const Rotor& a) { return {a.id, -a.x, -a.y, -a.z}; }

double trace_fidelity(const Rotor& a, const Rotor& b) {
  // Tr(σi) = 0, so only the identity coefficient of a†b survives the trace.
  const double overlap = a.id * b.id + a.x * b.x + a.y * b.y + a.z * b.z;
  return std::min(1.0, std::abs(overlap));
}

double trace_infidelity(const Rotor& a, const Rotor& b) {
  const Rotor d = compose(dagger(a), b);
  const double v2 = d.x * d.x + d.y * d.y + d.z * d.z;
  const double w = std::abs(d.id);
  // 1 − |w| = (1 − w²) / (1 + |w|) and 1 − w² = |v|² for a unit rotor.
  return v2 / (1.0 + w);
}

BlochPoint apply_to_bloch(const Rotor& a, const BlochPoint& p) {
  const Vec3 u = a.vec();
  const Vec3 t = 2.0 * cross(u, p);
  return p + a.id * t + cross(u, t);
}

double rotor_distance(const Rotor& a, const Rotor& b) {
  auto dist = [&](double sign) {
    const double dw = a.id - sign * b.id;
    const double dx = a.x - sign * b.x;
    const double dy = a.y - sign * b.y;
    const double dz = a.z - sign * b.z;
    return std::sqrt(dw * dw + dx * dx + dy * dy + dz * dz);
  };
  return std::min(dist(1.0), dist(-1.0));
}

}  // namespace detune_forge
