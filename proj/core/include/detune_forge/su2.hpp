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

// SU(2) elements as real Pauli-basis 4-vectors:
//   U = id·1 − i (x σx + y σy + z σz).
// Unit 4-vectors are unitaries; the product of two such matrices is the
// quaternion product of the coefficient vectors.

#include <cmath>

namespace detune_forge {

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  double norm() const { return std::sqrt(x * x + y * y + z * z); }

  friend Vec3 operator+(const Vec3& a, const Vec3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
  friend Vec3 operator-(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
  friend Vec3 operator*(double s, const Vec3& a) { return {s * a.x, s * a.y, s * a.z}; }
  Vec3& operator+=(const Vec3& o) {
    x += o.x;
    y += o.y;
    z += o.z;
    return *this;
  }
};

inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

/// Point on the Bloch sphere (pure state).
using BlochPoint = Vec3;

/// Unit-norm Pauli coefficients of an SU(2) unitary.
struct Rotor {
  double id = 1.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  static constexpr Rotor identity() { return {}; }

  Vec3 vec() const { return {x, y, z}; }
  double norm() const { return std::sqrt(id * id + x * x + y * y + z * z); }
  Rotor normalized() const;
};

/// Pauli coefficients of the first-order term U1 = id·1 − i(v·σ). Not unitary.
struct FirstOrderTerm {
  double id = 0.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  Vec3 vec() const { return {x, y, z}; }
  double norm() const { return std::sqrt(id * id + x * x + y * y + z * z); }
};

/// R(θ, n) = cos(θ/2) − i sin(θ/2) n·σ. Throws PreconditionError unless |n| = 1 within 1e-9.
Rotor rotor_from_axis_angle(double theta, const Vec3& axis);

/// Rotation by θ about the in-plane axis (cos φ, sin φ, 0).
Rotor planar_rotor(double theta, double phi);

/// Matrix product a·b.
Rotor compose(const Rotor& a, const Rotor& b);

Rotor dagger(const Rotor& a);

/// |Tr(a†b)| / 2, insensitive to global phase.
double trace_fidelity(const Rotor& a, const Rotor& b);

/// 1 − trace_fidelity(a, b) evaluated without cancellation for nearly equal rotors.
double trace_infidelity(const Rotor& a, const Rotor& b);

/// a (p·σ) a†, read back in Pauli coordinates.
BlochPoint apply_to_bloch(const Rotor& a, const BlochPoint& p);

/// Euclidean distance between coefficient vectors with the sign of b chosen to
/// minimise it (global phase −1).
double rotor_distance(const Rotor& a, const Rotor& b);

// Products mixing the first-order term with unitaries; used by the
// order-by-order propagator.
FirstOrderTerm compose(const Rotor& a, const FirstOrderTerm& b);
FirstOrderTerm compose(const FirstOrderTerm& a, const Rotor& b);

}  // namespace detune_forge
