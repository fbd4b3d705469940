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

// Reference computations that share no code with the library: complex 2×2
// matrices, adaptive Simpson quadrature and a high-order ODE integrator.

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <random>

#include <boost/numeric/odeint.hpp>

#include "detune_forge/schedules.hpp"
#include "detune_forge/su2.hpp"

namespace oracle {

using cplx = std::complex<double>;
using Mat2 = std::array<cplx, 4>;  // row-major

inline Mat2 mul(const Mat2& a, const Mat2& b) {
  return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
          a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}

inline Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }

inline Mat2 from_rotor(const detune_forge::Rotor& r) {
  const cplx i(0.0, 1.0);
  return {r.id - i * r.z, -i * r.x - r.y, -i * r.x + r.y, r.id + i * r.z};
}

inline detune_forge::Rotor to_rotor(const Mat2& m) {
  return {0.5 * (m[0] + m[3]).real(), -0.5 * (m[1] + m[2]).imag(), 0.5 * (m[2] - m[1]).real(),
          0.5 * (m[3].imag() - m[0].imag())};
}

/// exp(A) by scaling and squaring of a 20-term Taylor series.
inline Mat2 expm(Mat2 a) {
  double norm = 0.0;
  for (const cplx& v : a) norm = std::max(norm, std::abs(v));
  int squarings = 0;
  while (norm > 0.25) {
    norm *= 0.5;
    ++squarings;
  }
  const double scale = std::ldexp(1.0, -squarings);
  for (cplx& v : a) v *= scale;
  Mat2 term = identity();
  Mat2 sum = identity();
  for (int n = 1; n <= 20; ++n) {
    term = mul(term, a);
    for (cplx& v : term) v /= static_cast<double>(n);
    for (int j = 0; j < 4; ++j) sum[j] += term[j];
  }
  for (int s = 0; s < squarings; ++s) sum = mul(sum, sum);
  return sum;
}

/// exp(−i H dt) with H = (ωx σx + ωy σy + f σz)/2.
inline Mat2 segment_propagator(double wx, double wy, double f, double dt) {
  const cplx i(0.0, 1.0);
  const cplx h00 = 0.5 * f;
  const cplx h01 = 0.5 * cplx(wx, -wy);
  const cplx h10 = 0.5 * cplx(wx, wy);
  const cplx h11 = -0.5 * f;
  return expm({-i * dt * h00, -i * dt * h01, -i * dt * h10, -i * dt * h11});
}

inline Mat2 propagate(const detune_forge::PiecewiseSchedule& s, double f) {
  Mat2 u = identity();
  for (const auto& seg : s.segments) {
    u = mul(segment_propagator(seg.omega_x, seg.omega_y, f, seg.duration), u);
  }
  return u;
}

// Adaptive Simpson with Richardson correction.
inline double simpson(const std::function<double(double)>& fn, double a, double b, double fa,
                      double fm, double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = fn(lm);
  const double frm = fn(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return simpson(fn, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson(fn, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

inline double integrate(const std::function<double(double)>& fn, double a, double b,
                        double tol = 1e-13) {
  const double fa = fn(a);
  const double fb = fn(b);
  const double fm = fn(0.5 * (a + b));
  return simpson(fn, a, b, fa, fm, fb, (b - a) / 6.0 * (fa + 4.0 * fm + fb), tol, 50);
}

/// F(φ, m) by quadrature; for m > 1 only φ ≤ asin(1/√m).
inline double ellip_f(double phi, double m) {
  return integrate([m](double p) { return 1.0 / std::sqrt(1.0 - m * std::sin(p) * std::sin(p)); },
                   0.0, phi);
}

/// Re K(m) for m > 1 from the substitution sin ψ = sin θ / √m, which removes
/// the endpoint singularity.
inline double re_k_above_one(double m) {
  return integrate(
             [m](double t) { return 1.0 / std::sqrt(1.0 - std::sin(t) * std::sin(t) / m); }, 0.0,
             0.5 * std::acos(-1.0)) /
         std::sqrt(m);
}

using State3 = std::array<double, 3>;

/// (sn, cn, dn)(u, m) from sn' = cn dn, cn' = −sn dn, dn' = −m sn cn.
inline State3 jacobi_ode(double u, double m) {
  namespace ode = boost::numeric::odeint;
  State3 y{0.0, 1.0, 1.0};
  auto rhs = [m](const State3& s, State3& d, double) {
    d[0] = s[1] * s[2];
    d[1] = -s[0] * s[2];
    d[2] = -m * s[0] * s[1];
  };
  ode::integrate_adaptive(ode::make_controlled(1e-14, 1e-14, ode::runge_kutta_fehlberg78<State3>()),
                          rhs, y, 0.0, u, 1e-3);
  return y;
}

/// ∫₀^T cos Θ dt for the pendulum Θ̈ = −(k/4) sin Θ, Θ(T/2) = 0, Θ̇(T/2) = 1.
/// The constraint is even about T/2, so only the second half is integrated.
inline double constraint_g(double k, double T) {
  namespace ode = boost::numeric::odeint;
  State3 y{0.0, 1.0, 0.0};  // Θ, Θ̇, ∫cos Θ
  auto rhs = [k](const State3& s, State3& d, double) {
    d[0] = s[1];
    d[1] = -0.25 * k * std::sin(s[0]);
    d[2] = std::cos(s[0]);
  };
  ode::integrate_adaptive(ode::make_controlled(1e-14, 1e-14, ode::runge_kutta_fehlberg78<State3>()),
                          rhs, y, 0.0, 0.5 * T, 1e-3);
  return 2.0 * y[2];
}

/// Operation time for branch A (false) or B (true) by quadrature.
inline double operation_time(double theta_f, double k, bool branch_b) {
  const double f = ellip_f(0.25 * theta_f, k);
  if (!branch_b) return 4.0 * f;
  return 4.0 * (2.0 * re_k_above_one(k) - f);
}

// Hand-rolled generators for property tests.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  detune_forge::Vec3 unit_vector() {
    const double z = uniform(-1.0, 1.0);
    const double phi = uniform(0.0, 2.0 * std::acos(-1.0));
    const double r = std::sqrt(1.0 - z * z);
    return {r * std::cos(phi), r * std::sin(phi), z};
  }
  detune_forge::Rotor rotor() {
    std::normal_distribution<double> n(0.0, 1.0);
    detune_forge::Rotor r{n(rng_), n(rng_), n(rng_), n(rng_)};
    return r.normalized();
  }
  detune_forge::PiecewiseSchedule piecewise(int max_segments) {
    detune_forge::PiecewiseSchedule s;
    const int n = integer(1, max_segments);
    for (int i = 0; i < n; ++i) {
      const double amp = uniform(0.0, 1.0);
      const double phase = uniform(0.0, 2.0 * std::acos(-1.0));
      s.segments.push_back({uniform(0.05, 2.0), amp * std::cos(phase), amp * std::sin(phase)});
    }
    return s;
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace oracle
