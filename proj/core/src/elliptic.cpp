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

#include "detune_forge/elliptic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "detune_forge/error.hpp"

namespace detune_forge::elliptic {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEps = std::numeric_limits<double>::epsilon();

// Slack on the m sin²φ ≤ 1 test so that k = k_sup evaluated in floating
// point still lands inside the real domain.
constexpr double kDomainSlack = 1e-12;

void require_parameter(double m, const char* fn) {
  if (!(m >= 0.0)) {
    throw PreconditionError(std::string(fn) + ": parameter m = " + std::to_string(m) +
                            " is negative (out of scope)");
  }
}

// Reduced argument for the real domain. For m ≤ 1 the amplitude is split as
// φ = nπ + r with |r| ≤ π/2; for m > 1 only the principal range is allowed.
struct Reduced {
  double n;
  double s;
  double c2;
  double y;  // 1 − m sin²r, clamped at 0
};

Reduced reduce_amplitude(double phi, double m, const char* fn) {
  Reduced r{};
  double rem = phi;
  if (m <= 1.0) {
    r.n = std::nearbyint(phi / kPi);
    rem = phi - r.n * kPi;
  } else {
    r.n = 0.0;
    if (std::abs(phi) > 0.5 * kPi) {
      throw EllipticDomainError(std::string(fn) + ": amplitude beyond k_sup for m > 1");
    }
  }
  r.s = std::sin(rem);
  const double c = std::cos(rem);
  r.c2 = c * c;
  const double y = 1.0 - m * r.s * r.s;
  if (y < -kDomainSlack) {
    throw EllipticDomainError(std::string(fn) + ": m sin^2(phi) = " +
                              std::to_string(m * r.s * r.s) + " > 1 (beyond k_sup)");
  }
  r.y = std::max(0.0, y);
  if (r.y == 0.0 && r.c2 == 0.0) {
    throw EllipticDomainError(std::string(fn) + ": integral diverges at m = 1, phi = pi/2");
  }
  return r;
}

// Descending AGM chain for 0 < m < 1: returns φ0 (the amplitude) and φ1.
struct AgmPhase {
  double phi0;
  double phi1;
};

AgmPhase agm_phase(double u, double m) {
  constexpr int kMaxLevels = 20;
  std::array<double, kMaxLevels + 1> a{};
  std::array<double, kMaxLevels + 1> c{};
  a[0] = 1.0;
  double b = std::sqrt(1.0 - m);
  c[0] = std::sqrt(m);
  int n = 0;
  while (std::abs(c[n]) > kEps * a[n] && n < kMaxLevels) {
    a[n + 1] = 0.5 * (a[n] + b);
    c[n + 1] = 0.5 * (a[n] - b);
    b = std::sqrt(a[n] * b);
    ++n;
  }
  double phi = std::ldexp(a[n] * u, n);
  double phi1 = phi;
  for (int j = n; j >= 1; --j) {
    phi1 = phi;
    phi = 0.5 * (phi + std::asin(c[j] / a[j] * std::sin(phi)));
  }
  return {phi, phi1};
}

// am and dn for 0 < m < 1, with u reduced modulo the real period 2K.
struct AmDn {
  double am;
  double dn;
};

AmDn am_dn_sub_unit(double u, double m) {
  const double two_k = 2.0 * ellip_k(m);
  const double n = std::nearbyint(u / two_k);
  const double r = u - n * two_k;
  const AgmPhase p = agm_phase(r, m);
  const double dn = (p.phi0 == p.phi1) ? std::sqrt(std::max(0.0, 1.0 - m * std::sin(p.phi0) *
                                                                          std::sin(p.phi0)))
                                       : std::cos(p.phi0) / std::cos(p.phi1 - p.phi0);
  return {n * kPi + p.phi0, dn};
}

}  // namespace

double carlson_rf(double x, double y, double z) {
  constexpr double kTol = 0.0008;  // relative error ~ kTol^6
  if (x < 0.0 || y < 0.0 || z < 0.0 || (x + y == 0.0) || (x + z == 0.0) || (y + z == 0.0)) {
    throw PreconditionError("carlson_rf: arguments must be >= 0 with at most one zero");
  }
  double xt = x;
  double yt = y;
  double zt = z;
  double ave = 0.0;
  double dx = 0.0;
  double dy = 0.0;
  double dz = 0.0;
  for (int it = 0; it < 100; ++it) {
    const double sx = std::sqrt(xt);
    const double sy = std::sqrt(yt);
    const double sz = std::sqrt(zt);
    const double lambda = sx * (sy + sz) + sy * sz;
    xt = 0.25 * (xt + lambda);
    yt = 0.25 * (yt + lambda);
    zt = 0.25 * (zt + lambda);
    ave = (xt + yt + zt) / 3.0;
    dx = (ave - xt) / ave;
    dy = (ave - yt) / ave;
    dz = (ave - zt) / ave;
    if (std::max({std::abs(dx), std::abs(dy), std::abs(dz)}) < kTol) break;
  }
  const double e2 = dx * dy - dz * dz;
  const double e3 = dx * dy * dz;
  return (1.0 + (e2 / 24.0 - 0.1 - 3.0 * e3 / 44.0) * e2 + e3 / 14.0) / std::sqrt(ave);
}

double carlson_rd(double x, double y, double z) {
  constexpr double kTol = 0.0005;
  if (x < 0.0 || y < 0.0 || x + y == 0.0 || !(z > 0.0)) {
    throw PreconditionError("carlson_rd: requires x, y >= 0 (not both zero) and z > 0");
  }
  constexpr double c1 = 3.0 / 14.0;
  constexpr double c2 = 1.0 / 6.0;
  constexpr double c3 = 9.0 / 22.0;
  constexpr double c4 = 3.0 / 26.0;
  constexpr double c5 = 0.25 * c3;
  constexpr double c6 = 1.5 * c4;
  double xt = x;
  double yt = y;
  double zt = z;
  double sum = 0.0;
  double fac = 1.0;
  double ave = 0.0;
  double dx = 0.0;
  double dy = 0.0;
  double dz = 0.0;
  for (int it = 0; it < 100; ++it) {
    const double sx = std::sqrt(xt);
    const double sy = std::sqrt(yt);
    const double sz = std::sqrt(zt);
    const double lambda = sx * (sy + sz) + sy * sz;
    sum += fac / (sz * (zt + lambda));
    fac *= 0.25;
    xt = 0.25 * (xt + lambda);
    yt = 0.25 * (yt + lambda);
    zt = 0.25 * (zt + lambda);
    ave = 0.2 * (xt + yt + 3.0 * zt);
    dx = (ave - xt) / ave;
    dy = (ave - yt) / ave;
    dz = (ave - zt) / ave;
    if (std::max({std::abs(dx), std::abs(dy), std::abs(dz)}) < kTol) break;
  }
  const double ea = dx * dy;
  const double eb = dz * dz;
  const double ec = ea - eb;
  const double ed = ea - 6.0 * eb;
  const double ee = ed + ec + ec;
  return 3.0 * sum +
         fac *
             (1.0 + ed * (-c1 + c5 * ed - c6 * dz * ee) +
              dz * (c2 * ee + dz * (-c3 * ec + dz * c4 * ea))) /
             (ave * std::sqrt(ave));
}

double ellip_k(double m) {
  require_parameter(m, "ellip_k");
  if (m == 1.0) throw EllipticDomainError("ellip_k: K(m) diverges at m = 1");
  if (m > 1.0) return ellip_k(1.0 / m) / std::sqrt(m);
  double a = 1.0;
  double b = std::sqrt(1.0 - m);
  for (int it = 0; it < 64 && std::abs(a - b) > 2.0 * kEps * a; ++it) {
    const double an = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = an;
  }
  return kPi / (a + b);
}

double ellip_f(double phi, double m) {
  require_parameter(m, "ellip_f");
  const Reduced r = reduce_amplitude(phi, m, "ellip_f");
  if (m == 1.0 && r.n != 0.0) throw EllipticDomainError("ellip_f: diverges at m = 1");
  const double principal = r.s * carlson_rf(r.c2, r.y, 1.0);
  return r.n == 0.0 ? principal : principal + 2.0 * r.n * ellip_k(m);
}

double ellip_d(double phi, double m) {
  require_parameter(m, "ellip_d");
  const Reduced r = reduce_amplitude(phi, m, "ellip_d");
  if (m == 1.0 && r.n != 0.0) throw EllipticDomainError("ellip_d: diverges at m = 1");
  const double principal = r.s * r.s * r.s * carlson_rd(r.c2, r.y, 1.0) / 3.0;
  if (r.n == 0.0) return principal;
  const double complete = carlson_rd(0.0, 1.0 - m, 1.0) / 3.0;
  return principal + 2.0 * r.n * complete;
}

double ellip_d_complete(double m) {
  require_parameter(m, "ellip_d_complete");
  if (m == 1.0) throw EllipticDomainError("ellip_d_complete: diverges at m = 1");
  if (m < 1.0) return carlson_rd(0.0, 1.0 - m, 1.0) / 3.0;
  return carlson_rd(0.0, 1.0 - 1.0 / m, 1.0) / (3.0 * m * std::sqrt(m));
}

double max_real_amplitude(double m) {
  require_parameter(m, "max_real_amplitude");
  return m <= 1.0 ? 0.5 * kPi : std::asin(1.0 / std::sqrt(m));
}

JacobiTriple jacobi_sncndn(double u, double m) {
  require_parameter(m, "jacobi_sncndn");
  if (m == 0.0) return {std::sin(u), std::cos(u), 1.0};
  if (m == 1.0) {
    const double sech = 1.0 / std::cosh(u);
    return {std::tanh(u), sech, sech};
  }
  if (m > 1.0) {
    const double root = std::sqrt(m);
    const JacobiTriple t = jacobi_sncndn(u * root, 1.0 / m);
    return {t.sn / root, t.dn, t.cn};
  }
  const AmDn a = am_dn_sub_unit(u, m);
  return {std::sin(a.am), std::cos(a.am), a.dn};
}

double jacobi_am(double u, double m) {
  require_parameter(m, "jacobi_am");
  if (m == 0.0) return u;
  if (m == 1.0) return std::atan(std::sinh(u));
  if (m > 1.0) {
    const JacobiTriple t = jacobi_sncndn(u, m);
    return std::atan2(t.sn, t.cn);
  }
  return am_dn_sub_unit(u, m).am;
}

}  // namespace detune_forge::elliptic
