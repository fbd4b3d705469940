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

// Elliptic integrals and Jacobi elliptic functions in the *parameter*
// convention: every `m` below multiplies sin² in the integrand
//
//   F(φ, m) = ∫₀^φ dψ / √(1 − m sin²ψ).
//
// Parameters m > 1 are supported on the real axis through the
// reciprocal-parameter transformation
//
//   sn(u, m) = sn(u√m, 1/m) / √m,  cn(u, m) = dn(u√m, 1/m),
//   dn(u, m) = cn(u√m, 1/m),       Re K(m) = K(1/m) / √m,
//
// so no complex arithmetic is needed. For m > 1 the incomplete integrals are
// real only for |sin φ| ≤ 1/√m; outside that range they throw
// EllipticDomainError. Negative parameters are out of scope and throw
// PreconditionError.

namespace detune_forge::elliptic {

/// Carlson's symmetric integral R_F(x, y, z). x, y, z ≥ 0, at most one zero.
double carlson_rf(double x, double y, double z);

/// Carlson's symmetric integral R_D(x, y, z). x, y ≥ 0 (not both zero), z > 0.
double carlson_rd(double x, double y, double z);

/// Complete integral of the first kind; the real part Re K(m) for m > 1.
/// Computed with the arithmetic-geometric mean. Throws at m = 1.
double ellip_k(double m);

/// Incomplete integral of the first kind F(φ, m).
double ellip_f(double phi, double m);

/// D(φ, m) = ∫₀^φ sin²ψ / √(1 − m sin²ψ) dψ = (F − E) / m, evaluated without
/// the cancellation of the (F − E) / m form.
double ellip_d(double phi, double m);

/// D at the largest real amplitude. For m > 1 this is D(π/2, 1/m) / m^{3/2},
/// which avoids the square-root sensitivity of D near the turning point.
double ellip_d_complete(double m);

/// Largest amplitude for which F(φ, m) is real: π/2 for m ≤ 1, asin(1/√m) above.
double max_real_amplitude(double m);

/// Jacobi amplitude am(u, m). Monotone in u for m < 1; for m > 1 it is the
/// bounded, continuous branch atan2(sn, cn), which satisfies
/// am(2 Re K(m) − u, m) = am(u, m).
double jacobi_am(double u, double m);

struct JacobiTriple {
  double sn = 0.0;
  double cn = 1.0;
  double dn = 1.0;
};

/// sn, cn, dn at (u, m), with sn² + cn² = 1 and dn² + m sn² = 1.
JacobiTriple jacobi_sncndn(double u, double m);

}  // namespace detune_forge::elliptic
