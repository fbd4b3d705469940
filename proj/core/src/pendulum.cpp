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

#include "detune_forge/pendulum.hpp"

#include <cmath>
#include <limits>

#include "detune_forge/elliptic.hpp"
#include "detune_forge/error.hpp"

namespace detune_forge {

std::string to_string(Branch b) { return b == Branch::A ? "A" : "B"; }

double k_sup(double theta_f) {
  const double s = std::sin(0.25 * theta_f);
  if (s == 0.0) return std::numeric_limits<double>::infinity();
  return 1.0 / (s * s);
}

double operation_time(double theta_f, double k, Branch branch) {
  const double f = elliptic::ellip_f(0.25 * theta_f, k);
  if (branch == Branch::A) return 4.0 * f;
  if (!(k > 1.0)) throw PreconditionError("operation_time: branch B requires k > 1");
  return 4.0 * (2.0 * elliptic::ellip_k(k) - f);
}

double pendulum_angle(const PendulumSolution& sol, double t) {
  return 2.0 * elliptic::jacobi_am(0.5 * (t - 0.5 * sol.T), sol.k);
}

double pendulum_rate(const PendulumSolution& sol, double t) {
  return elliptic::jacobi_sncndn(0.5 * (t - 0.5 * sol.T), sol.k).dn;
}

}  // namespace detune_forge
