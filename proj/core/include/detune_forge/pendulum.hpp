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

// Pulse-area-optimal coaxial control: the rotation angle follows a
// nonlinear pendulum,
//
//   θ(t) = Θ(t) + θ_f/2,   Θ(t) = 2 am((t − T/2)/2, k),   ω_x(t) = dΘ/dt,
//
// symmetric about T/2 with Θ(0) = −θ_f/2 and Θ(T) = θ_f/2. The operation
// time T comes from one of two branches:
//
//   A:  T = 4 F(θ_f/4, k)                    (any k ≤ k_sup, monotone θ)
//   B:  T = 4 (2 Re K(k) − F(θ_f/4, k))      (k > 1, with switchbacks)
//
// where k_sup = 1/sin²(θ_f/4) bounds the real domain of F.

#include <limits>
#include <string>

namespace detune_forge {

enum class Branch { A, B };

std::string to_string(Branch b);

struct PendulumSolution {
  double theta_f = 0.0;
  double k = 0.0;
  Branch branch = Branch::A;
  double T = 0.0;
  double lambda = 0.0;  // θ − Θ offset, θ_f/2
  double g_residual = std::numeric_limits<double>::quiet_NaN();
  bool solved = false;

  /// Zero-duration identity control (θ_f = 0).
  bool trivial() const { return solved && T == 0.0; }
};

/// 1/sin²(θ_f/4); +∞ at θ_f = 0.
double k_sup(double theta_f);

/// Operation time for the given branch. Branch B requires k > 1.
double operation_time(double theta_f, double k, Branch branch);

/// Θ(t) for a solved solution.
double pendulum_angle(const PendulumSolution& sol, double t);

/// dΘ/dt = dn((t − T/2)/2, k), the control field along the rotation axis.
double pendulum_rate(const PendulumSolution& sol, double t);

}  // namespace detune_forge
