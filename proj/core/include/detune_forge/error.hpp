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

#include <stdexcept>
#include <string>

namespace detune_forge {

/// Argument outside the documented domain of an operation.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Elliptic integral evaluated where it has no real value, e.g. F(φ, m) with
/// m > 1 and sin²φ > 1/m ("beyond k_sup"), or K(1).
class EllipticDomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The pendulum-parameter search found no root of the robustness constraint.
class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, double theta_f)
      : std::runtime_error(what), theta_f_(theta_f) {}

  double theta_f() const noexcept { return theta_f_; }

 private:
  double theta_f_;
};

}  // namespace detune_forge
