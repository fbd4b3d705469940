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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "detune_forge/error.hpp"
#include "detune_forge/su2.hpp"
#include "oracles.hpp"

namespace df = detune_forge;
using std::numbers::pi;

namespace {

constexpr df::Vec3 kX{1.0, 0.0, 0.0};
constexpr df::Vec3 kY{0.0, 1.0, 0.0};
constexpr df::Vec3 kZ{0.0, 0.0, 1.0};

void expect_rotor_near(const df::Rotor& a, const df::Rotor& b, double tol) {
  EXPECT_NEAR(a.id, b.id, tol);
  EXPECT_NEAR(a.x, b.x, tol);
  EXPECT_NEAR(a.y, b.y, tol);
  EXPECT_NEAR(a.z, b.z, tol);
}

void expect_vec_near(const df::Vec3& a, const df::Vec3& b, double tol) {
  EXPECT_NEAR(a.x, b.x, tol);
  EXPECT_NEAR(a.y, b.y, tol);
  EXPECT_NEAR(a.z, b.z, tol);
}

}  // namespace

TEST(RotorFromAxisAngle, ZeroAngleIsIdentity) {
  expect_rotor_near(df::rotor_from_axis_angle(0.0, kY), df::Rotor::identity(), 0.0);
}

TEST(RotorFromAxisAngle, PiAboutX) {
  expect_rotor_near(df::rotor_from_axis_angle(pi, kX), {0.0, 1.0, 0.0, 0.0}, 1e-16);
}

TEST(RotorFromAxisAngle, AnglesAddOnFixedAxis) {
  const df::Rotor half = df::rotor_from_axis_angle(pi / 2, kX);
  expect_rotor_near(df::compose(half, half), df::rotor_from_axis_angle(pi, kX), 1e-15);
}

TEST(RotorFromAxisAngle, RejectsNonUnitAxis) {
  EXPECT_THROW(df::rotor_from_axis_angle(1.0, {1.0, 1.0, 0.0}), df::PreconditionError);
  EXPECT_NO_THROW(df::rotor_from_axis_angle(1.0, {1.0 + 1e-10, 0.0, 0.0}));
}

TEST(Compose, IdentityIsNeutral) {
  const df::Rotor r = df::rotor_from_axis_angle(0.7, {0.6, 0.0, 0.8});
  expect_rotor_near(df::compose(df::Rotor::identity(), r), r, 0.0);
}

TEST(Compose, InverseGivesIdentity) {
  const df::Rotor r = df::rotor_from_axis_angle(1.3, {0.0, 0.6, 0.8});
  expect_rotor_near(df::compose(r, df::dagger(r)), df::Rotor::identity(), 1e-15);
}

TEST(Compose, QuarterTurnsAboutXThenYMatchMatrixProduct) {
  const df::Rotor a = df::rotor_from_axis_angle(pi / 2, kX);
  const df::Rotor b = df::rotor_from_axis_angle(pi / 2, kY);
  const df::Rotor oracle = oracle::to_rotor(oracle::mul(oracle::from_rotor(a), oracle::from_rotor(b)));
  expect_rotor_near(df::compose(a, b), oracle, 1e-15);
  expect_rotor_near(df::compose(a, b), {0.5, 0.5, 0.5, 0.5}, 1e-15);
}

TEST(Dagger, Basics) {
  expect_rotor_near(df::dagger(df::Rotor::identity()), df::Rotor::identity(), 0.0);
  const df::Rotor r = df::rotor_from_axis_angle(0.9, kZ);
  expect_rotor_near(df::dagger(r), df::rotor_from_axis_angle(-0.9, kZ), 1e-16);
  expect_rotor_near(df::dagger(df::dagger(r)), r, 0.0);
}

TEST(TraceFidelity, Examples) {
  const df::Rotor r = df::rotor_from_axis_angle(0.4, kY);
  EXPECT_NEAR(df::trace_fidelity(r, r), 1.0, 1e-15);
  EXPECT_NEAR(df::trace_fidelity(df::Rotor::identity(), df::rotor_from_axis_angle(pi, kX)), 0.0, 1e-16);
  EXPECT_NEAR(df::trace_fidelity(df::Rotor::identity(), df::rotor_from_axis_angle(2 * pi, kX)), 1.0,
              1e-15);
}

TEST(TraceInfidelity, ResolvesTinyDifferences) {
  const df::Rotor a = df::rotor_from_axis_angle(1.0, kX);
  const df::Rotor b = df::rotor_from_axis_angle(1.0 + 2e-9, kX);
  // 1 − cos(1e-9) = 5e-19, far below the rounding of 1 − F.
  EXPECT_NEAR(df::trace_infidelity(a, b), 5e-19, 1e-24);
}

TEST(ApplyToBloch, Examples) {
  expect_vec_near(df::apply_to_bloch(df::Rotor::identity(), {0.6, 0.0, 0.8}), {0.6, 0.0, 0.8}, 0.0);
  expect_vec_near(df::apply_to_bloch(df::rotor_from_axis_angle(pi, kX), kZ), {0.0, 0.0, -1.0}, 1e-15);
}

TEST(ApplyToBloch, QuarterTurnAboutXMatchesConjugation) {
  const df::Rotor r = df::rotor_from_axis_angle(pi / 2, kX);
  // ρ' = U σz U†, read back as ½Tr(ρ' σ_i).
  const oracle::Mat2 u = oracle::from_rotor(r);
  const oracle::Mat2 ud{std::conj(u[0]), std::conj(u[2]), std::conj(u[1]), std::conj(u[3])};
  const oracle::Mat2 rho = oracle::mul(oracle::mul(u, {1.0, 0.0, 0.0, -1.0}), ud);
  const df::Vec3 expect{rho[1].real(), -rho[1].imag(), rho[0].real()};
  expect_vec_near(df::apply_to_bloch(r, kZ), expect, 1e-15);
  expect_vec_near(df::apply_to_bloch(r, kZ), {0.0, -1.0, 0.0}, 1e-15);
}

TEST(RotorDistance, IgnoresGlobalSign) {
  const df::Rotor r = df::rotor_from_axis_angle(0.3, kY);
  const df::Rotor neg{-r.id, -r.x, -r.y, -r.z};
  EXPECT_EQ(df::rotor_distance(r, neg), 0.0);
}

TEST(FirstOrderProducts, MatchMatrixProducts) {
  oracle::Gen gen(11);
  const df::Rotor a = gen.rotor();
  const df::FirstOrderTerm v{0.3, -0.2, 0.5, 0.1};
  // Any real 4-vector maps to id − i v·σ; the product is bilinear.
  const df::Rotor v_as_rotor{v.id, v.x, v.y, v.z};
  const df::Rotor left = oracle::to_rotor(oracle::mul(oracle::from_rotor(a), oracle::from_rotor(v_as_rotor)));
  const df::Rotor right = oracle::to_rotor(oracle::mul(oracle::from_rotor(v_as_rotor), oracle::from_rotor(a)));
  const df::FirstOrderTerm got_left = df::compose(a, v);
  const df::FirstOrderTerm got_right = df::compose(v, a);
  expect_rotor_near({got_left.id, got_left.x, got_left.y, got_left.z}, left, 1e-15);
  expect_rotor_near({got_right.id, got_right.x, got_right.y, got_right.z}, right, 1e-15);
}
