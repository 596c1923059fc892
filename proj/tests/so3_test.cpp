/*
 Copyright 2026 The smatt Authors

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

      https://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/

#include "smatt/so3.hpp"

#include <gtest/gtest.h>

#include <numbers>
#include <random>

#include "oracles.hpp"
#include "smatt/errors.hpp"

namespace smatt {
namespace {

constexpr double kPi = std::numbers::pi;

TEST(Hat, UnitX) {
  Matrix3 expected;
  expected << 0, 0, 0, 0, 0, -1, 0, 1, 0;
  EXPECT_EQ(hat(Vector3::UnitX()), expected);
  EXPECT_EQ(hat(Vector3::Zero()), Matrix3::Zero());
}

TEST(Hat, MatchesCrossProduct) {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> n(0.0, 2.0);
  for (int i = 0; i < 100; ++i) {
    Vector3 v(n(rng), n(rng), n(rng)), y(n(rng), n(rng), n(rng));
    EXPECT_LE((hat(v) * y - oracle::cross(v, y)).norm(), 1e-12);
    EXPECT_EQ(hat(v).transpose(), -hat(v));
    EXPECT_EQ(vee(hat(v)), v);
  }
}

TEST(Vee, RejectsSymmetric) {
  EXPECT_EQ(vee(Matrix3::Zero()), Vector3::Zero());
  EXPECT_EQ(vee(hat(Vector3(1, 2, 3))), Vector3(1, 2, 3));
  EXPECT_THROW(vee(Matrix3::Identity()), DomainError);
}

TEST(Exp, KnownRotations) {
  Matrix3 quarter;
  quarter << 0, -1, 0, 1, 0, 0, 0, 0, 1;
  EXPECT_LE((exp_so3({0, 0, kPi / 2}).matrix() - quarter).norm(), 1e-15);
  EXPECT_LE((exp_so3({kPi, 0, 0}).matrix() -
             Vector3(1, -1, -1).asDiagonal().toDenseMatrix())
                .norm(),
            1e-15);
  EXPECT_LE((exp_so3({1e-12, 0, 0}).matrix() - Matrix3::Identity()).norm(),
            1e-11);
  EXPECT_EQ(exp_so3(Vector3::Zero()).matrix(), Matrix3::Identity());
}

TEST(Exp, AgreesWithAngleAxis) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    const Vector3 v = oracle::unit(rng) * (0.1 + 3.0 * i / 200.0);
    const RotationMatrix r = exp_so3(v);
    EXPECT_LE((r.matrix() - oracle::rotation(v)).norm(), 1e-14);
    EXPECT_LE(r.orthogonality_error(), 1e-14);
    EXPECT_LE((r * v - v).norm(), 1e-14);  // axis is fixed
  }
}

TEST(Log, RoundTrip) {
  EXPECT_EQ(log_so3(RotationMatrix::identity()), Vector3::Zero());
  EXPECT_LE((log_so3(exp_so3({0.1, 0.2, 0.3})) - Vector3(0.1, 0.2, 0.3)).norm(),
            1e-12);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, kPi - 0.01);
  for (int i = 0; i < 1000; ++i) {
    const Vector3 v = oracle::unit(rng) * u(rng);
    EXPECT_LE((log_so3(exp_so3(v)) - v).norm(), 1e-10) << v.transpose();
  }
  // Small-angle branch.
  const Vector3 tiny(3e-9, -1e-9, 2e-9);
  EXPECT_LE((log_so3(exp_so3(tiny)) - tiny).norm(), 1e-20);
}

TEST(Log, RejectsHalfTurn) {
  const auto r = RotationMatrix::from_matrix(
      Vector3(-1, -1, 1).asDiagonal().toDenseMatrix());
  EXPECT_THROW(log_so3(r), DomainError);
}

TEST(GeodesicAngle, Basics) {
  EXPECT_EQ(geodesic_angle(RotationMatrix(), RotationMatrix()), 0.0);
  EXPECT_NEAR(geodesic_angle(RotationMatrix(), exp_so3({0, 0, kPi / 2})),
              kPi / 2, 1e-15);
}

TEST(GeodesicAngle, RightPerturbationAndBiInvariance) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, kPi - 1e-3);
  for (int i = 0; i < 100; ++i) {
    const auto r = RotationMatrix::unchecked(oracle::random_rotation(rng));
    const auto q = RotationMatrix::unchecked(oracle::random_rotation(rng));
    const Vector3 v = oracle::unit(rng) * u(rng);
    const RotationMatrix r2 = r * exp_so3(v);
    EXPECT_NEAR(geodesic_angle(r, r2), v.norm(), 1e-10);
    EXPECT_NEAR(geodesic_angle(r, r2), geodesic_angle(r2, r), 1e-12);
    EXPECT_NEAR(geodesic_angle(q * r, q * r2), geodesic_angle(r, r2), 1e-12);
    EXPECT_NEAR(geodesic_angle(r, r2), oracle::angle(r.matrix(), r2.matrix()),
                1e-7);
  }
}

TEST(RotationMatrix, ValidatesInput) {
  EXPECT_THROW(RotationMatrix::from_matrix(2.0 * Matrix3::Identity()),
               DomainError);
  EXPECT_THROW(RotationMatrix::from_matrix(
                   Vector3(1, 1, -1).asDiagonal().toDenseMatrix()),
               DomainError);
  EXPECT_NO_THROW(RotationMatrix::from_matrix(exp_so3({1, 2, 3}).matrix()));
}

TEST(Project, ExactAndScaled) {
  const RotationMatrix r = exp_so3({0.4, -1.1, 0.3});
  EXPECT_LE((project_to_so3(r.matrix()).matrix() - r.matrix()).norm(), 1e-14);
  EXPECT_LE((project_to_so3(2.0 * r.matrix()).matrix() - r.matrix()).norm(),
            1e-14);
  EXPECT_THROW(project_to_so3(Matrix3::Zero()), DomainError);
}

TEST(Project, MatchesPolarOracle) {
  std::mt19937_64 rng(13);
  std::normal_distribution<double> n(0.0, 1e-8);
  for (int i = 0; i < 50; ++i) {
    const Matrix3 r = oracle::random_rotation(rng);
    Matrix3 m = r;
    for (int k = 0; k < 9; ++k) m(k / 3, k % 3) += n(rng);
    const RotationMatrix p = project_to_so3(m);
    EXPECT_LE((p.matrix() - oracle::polar(m)).norm(), 1e-12);
    EXPECT_LE((p.matrix() - r).norm(), 1e-7);
    EXPECT_LE(p.orthogonality_error(), 1e-14);
  }
}

}  // namespace
}  // namespace smatt
