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

#include "smatt/rigid_body.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "smatt/errors.hpp"

namespace smatt {
namespace {

constexpr double kPi = std::numbers::pi;

const InertiaModel& spacecraft() {
  static const InertiaModel j = InertiaModel::diagonal(1.0, 2.8, 2.0);
  return j;
}

const Vector3 kOmega0(2.32, 0.45, -0.59);

TEST(Inertia, NonstandardInertia) {
  const InertiaModel& j = spacecraft();
  EXPECT_LE((j.Jd() - Vector3(1.9, 0.1, 0.9).asDiagonal().toDenseMatrix()).norm(),
            1e-15);
  Matrix3 full;
  full << 2, 0.1, 0.2, 0.1, 3, -0.3, 0.2, -0.3, 4;
  const InertiaModel k(full);
  EXPECT_EQ(k.Jd(), 0.5 * full.trace() * Matrix3::Identity() - full);
  EXPECT_THROW(InertiaModel(Vector3(1, -1, 1).asDiagonal().toDenseMatrix()),
               DomainError);
}

TEST(MomentFromPotential, TrivialCases) {
  const RotationMatrix r = exp_so3({0.3, -0.2, 1.0});
  EXPECT_EQ(moment_from_potential(r, Matrix3::Zero()), Vector3::Zero());
  EXPECT_LE(moment_from_potential(r, r.matrix()).norm(), 1e-15);
}

TEST(MomentFromPotential, AgreesWithSkewForm) {
  std::mt19937_64 rng(21);
  std::normal_distribution<double> n(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    const auto r = RotationMatrix::unchecked(oracle::random_rotation(rng));
    Matrix3 d;
    for (int k = 0; k < 9; ++k) d(k / 3, k % 3) = n(rng);
    const Matrix3 skew = d.transpose() * r.matrix() - r.matrix().transpose() * d;
    const Vector3 expected(skew(2, 1), skew(0, 2), skew(1, 0));
    EXPECT_LE((moment_from_potential(r, d) - expected).norm(), 1e-12);
  }
}

TEST(GravityGradient, PrincipalAxesGiveNoMoment) {
  const InertiaModel& j = spacecraft();
  EXPECT_EQ(gravity_gradient_moment(RotationMatrix(), 0.0, j), Vector3::Zero());
  EXPECT_LE(gravity_gradient_moment(exp_so3({0, 0, kPi / 2}), 0.0, j).norm(),
            1e-14);
  EXPECT_LE(gravity_gradient_moment(exp_so3({kPi / 4, 0, 0}), 0.0, j).norm(),
            1e-14);
}

TEST(GravityGradient, HandEvaluation) {
  const Vector3 m = gravity_gradient_moment(exp_so3({0, 0, kPi / 4}), 0.0,
                                            spacecraft());
  EXPECT_LE((m - Vector3(0, 0, -2.7)).norm(), 1e-14);
}

TEST(GravityGradient, MomentIsGradientOfPotential) {
  // Directional derivative of U along R exp(eps w) equals -M.w.
  std::mt19937_64 rng(4);
  const PotentialModel gg = GravityGradient{};
  for (int i = 0; i < 20; ++i) {
    const auto r = RotationMatrix::unchecked(oracle::random_rotation(rng));
    const Vector3 w = oracle::unit(rng);
    const double t = 0.1 * i;
    const double eps = 1e-6;
    const double du = (potential_energy(gg, r * exp_so3(eps * w), t, spacecraft()) -
                       potential_energy(gg, r * exp_so3(-eps * w), t, spacecraft())) /
                      (2 * eps);
    EXPECT_NEAR(du, -gravity_gradient_moment(r, t, spacecraft()).dot(w), 1e-8);
  }
  EXPECT_EQ(potential_moment(FreeBody{}, RotationMatrix(), 0.0, spacecraft()),
            Vector3::Zero());
}

TEST(ImplicitSolve, ZeroPhi) {
  EXPECT_LE((solve_implicit_F(Vector3::Zero(), spacecraft()).matrix() -
             Matrix3::Identity())
                .norm(),
            1e-15);
}

TEST(ImplicitSolve, SphericalClosedForm) {
  const InertiaModel ball(Matrix3::Identity());
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.0, 0.9);
  for (int i = 0; i < 50; ++i) {
    const Vector3 phi = oracle::unit(rng) * u(rng);
    const Matrix3 expected = oracle::rotation(std::asin(phi.norm()) * phi.normalized());
    EXPECT_LE((solve_implicit_F(phi, ball).matrix() - expected).norm(), 1e-12);
  }
}

TEST(ImplicitSolve, SpacecraftResidual) {
  const double h = 0.01;
  const Vector3 phi = h * (spacecraft().J() * kOmega0);
  const RotationMatrix f = solve_implicit_F(phi, spacecraft());
  EXPECT_LE(implicit_F_residual(phi, spacecraft().Jd(), f), 1e-14);
  EXPECT_LE(f.orthogonality_error(), 1e-15);
}

TEST(ImplicitSolve, NonConvergenceCarriesResidual) {
  ImplicitSolveOptions opts;
  opts.max_iterations = 1;
  opts.tolerance = 0.0;
  try {
    solve_implicit_F(Vector3(0.3, 0.4, 0.1), spacecraft(), opts);
    FAIL() << "expected ConvergenceError";
  } catch (const ConvergenceError& e) {
    EXPECT_GE(e.residual(), 0.0);
  }
}

TEST(Lgvi, RestingFreeBody) {
  RigidBodyState s{exp_so3({0.1, 0.2, 0.3}), Vector3::Zero(), 1.5};
  const RigidBodyState n = lgvi_step(s, 0.1, spacecraft(), FreeBody{});
  EXPECT_EQ(n.R.matrix(), s.R.matrix());
  EXPECT_EQ(n.Omega, Vector3::Zero());
  EXPECT_DOUBLE_EQ(n.t, 1.6);
  EXPECT_THROW(lgvi_step(s, 0.0, spacecraft(), FreeBody{}), DomainError);
}

TEST(Lgvi, SphericalSpin) {
  const InertiaModel ball(Matrix3::Identity());
  const RigidBodyState s{exp_so3({0.5, 0, 0}), Vector3(0, 0, 1), 0.0};
  const RigidBodyState n = lgvi_step(s, 0.1, ball, FreeBody{});
  EXPECT_EQ(n.Omega, s.Omega);
  const Matrix3 expected =
      s.R.matrix() * oracle::rotation(std::asin(0.1) * Vector3::UnitZ());
  EXPECT_LE((n.R.matrix() - expected).norm(), 1e-14);
}

TEST(Propagate, Composition) {
  const RigidBodyState s{exp_so3({0.7, 0.1, -0.2}), kOmega0, 0.0};
  const RigidBodyState zero = propagate(s, 0, 0.01, spacecraft(), GravityGradient{});
  EXPECT_EQ(zero.R.matrix(), s.R.matrix());
  EXPECT_EQ(zero.Omega, s.Omega);
  const RigidBodyState ab = propagate(s, 30, 0.01, spacecraft(), GravityGradient{});
  const RigidBodyState a_b = propagate(
      propagate(s, 12, 0.01, spacecraft(), GravityGradient{}), 18, 0.01,
      spacecraft(), GravityGradient{});
  EXPECT_EQ(ab.R.matrix(), a_b.R.matrix());
  EXPECT_EQ(ab.Omega, a_b.Omega);
  const auto traj =
      propagate_trajectory(s, 30, 0.01, spacecraft(), GravityGradient{});
  ASSERT_EQ(traj.size(), 31u);
  EXPECT_EQ(traj.back().R.matrix(), ab.R.matrix());
  EXPECT_THROW(propagate(s, -1, 0.01, spacecraft(), FreeBody{}), DomainError);
}

TEST(Energy, Trivial) {
  const InertiaModel ball(Matrix3::Identity());
  EXPECT_EQ(energy({RotationMatrix(), Vector3::Zero(), 0}, ball, FreeBody{}), 0.0);
  EXPECT_EQ(energy({RotationMatrix(), Vector3(0, 0, 2), 0}, ball, FreeBody{}), 2.0);
}

// Long-run structure: 10^4 steps at h = 0.01.
class LongRun : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    traj_ = new std::vector<RigidBodyState>(propagate_trajectory(
        {exp_so3({0.3, -0.4, 0.2}), kOmega0, 0.0}, 10000, 0.01, spacecraft(),
        FreeBody{}));
  }
  static void TearDownTestSuite() { delete traj_; }
  static std::vector<RigidBodyState>* traj_;
};
std::vector<RigidBodyState>* LongRun::traj_ = nullptr;

TEST_F(LongRun, OrthogonalityWithoutReprojection) {
  EXPECT_LE(traj_->back().R.orthogonality_error(), 1e-12);
  const RigidBodyState gg = propagate({exp_so3({0.3, -0.4, 0.2}), kOmega0, 0.0},
                                      10000, 0.01, spacecraft(), GravityGradient{});
  EXPECT_LE(gg.R.orthogonality_error(), 1e-12);
}

TEST_F(LongRun, SpatialMomentum) {
  const Vector3 pi0 = spatial_momentum(traj_->front(), spacecraft());
  double worst = 0.0;
  for (const auto& s : *traj_)
    worst = std::max(worst, (spatial_momentum(s, spacecraft()) - pi0).norm());
  EXPECT_LE(worst / pi0.norm(), 1e-10);
}

TEST_F(LongRun, EnergyBoundedWithoutTrend) {
  const double e0 = energy(traj_->front(), spacecraft(), FreeBody{});
  double first = 0.0, second = 0.0;
  const std::size_t half = traj_->size() / 2;
  for (std::size_t i = 0; i < traj_->size(); ++i) {
    const double d = std::abs(energy((*traj_)[i], spacecraft(), FreeBody{}) - e0) / e0;
    (i < half ? first : second) = std::max(i < half ? first : second, d);
  }
  EXPECT_LE(std::max(first, second), 1e-6);
  // Both halves sit at round-off; compare with an absolute floor so that
  // a zero first-half deviation does not make the ratio meaningless.
  EXPECT_LE(second, 2.0 * first + 1e-14);
}

TEST(Lgvi, SecondOrderConvergence) {
  const RigidBodyState s{exp_so3({0.3, -0.4, 0.2}), kOmega0, 0.0};
  const double T = 1.0;
  auto run = [&](int n) {
    return propagate(s, n, T / n, spacecraft(), GravityGradient{});
  };
  const RigidBodyState ref = run(6400);
  const double e1 = geodesic_angle(run(100).R, ref.R);
  const double e2 = geodesic_angle(run(200).R, ref.R);
  EXPECT_GE(e1 / e2, 3.2);
  EXPECT_LE(e1 / e2, 4.8);
}

}  // namespace
}  // namespace smatt
