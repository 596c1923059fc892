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

#include "smatt/selftest.hpp"

#include <cmath>
#include <exception>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>

#include "smatt/ellipsoid.hpp"
#include "smatt/estimator.hpp"
#include "smatt/measurement.hpp"
#include "smatt/rigid_body.hpp"
#include "smatt/so3.hpp"

namespace smatt {
namespace {

Vector3 random_vector(std::mt19937_64& rng, double scale) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  return scale * Vector3(u(rng), u(rng), u(rng));
}

Vector3 random_unit(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Vector3 v(n(rng), n(rng), n(rng));
  return v.normalized();
}

// Each check returns the worst observed error; it passes below `limit`.
struct Check {
  const char* name;
  double limit;
  std::function<double()> worst;
};

std::vector<Check> checks() {
  return {
      {"hat/vee round trip", 1e-15,
       [] {
         std::mt19937_64 rng(1);
         double worst = 0.0;
         for (int i = 0; i < 100; ++i) {
           const Vector3 v = random_vector(rng, 5.0);
           const Vector3 y = random_vector(rng, 5.0);
           worst = std::max(worst, (vee(hat(v)) - v).norm());
           worst = std::max(worst, (hat(v) * y - v.cross(y)).norm() / 100.0);
         }
         return worst;
       }},
      {"exp/log round trip", 1e-10,
       [] {
         std::mt19937_64 rng(2);
         double worst = 0.0;
         for (int i = 0; i < 200; ++i) {
           Vector3 v = random_unit(rng) *
                       std::uniform_real_distribution<double>(
                           0.0, std::numbers::pi - 0.01)(rng);
           worst = std::max(worst, (log_so3(exp_so3(v)) - v).norm());
         }
         return worst;
       }},
      {"LGVI orthogonality, 1e4 steps", 1e-12,
       [] {
         const InertiaModel j = InertiaModel::diagonal(1.0, 2.8, 2.0);
         RigidBodyState s{RotationMatrix(), Vector3(2.32, 0.45, -0.59), 0.0};
         s = propagate(s, 10000, 0.01, j, GravityGradient{});
         return s.R.orthogonality_error();
       }},
      {"LGVI free-body momentum drift, 1e4 steps", 1e-10,
       [] {
         const InertiaModel j = InertiaModel::diagonal(1.0, 2.8, 2.0);
         const RigidBodyState s0{RotationMatrix(), Vector3(2.32, 0.45, -0.59), 0.0};
         const Vector3 m0 = spatial_momentum(s0, j);
         const RigidBodyState s = propagate(s0, 10000, 0.01, j, FreeBody{});
         return (spatial_momentum(s, j) - m0).norm() / m0.norm();
       }},
      {"implicit solve vs spherical closed form", 1e-12,
       [] {
         const InertiaModel j = InertiaModel::diagonal(1.0, 1.0, 1.0);
         const Vector3 phi(0.03, -0.05, 0.02);
         const RotationMatrix f = solve_implicit_F(phi, j);
         const RotationMatrix ref =
             exp_so3(std::asin(phi.norm()) * phi / phi.norm());
         return (f.matrix() - ref.matrix()).norm();
       }},
      {"Minkowski cover of unit balls is 4I", 1e-14,
       [] {
         return (minkowski_sum_cover(Eigen::MatrixXd::Identity(3, 3),
                                     Eigen::MatrixXd::Identity(3, 3)) -
                 4.0 * Eigen::MatrixXd::Identity(3, 3))
             .norm();
       }},
      {"fusion hand case diag(1,1,1,2,2,2)", 1e-14,
       [] {
         const FusionResult f = fuse_intersection(
             Vector6::Zero(), Matrix6::Identity(), Matrix3::Identity(), 1.0);
         Vector6 d;
         d << 1, 1, 1, 2, 2, 2;
         return (f.P - Matrix6(d.asDiagonal())).norm() + std::abs(f.beta - 2.0);
       }},
      {"reference rotation maps b onto e", 1e-10,
       [] {
         std::mt19937_64 rng(3);
         double worst = 0.0;
         for (int i = 0; i < 100; ++i) {
           const Vector3 b = random_unit(rng);
           const Vector3 e = random_unit(rng);
           const double th = random_vector(rng, std::numbers::pi)(0);
           worst = std::max(worst, (reference_rotation(b, e, th) * b - e).norm());
         }
         return worst;
       }},
      {"union cover certified for both offsets", 0.5,
       [] {
         const Matrix3 p0 = measurement_sum_shape(
             Vector3::UnitZ(), std::pow(0.2 * std::numbers::pi / 180.0, 2) *
                                   Matrix3::Identity());
         const Matrix3 pm = union_cover_symmetric(Vector3::UnitZ(), p0);
         const Ellipsoid cover{Eigen::MatrixXd(pm)};
         const bool ok =
             contains_ellipsoid(cover, Ellipsoid(Eigen::VectorXd(std::numbers::pi *
                                                                 Vector3::UnitZ()),
                                                 Eigen::MatrixXd(p0))) &&
             contains_ellipsoid(cover, Ellipsoid(Eigen::VectorXd(-std::numbers::pi *
                                                                 Vector3::UnitZ()),
                                                 Eigen::MatrixXd(p0)));
         return ok ? 0.0 : 1.0;
       }},
  };
}

}  // namespace

std::vector<SelfTestResult> run_selftest() {
  std::vector<SelfTestResult> out;
  for (const Check& c : checks()) {
    SelfTestResult r;
    r.name = c.name;
    try {
      const double worst = c.worst();
      r.passed = worst <= c.limit;
      std::ostringstream msg;
      msg << "worst " << worst << " (limit " << c.limit << ")";
      r.detail = msg.str();
    } catch (const std::exception& err) {
      r.passed = false;
      r.detail = err.what();
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace smatt
