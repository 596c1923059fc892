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

#pragma once

#include <Eigen/Cholesky>
#include <variant>
#include <vector>

#include "smatt/so3.hpp"

namespace smatt {

/// Moment of inertia J (normalized units) with the nonstandard inertia
/// J_d = tr(J)/2 * I - J used by the discrete equations of motion.
class InertiaModel {
 public:
  /// Throws DomainError unless `j` is symmetric positive definite.
  explicit InertiaModel(const Matrix3& j);

  static InertiaModel diagonal(double j1, double j2, double j3);

  const Matrix3& J() const noexcept { return j_; }
  const Matrix3& Jd() const noexcept { return jd_; }

  /// J^{-1} * v.
  Vector3 solve(const Vector3& v) const { return llt_.solve(v); }

 private:
  Matrix3 j_;
  Matrix3 jd_;
  Eigen::LLT<Matrix3> llt_;
};

/// No external moment.
struct FreeBody {};

/// Circular-orbit gravity gradient in normalized units (orbit rate 1). The
/// local vertical in the reference frame is e_r(t) = (cos t, sin t, 0).
struct GravityGradient {};

using PotentialModel = std::variant<FreeBody, GravityGradient>;

/// Attitude, body-frame angular velocity, and normalized time.
struct RigidBodyState {
  RotationMatrix R;
  Vector3 Omega = Vector3::Zero();
  double t = 0.0;
};

/// Moment M with hat(M) = dUdR^T R - R^T dUdR, computed from the row-vector
/// form sum_i r_i x v_i.
Vector3 moment_from_potential(const RotationMatrix& r, const Matrix3& dUdR);

/// 3 (a x J a), a = R^T e_r(t).
Vector3 gravity_gradient_moment(const RotationMatrix& r, double t,
                                const InertiaModel& inertia);

Vector3 potential_moment(const PotentialModel& potential,
                         const RotationMatrix& r, double t,
                         const InertiaModel& inertia);

/// U(R, t); zero for a free body, 3/2 e_r^T R J R^T e_r for gravity gradient.
double potential_energy(const PotentialModel& potential,
                        const RotationMatrix& r, double t,
                        const InertiaModel& inertia);

struct ImplicitSolveOptions {
  double tolerance = 1e-13;
  int max_iterations = 50;
  double jacobian_step = 1e-7;
};

/// Solves hat(phi) = F J_d - J_d F^T for F = exp(f) by Newton iteration on
/// f, starting from J^{-1} phi. Throws ConvergenceError (carrying the last
/// residual) after max_iterations.
RotationMatrix solve_implicit_F(const Vector3& phi, const InertiaModel& inertia,
                                const ImplicitSolveOptions& options = {});

/// Frobenius residual ||hat(phi) - (F J_d - J_d F^T)||_F.
double implicit_F_residual(const Vector3& phi, const Matrix3& jd,
                           const RotationMatrix& f);

/// One step of the Lie group variational integrator:
///   h hat(J W_k + h/2 M_k) = F_k J_d - J_d F_k^T
///   R_{k+1} = R_k F_k
///   J W_{k+1} = F_k^T J W_k + h/2 F_k^T M_k + h/2 M_{k+1}
/// with M_{k+1} evaluated at (R_{k+1}, t_k + h).
RigidBodyState lgvi_step(const RigidBodyState& state, double h,
                         const InertiaModel& inertia,
                         const PotentialModel& potential);

/// n-fold composition of lgvi_step.
RigidBodyState propagate(const RigidBodyState& state, int n, double h,
                         const InertiaModel& inertia,
                         const PotentialModel& potential);

/// Like propagate, returning all n + 1 states (including the input).
std::vector<RigidBodyState> propagate_trajectory(
    const RigidBodyState& state, int n, double h, const InertiaModel& inertia,
    const PotentialModel& potential);

/// 1/2 W^T J W + U(R, t).
double energy(const RigidBodyState& state, const InertiaModel& inertia,
              const PotentialModel& potential);

/// R J W.
Vector3 spatial_momentum(const RigidBodyState& state,
                         const InertiaModel& inertia);

}  // namespace smatt
