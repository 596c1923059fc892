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

#include <Eigen/LU>
#include <cmath>
#include <string>

#include "smatt/errors.hpp"

namespace smatt {
namespace {

Vector3 local_vertical(double t) { return Vector3(std::cos(t), std::sin(t), 0.0); }

Vector3 implicit_residual(const Vector3& phi, const Matrix3& jd,
                          const Matrix3& f) {
  const Matrix3 d = hat(phi) - (f * jd - jd * f.transpose());
  // d is skew by construction; read it off directly.
  return Vector3(d(2, 1), d(0, 2), d(1, 0));
}

}  // namespace

InertiaModel::InertiaModel(const Matrix3& j) : j_(j) {
  if (!j.allFinite() || (j - j.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
    throw DomainError("inertia matrix must be finite and symmetric");
  }
  llt_.compute(j_);
  if (llt_.info() != Eigen::Success) {
    throw DomainError("inertia matrix must be positive definite");
  }
  jd_ = 0.5 * j_.trace() * Matrix3::Identity() - j_;
}

InertiaModel InertiaModel::diagonal(double j1, double j2, double j3) {
  return InertiaModel(Vector3(j1, j2, j3).asDiagonal().toDenseMatrix());
}

Vector3 moment_from_potential(const RotationMatrix& r, const Matrix3& dUdR) {
  Vector3 m = Vector3::Zero();
  for (int i = 0; i < 3; ++i) {
    m += r.matrix().row(i).transpose().cross(dUdR.row(i).transpose());
  }
  return m;
}

Vector3 gravity_gradient_moment(const RotationMatrix& r, double t,
                                const InertiaModel& inertia) {
  const Vector3 a = r.matrix().transpose() * local_vertical(t);
  return 3.0 * a.cross(inertia.J() * a);
}

Vector3 potential_moment(const PotentialModel& potential,
                         const RotationMatrix& r, double t,
                         const InertiaModel& inertia) {
  if (std::holds_alternative<GravityGradient>(potential)) {
    return gravity_gradient_moment(r, t, inertia);
  }
  return Vector3::Zero();
}

double potential_energy(const PotentialModel& potential,
                        const RotationMatrix& r, double t,
                        const InertiaModel& inertia) {
  if (std::holds_alternative<GravityGradient>(potential)) {
    const Vector3 a = r.matrix().transpose() * local_vertical(t);
    return 1.5 * a.dot(inertia.J() * a);
  }
  return 0.0;
}

double implicit_F_residual(const Vector3& phi, const Matrix3& jd,
                           const RotationMatrix& f) {
  return (hat(phi) - (f.matrix() * jd - jd * f.matrix().transpose())).norm();
}

RotationMatrix solve_implicit_F(const Vector3& phi, const InertiaModel& inertia,
                                const ImplicitSolveOptions& options) {
  const Matrix3& jd = inertia.Jd();
  Vector3 f = inertia.solve(phi);
  Vector3 g = implicit_residual(phi, jd, exp_so3(f).matrix());
  double residual = std::sqrt(2.0) * g.norm();

  for (int iter = 0; iter < options.max_iterations; ++iter) {
    if (residual <= options.tolerance) {
      return exp_so3(f);
    }
    Matrix3 jac;
    for (int i = 0; i < 3; ++i) {
      Vector3 fp = f;
      fp(i) += options.jacobian_step;
      jac.col(i) = (implicit_residual(phi, jd, exp_so3(fp).matrix()) - g) /
                   options.jacobian_step;
    }
    f -= jac.partialPivLu().solve(g);
    g = implicit_residual(phi, jd, exp_so3(f).matrix());
    residual = std::sqrt(2.0) * g.norm();
  }
  if (residual <= options.tolerance) {
    return exp_so3(f);
  }
  throw ConvergenceError(
      "solve_implicit_F: no convergence after " +
          std::to_string(options.max_iterations) +
          " iterations, residual " + std::to_string(residual),
      residual);
}

RigidBodyState lgvi_step(const RigidBodyState& state, double h,
                         const InertiaModel& inertia,
                         const PotentialModel& potential) {
  if (!(h > 0.0)) {
    throw DomainError("lgvi_step: step size must be positive");
  }
  const Vector3 m_k = potential_moment(potential, state.R, state.t, inertia);
  const Vector3 impulse = inertia.J() * state.Omega + 0.5 * h * m_k;
  const RotationMatrix f = solve_implicit_F(h * impulse, inertia);

  RigidBodyState next;
  next.t = state.t + h;
  next.R = state.R * f;
  const Vector3 m_next = potential_moment(potential, next.R, next.t, inertia);
  next.Omega = inertia.solve(f.matrix().transpose() * impulse + 0.5 * h * m_next);
  return next;
}

RigidBodyState propagate(const RigidBodyState& state, int n, double h,
                         const InertiaModel& inertia,
                         const PotentialModel& potential) {
  if (n < 0) {
    throw DomainError("propagate: step count must be non-negative");
  }
  RigidBodyState s = state;
  for (int k = 0; k < n; ++k) {
    s = lgvi_step(s, h, inertia, potential);
  }
  return s;
}

std::vector<RigidBodyState> propagate_trajectory(
    const RigidBodyState& state, int n, double h, const InertiaModel& inertia,
    const PotentialModel& potential) {
  if (n < 0) {
    throw DomainError("propagate: step count must be non-negative");
  }
  std::vector<RigidBodyState> out;
  out.reserve(static_cast<std::size_t>(n) + 1);
  out.push_back(state);
  for (int k = 0; k < n; ++k) {
    out.push_back(lgvi_step(out.back(), h, inertia, potential));
  }
  return out;
}

double energy(const RigidBodyState& state, const InertiaModel& inertia,
              const PotentialModel& potential) {
  return 0.5 * state.Omega.dot(inertia.J() * state.Omega) +
         potential_energy(potential, state.R, state.t, inertia);
}

Vector3 spatial_momentum(const RigidBodyState& state,
                         const InertiaModel& inertia) {
  return state.R * (inertia.J() * state.Omega);
}

}  // namespace smatt
