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

#include "smatt/measurement.hpp"

#include <Eigen/Cholesky>
#include <cmath>
#include <numbers>

#include "smatt/errors.hpp"

namespace smatt {

void validate(const DirectionMeasurement& m) {
  if (std::abs(m.e.norm() - 1.0) > 1e-9 || std::abs(m.b.norm() - 1.0) > 1e-9) {
    throw DomainError("direction measurement: e and b must be unit vectors");
  }
  if ((m.S - m.S.transpose()).cwiseAbs().maxCoeff() > 1e-12 ||
      m.S.llt().info() != Eigen::Success) {
    throw DomainError("direction measurement: S must be symmetric positive definite");
  }
}

RotationMatrix alignment_rotation(const Vector3& b, const Vector3& e) {
  const Vector3 axis = b.cross(e);
  const double s = axis.norm();
  if (s < kColinearityTol) {
    throw DegenerateGeometryError(
        "single-direction geometry: b and e are colinear");
  }
  const double angle = std::atan2(s, b.dot(e));
  return exp_so3(angle / s * axis);
}

RotationMatrix reference_rotation(const Vector3& b, const Vector3& e,
                                  double theta0) {
  return alignment_rotation(b, e) * exp_so3(theta0 * b);
}

RotationMatrix feasible_attitude(const RotationMatrix& r0, const Vector3& b,
                                 double theta) {
  return r0 * exp_so3(theta * b);
}

Vector3 apply_measurement_noise(const Vector3& b, const Vector3& nu) {
  if (!(nu.norm() < 0.5)) {
    throw DomainError("apply_measurement_noise: ||nu|| must be below 0.5 rad");
  }
  const Vector3 out = exp_so3(-nu) * b;
  return out / out.norm();
}

FiberAngle optimal_theta_circ(const RotationMatrix& predicted_center,
                              const RotationMatrix& alignment,
                              const Vector3& b) {
  const Matrix3 a = predicted_center.matrix().transpose() * alignment.matrix();
  const Matrix3 s = hat(b);
  const double t1 = (a * s).trace();
  const double t2 = (a * s * s).trace();
  if (std::abs(t1) < 1e-12 && std::abs(t2) < 1e-12) {
    return {0.0, true};
  }
  // (cos, sin) proportional to (-t2, t1) is the stationary point with
  // positive second derivative t1 sin - t2 cos.
  double theta = std::atan2(t1, -t2);
  if (theta <= -std::numbers::pi) theta += 2.0 * std::numbers::pi;
  return {theta, false};
}

RotationMatrix measurement_center(const Vector3& b_measured, const Vector3& e,
                                  double theta0) {
  return reference_rotation(b_measured, e, theta0);
}

Matrix3 measurement_sum_shape(const Vector3& b_measured, const Matrix3& s) {
  constexpr double pi = std::numbers::pi;
  const Matrix3 a = Matrix3::Identity() + hat(b_measured);
  const Matrix3 q1 = (1.0 + pi) * (1.0 + pi) * s;
  const Matrix3 q2 = pi * pi * a.transpose() * s * a;
  return minkowski_sum_cover(q1, q2);
}

Matrix3 measurement_uncertainty(const Vector3& b_measured, const Matrix3& s,
                                const UnionCoverOptions& options) {
  return union_cover_symmetric(b_measured, measurement_sum_shape(b_measured, s),
                               std::numbers::pi, options);
}

}  // namespace smatt
