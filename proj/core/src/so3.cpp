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

#include <Eigen/SVD>
#include <cmath>
#include <numbers>
#include <string>

#include "smatt/errors.hpp"

namespace smatt {
namespace {

// Below this angle exp/log switch to two-term series.
constexpr double kSmallAngle = 1e-6;
constexpr double kPiMargin = 1e-6;

// sin(theta) * axis, the vee of the antisymmetric part of r.
Vector3 antisymmetric_part(const Matrix3& r) {
  return 0.5 * Vector3(r(2, 1) - r(1, 2), r(0, 2) - r(2, 0), r(1, 0) - r(0, 1));
}

double rotation_angle(const Matrix3& r) {
  const double s = antisymmetric_part(r).norm();
  const double c = 0.5 * (r.trace() - 1.0);
  return std::atan2(s, c);
}

}  // namespace

RotationMatrix RotationMatrix::from_matrix(const Matrix3& m) {
  if (!m.allFinite()) {
    throw DomainError("rotation matrix has non-finite entries");
  }
  const double ortho = (m.transpose() * m - Matrix3::Identity()).norm();
  const double det = m.determinant();
  if (ortho > kOrthogonalityTol || std::abs(det - 1.0) > kOrthogonalityTol) {
    throw DomainError("matrix is not a rotation: ||R^T R - I||_F = " +
                      std::to_string(ortho) +
                      ", det = " + std::to_string(det));
  }
  return unchecked(m);
}

double RotationMatrix::orthogonality_error() const {
  return (m_.transpose() * m_ - Matrix3::Identity()).norm();
}

Matrix3 hat(const Vector3& v) {
  Matrix3 s;
  s << 0.0, -v.z(), v.y(),
       v.z(), 0.0, -v.x(),
       -v.y(), v.x(), 0.0;
  return s;
}

Vector3 vee(const Matrix3& a) {
  if ((a + a.transpose()).cwiseAbs().maxCoeff() > 1e-9) {
    throw DomainError("vee: matrix is not skew-symmetric");
  }
  return Vector3(a(2, 1), a(0, 2), a(1, 0));
}

RotationMatrix exp_so3(const Vector3& v) {
  const double theta = v.norm();
  const Matrix3 k = hat(v);
  if (theta < kSmallAngle) {
    return RotationMatrix::unchecked(Matrix3::Identity() + k + 0.5 * k * k);
  }
  const double a = std::sin(theta) / theta;
  const double b = (1.0 - std::cos(theta)) / (theta * theta);
  return RotationMatrix::unchecked(Matrix3::Identity() + a * k + b * k * k);
}

Vector3 log_so3(const RotationMatrix& r) {
  const Matrix3& m = r.matrix();
  const double theta = rotation_angle(m);
  if (theta >= std::numbers::pi - kPiMargin) {
    throw DomainError("log_so3: rotation angle is pi to within 1e-6; axis is ambiguous");
  }
  const Vector3 s = antisymmetric_part(m);
  if (theta < kSmallAngle) {
    return (1.0 + theta * theta / 6.0) * s;
  }
  return (theta / std::sin(theta)) * s;
}

double geodesic_angle(const RotationMatrix& r1, const RotationMatrix& r2) {
  return rotation_angle(r1.matrix().transpose() * r2.matrix());
}

RotationMatrix project_to_so3(const Matrix3& m) {
  Eigen::JacobiSVD<Matrix3> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Vector3 sv = svd.singularValues();
  if (!m.allFinite() || !(sv(2) > 1e-12 * sv(0))) {
    throw DomainError("project_to_so3: singular input");
  }
  const Matrix3 u = svd.matrixU();
  const Matrix3 v = svd.matrixV();
  Matrix3 d = Matrix3::Identity();
  d(2, 2) = (u * v.transpose()).determinant() < 0.0 ? -1.0 : 1.0;
  return RotationMatrix::unchecked(u * d * v.transpose());
}

}  // namespace smatt
