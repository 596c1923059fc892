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

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace smatt {

using Vector3 = Eigen::Vector3d;
using Matrix3 = Eigen::Matrix3d;

/// A 3x3 special orthogonal matrix. Construction from an arbitrary matrix
/// is checked against ||R^T R - I||_F <= 1e-10 and |det R - 1| <= 1e-10;
/// products and the exponential map produce rotations directly.
class RotationMatrix {
 public:
  static constexpr double kOrthogonalityTol = 1e-10;

  RotationMatrix() : m_(Matrix3::Identity()) {}

  static RotationMatrix identity() { return RotationMatrix(); }

  /// Throws DomainError when `m` is not a rotation within tolerance.
  static RotationMatrix from_matrix(const Matrix3& m);

  /// Wraps `m` without validation. Only for results of group operations that
  /// are rotations up to round-off.
  static RotationMatrix unchecked(const Matrix3& m) {
    RotationMatrix r;
    r.m_ = m;
    return r;
  }

  const Matrix3& matrix() const noexcept { return m_; }
  double operator()(int i, int j) const { return m_(i, j); }

  RotationMatrix transpose() const { return unchecked(m_.transpose()); }

  RotationMatrix operator*(const RotationMatrix& other) const {
    return unchecked(m_ * other.m_);
  }
  Vector3 operator*(const Vector3& v) const { return m_ * v; }

  /// ||R^T R - I||_F.
  double orthogonality_error() const;

 private:
  Matrix3 m_;
};

/// Skew map: hat(v) * y == v.cross(y).
Matrix3 hat(const Vector3& v);

/// Inverse of hat. Throws DomainError if ||A + A^T||_max > 1e-9.
Vector3 vee(const Matrix3& a);

/// Rodrigues exponential of an axis-angle vector (radians).
RotationMatrix exp_so3(const Vector3& v);

/// Principal logarithm, ||result|| < pi. Throws DomainError when the
/// rotation angle is within 1e-6 of pi, where the axis is ambiguous.
Vector3 log_so3(const RotationMatrix& r);

/// Rotation angle of r1^T r2, in [0, pi].
double geodesic_angle(const RotationMatrix& r1, const RotationMatrix& r2);

/// Closest rotation in the Frobenius norm (polar factor with determinant
/// correction). Throws DomainError for singular input.
RotationMatrix project_to_so3(const Matrix3& m);

}  // namespace smatt
