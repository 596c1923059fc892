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

#include "smatt/ellipsoid.hpp"
#include "smatt/so3.hpp"

namespace smatt {

/// A single direction measurement: the reference-frame direction `e` to a
/// known point, the measured body-frame direction `b`, and the noise bound
/// nu ∈ E(0, S) with b_true = exp(hat(nu)) b.
struct DirectionMeasurement {
  Vector3 e = Vector3::UnitX();
  Vector3 b = Vector3::UnitX();
  Matrix3 S = Matrix3::Identity();
};

/// Throws DomainError unless e and b are unit (1e-9) and S is SPD.
void validate(const DirectionMeasurement& m);

/// Measurement set on SO(3): R = center exp(hat(zeta)), zeta ∈ E(0, P).
struct MeasurementEllipsoid {
  RotationMatrix center;
  Matrix3 P = Matrix3::Identity();
};

constexpr double kColinearityTol = 1e-8;

/// exp[acos(b^T e) hat((b x e)/||b x e||)], the shortest rotation taking b
/// onto e. Throws DegenerateGeometryError when ||b x e|| < 1e-8.
RotationMatrix alignment_rotation(const Vector3& b, const Vector3& e);

/// alignment_rotation(b, e) * exp(theta0 hat(b)); maps b onto e for every
/// theta0.
RotationMatrix reference_rotation(const Vector3& b, const Vector3& e,
                                  double theta0);

/// R0 exp(theta hat(b)): the fiber of attitudes consistent with R0 b.
RotationMatrix feasible_attitude(const RotationMatrix& r0, const Vector3& b,
                                 double theta);

/// exp(-hat(nu)) b, the measured direction given the true one. Rejects
/// ||nu|| >= 0.5 with DomainError.
Vector3 apply_measurement_noise(const Vector3& b, const Vector3& nu);

struct FiberAngle {
  double theta = 0.0;
  bool degenerate = false;  // every angle is equally good
};

/// Angle theta0 ∈ (-pi, pi] minimizing tr(I - Rf^T Ra exp(theta0 hat(b))).
/// Stationarity gives tan theta0 = -tr(A hat(b)) / tr(A hat(b)^2) with
/// A = Rf^T Ra; the branch is fixed by
/// tr(A hat(b)) sin theta0 - tr(A hat(b)^2) cos theta0 > 0.
FiberAngle optimal_theta_circ(const RotationMatrix& predicted_center,
                              const RotationMatrix& alignment,
                              const Vector3& b);

/// Center of the measurement set; same construction as reference_rotation
/// applied to the measured direction.
RotationMatrix measurement_center(const Vector3& b_measured, const Vector3& e,
                                  double theta0);

/// Shape of the set bounding zeta - (theta + c) b before the fiber union:
/// minkowski_sum_cover((1 + pi)^2 S, pi^2 A^T S A), A = I + hat(b).
Matrix3 measurement_sum_shape(const Vector3& b_measured, const Matrix3& s);

/// Shape P^m of the zeta set: union cover of E(±pi b, measurement_sum_shape).
Matrix3 measurement_uncertainty(const Vector3& b_measured, const Matrix3& s,
                                const UnionCoverOptions& options = {});

}  // namespace smatt
