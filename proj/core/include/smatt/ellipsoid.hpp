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
#include <cstdint>
#include <numbers>
#include <random>

#include "smatt/so3.hpp"

namespace smatt {

using Vector6 = Eigen::Matrix<double, 6, 1>;
using Matrix6 = Eigen::Matrix<double, 6, 6>;
using Matrix36 = Eigen::Matrix<double, 3, 6>;
using Matrix63 = Eigen::Matrix<double, 6, 3>;

/// {x : (x - c)^T P^{-1} (x - c) <= 1} in R^n, P symmetric positive definite.
class Ellipsoid {
 public:
  /// Throws DomainError on dimension mismatch, asymmetry beyond 1e-12
  /// (relative to the largest entry) or a non-positive eigenvalue.
  Ellipsoid(Eigen::VectorXd center, Eigen::MatrixXd shape);

  /// Centered at the origin.
  explicit Ellipsoid(Eigen::MatrixXd shape);

  const Eigen::VectorXd& center() const noexcept { return center_; }
  const Eigen::MatrixXd& shape() const noexcept { return shape_; }
  Eigen::Index dim() const noexcept { return center_.size(); }

  /// (x - c)^T P^{-1} (x - c).
  double quadratic_form(const Eigen::VectorXd& x) const;

 private:
  Eigen::VectorXd center_;
  Eigen::MatrixXd shape_;
};

/// Uncertainty set on TSO(3): (R, W) with R = R_hat exp(hat(zeta)),
/// W = W_hat + dW and [zeta; dW]^T P^{-1} [zeta; dW] <= 1. `t` is the epoch of
/// the center.
struct StateEllipsoid {
  RotationMatrix R;
  Vector3 Omega = Vector3::Zero();
  Matrix6 P = Matrix6::Identity();
  double t = 0.0;
};

/// The 3x6 selector [I 0] picking the attitude part of a state perturbation.
Matrix36 attitude_selector();

/// Measurement set that only constrains the attitude coordinates:
/// {x in R^6 : (Hx)^T P^{-1} (Hx) <= 1}.
struct DegenerateStrip {
  Matrix3 P;
  bool contains(const Vector6& x, double slack = 1e-9) const;
};

constexpr double kMembershipSlack = 1e-9;

/// (x - c)^T P^{-1} (x - c) <= 1 + 1e-9.
bool contains_point(const Ellipsoid& e, const Eigen::VectorXd& x);

struct StateMembership {
  bool inside = false;
  Vector6 x = Vector6::Zero();  // [zeta; dOmega] in the chart at the center
  double quadratic_form = 0.0;
};

/// Chart coordinates of (r, omega) relative to the center of `e`, and whether
/// they lie inside. Throws DomainError when r is (nearly) antipodal to the
/// center.
StateMembership state_membership(const StateEllipsoid& e,
                                 const RotationMatrix& r,
                                 const Vector3& omega);

/// Uniform sample from the solid ellipsoid.
Eigen::VectorXd sample_in_ellipsoid(const Ellipsoid& e, std::mt19937_64& rng);
Eigen::VectorXd sample_in_ellipsoid(const Ellipsoid& e, std::uint64_t seed);

/// Uniform-direction sample on the boundary surface (image of the unit
/// sphere).
Eigen::VectorXd sample_on_boundary(const Ellipsoid& e, std::mt19937_64& rng);

/// (P + P^T) / 2.
Eigen::MatrixXd symmetrize(const Eigen::MatrixXd& p);

/// Trace-minimal member of (1 + 1/q) Q1 + (1 + q) Q2, q = sqrt(tr Q1 / tr Q2),
/// which covers the vector sum E(0,Q1) + E(0,Q2).
Eigen::MatrixXd minkowski_sum_cover(const Eigen::MatrixXd& q1,
                                    const Eigen::MatrixXd& q2);

/// S-procedure certificate for outer ⊇ inner: the best multiplier found and
/// the minimum eigenvalue of lambda * M_in - M_out at that multiplier.
struct ContainmentCertificate {
  bool contained = false;
  double lambda = 0.0;
  double min_eigenvalue = 0.0;
};

ContainmentCertificate containment_certificate(const Ellipsoid& outer,
                                               const Ellipsoid& inner);

/// True iff some lambda >= 0 makes lambda * M_in - M_out positive
/// semidefinite (to -1e-9), with M the homogeneous quadratic of each set.
bool contains_ellipsoid(const Ellipsoid& outer, const Ellipsoid& inner);

struct UnionCoverOptions {
  int grid_points = 40;
  double alpha_min = 1.0;
  double alpha_max = 50.0;
  int refinement_iterations = 40;
};

/// Centered cover of E(-kappa b, P0) ∪ E(kappa b, P0) from the family
/// alpha P0 + beta b b^T, trace-minimal among candidates certified by
/// contains_ellipsoid. Throws ConvergenceError if no grid candidate is
/// certified.
Matrix3 union_cover_symmetric(const Vector3& b, const Matrix3& p0,
                              double kappa = std::numbers::pi,
                              const UnionCoverOptions& options = {});

struct FusionResult {
  Vector6 x = Vector6::Zero();
  Matrix6 P = Matrix6::Identity();
  Matrix63 L = Matrix63::Zero();
  double beta = 0.0;
  double r = 0.0;
};

/// Cover of E(x_mf, Pf) ∩ {x : (Hx)^T Pm^{-1} (Hx) <= 1} for weight r > 0:
///   L    = Pf H^T [H Pf H^T + Pm / r]^{-1}
///   x    = (I - L H) x_mf
///   beta = 1 + r - (H x_mf)^T [H Pf H^T + Pm / r]^{-1} (H x_mf)
///   P    = beta [(I - L H) Pf (I - L H)^T + L Pm L^T / r]
/// Throws InconsistentMeasurementError when beta <= 0.
FusionResult fuse_intersection(const Vector6& x_mf, const Matrix6& pf,
                               const Matrix3& pm, double r);

struct FusionSearchOptions {
  double r_min = 1e-4;
  double r_max = 1e4;
  int scan_points = 60;
  double log_tolerance = 1e-10;
};

/// fuse_intersection at the r minimizing tr(P): log-spaced scan, then
/// golden-section refinement around the best scan point. Throws
/// InconsistentMeasurementError when every scanned r gives beta <= 0.
FusionResult optimize_fusion_r(const Vector6& x_mf, const Matrix6& pf,
                               const Matrix3& pm,
                               const FusionSearchOptions& options = {});

}  // namespace smatt
