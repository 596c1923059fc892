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

#include <utility>

#include "smatt/ellipsoid.hpp"
#include "smatt/measurement.hpp"
#include "smatt/rigid_body.hpp"

namespace smatt {

struct FilterConfig {
  double h = 0.0;                     // integrator step, normalized time
  int steps_between_measurements = 1; // l
  double jacobian_step = 1e-6;        // central-difference perturbation
  FusionSearchOptions fusion;
  UnionCoverOptions union_cover;
};

/// Throws DomainError unless h > 0, l >= 1 and the Jacobian step is positive.
void validate(const FilterConfig& cfg);

/// Everything one prediction/measurement cycle produced.
struct FilterStepReport {
  StateEllipsoid prior;
  StateEllipsoid predicted;
  StateEllipsoid posterior;
  DirectionMeasurement measurement;
  RotationMatrix measurement_center;
  Matrix3 measurement_shape = Matrix3::Identity();
  Vector3 center_offset = Vector3::Zero();  // zeta_hat^{mf}
  double theta0 = 0.0;
  bool theta0_degenerate = false;
  double r_star = 0.0;
  double beta = 0.0;
  bool inconsistent = false;  // fusion failed; posterior is the prediction
  double trace_prior = 0.0;
  double trace_predicted = 0.0;
  double trace_posterior = 0.0;
  double elapsed_seconds = 0.0;
};

RigidBodyState center_state(const StateEllipsoid& e);

/// Center of the ellipsoid after l integrator steps.
RigidBodyState flow_update_center(const StateEllipsoid& e, int l, double h,
                                  const InertiaModel& inertia,
                                  const PotentialModel& potential);

/// 6x6 Jacobian of one integrator step in the [zeta; dOmega] charts at the
/// current and the propagated center, by central differences with step
/// `delta` on each basis perturbation.
Matrix6 linearized_transition(const RigidBodyState& state, double h,
                              const InertiaModel& inertia,
                              const PotentialModel& potential,
                              double delta = 1e-6);

/// A P A^T, symmetrized. Throws NumericalError if the result is not
/// positive definite.
Matrix6 propagate_uncertainty(const Matrix6& p, const Matrix6& a);

/// Predicted ellipsoid after l steps: center by the integrator, P by l
/// congruences with the per-step Jacobians along the center trajectory.
StateEllipsoid flow_update(const StateEllipsoid& e, const FilterConfig& cfg,
                           const InertiaModel& inertia,
                           const PotentialModel& potential);

/// log(Rm^T Rf).
Vector3 relative_center_offset(const RotationMatrix& measurement_center,
                               const RotationMatrix& predicted_center);

/// Measurement and filtering half of a cycle. On an inconsistent fusion the
/// posterior equals `predicted` and `report.inconsistent` is set.
FilterStepReport measurement_update(const StateEllipsoid& predicted,
                                    const DirectionMeasurement& measurement,
                                    const FilterConfig& cfg);

/// flow_update followed by measurement_update.
FilterStepReport filter_step(const StateEllipsoid& prior,
                             const DirectionMeasurement& measurement,
                             const FilterConfig& cfg,
                             const InertiaModel& inertia,
                             const PotentialModel& potential);

std::pair<RotationMatrix, Vector3> point_estimate(const StateEllipsoid& e);

/// Sequential filter state. Split into predict/update so a caller can pick
/// the measurement direction from the predicted center.
class SetMembershipFilter {
 public:
  SetMembershipFilter(StateEllipsoid initial, InertiaModel inertia,
                      PotentialModel potential, FilterConfig cfg);

  const StateEllipsoid& estimate() const noexcept { return estimate_; }
  const FilterConfig& config() const noexcept { return cfg_; }

  /// Propagates the current estimate l steps and returns the prediction.
  /// The filter then waits for update().
  const StateEllipsoid& predict();

  /// Fuses a measurement taken at the predicted epoch.
  FilterStepReport update(const DirectionMeasurement& measurement);

 private:
  StateEllipsoid estimate_;
  StateEllipsoid prior_;
  InertiaModel inertia_;
  PotentialModel potential_;
  FilterConfig cfg_;
  bool predicted_ = false;
};

}  // namespace smatt
