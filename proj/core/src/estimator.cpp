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

#include "smatt/estimator.hpp"

#include <Eigen/Cholesky>
#include <chrono>

#include "smatt/errors.hpp"

namespace smatt {
namespace {

Vector6 chart(const RigidBodyState& center, const RigidBodyState& s) {
  Vector6 x;
  x.head<3>() = log_so3(center.R.transpose() * s.R);
  x.tail<3>() = s.Omega - center.Omega;
  return x;
}

RigidBodyState perturb(const RigidBodyState& s, int axis, double amount) {
  RigidBodyState p = s;
  if (axis < 3) {
    p.R = s.R * exp_so3(amount * Vector3::Unit(axis));
  } else {
    p.Omega(axis - 3) += amount;
  }
  return p;
}

}  // namespace

void validate(const FilterConfig& cfg) {
  if (!(cfg.h > 0.0) || cfg.steps_between_measurements < 1 ||
      !(cfg.jacobian_step > 0.0)) {
    throw DomainError("filter config: need h > 0, l >= 1, jacobian step > 0");
  }
}

RigidBodyState center_state(const StateEllipsoid& e) {
  return RigidBodyState{e.R, e.Omega, e.t};
}

RigidBodyState flow_update_center(const StateEllipsoid& e, int l, double h,
                                  const InertiaModel& inertia,
                                  const PotentialModel& potential) {
  return propagate(center_state(e), l, h, inertia, potential);
}

Matrix6 linearized_transition(const RigidBodyState& state, double h,
                              const InertiaModel& inertia,
                              const PotentialModel& potential, double delta) {
  const RigidBodyState next = lgvi_step(state, h, inertia, potential);
  Matrix6 a;
  for (int i = 0; i < 6; ++i) {
    const Vector6 plus =
        chart(next, lgvi_step(perturb(state, i, delta), h, inertia, potential));
    const Vector6 minus =
        chart(next, lgvi_step(perturb(state, i, -delta), h, inertia, potential));
    a.col(i) = (plus - minus) / (2.0 * delta);
  }
  return a;
}

Matrix6 propagate_uncertainty(const Matrix6& p, const Matrix6& a) {
  Matrix6 out = a * p * a.transpose();
  out = 0.5 * (out + out.transpose());
  if (out.llt().info() != Eigen::Success) {
    throw NumericalError("propagate_uncertainty: result lost positive definiteness");
  }
  return out;
}

StateEllipsoid flow_update(const StateEllipsoid& e, const FilterConfig& cfg,
                           const InertiaModel& inertia,
                           const PotentialModel& potential) {
  validate(cfg);
  RigidBodyState center = center_state(e);
  Matrix6 p = e.P;
  for (int k = 0; k < cfg.steps_between_measurements; ++k) {
    const Matrix6 a =
        linearized_transition(center, cfg.h, inertia, potential, cfg.jacobian_step);
    p = propagate_uncertainty(p, a);
    center = lgvi_step(center, cfg.h, inertia, potential);
  }
  return StateEllipsoid{center.R, center.Omega, p, center.t};
}

Vector3 relative_center_offset(const RotationMatrix& measurement_center,
                               const RotationMatrix& predicted_center) {
  return log_so3(measurement_center.transpose() * predicted_center);
}

FilterStepReport measurement_update(const StateEllipsoid& predicted,
                                    const DirectionMeasurement& measurement,
                                    const FilterConfig& cfg) {
  validate(measurement);
  FilterStepReport report;
  report.prior = predicted;
  report.predicted = predicted;
  report.measurement = measurement;
  report.trace_prior = predicted.P.trace();
  report.trace_predicted = predicted.P.trace();

  const Vector3& b = measurement.b;
  const RotationMatrix alignment = alignment_rotation(b, measurement.e);
  const FiberAngle fiber = optimal_theta_circ(predicted.R, alignment, b);
  report.theta0 = fiber.theta;
  report.theta0_degenerate = fiber.degenerate;
  report.measurement_center = alignment * exp_so3(fiber.theta * b);
  report.measurement_shape =
      measurement_uncertainty(b, measurement.S, cfg.union_cover);
  report.center_offset =
      relative_center_offset(report.measurement_center, predicted.R);

  Vector6 x_mf = Vector6::Zero();
  x_mf.head<3>() = report.center_offset;
  try {
    const FusionResult fused = optimize_fusion_r(
        x_mf, predicted.P, report.measurement_shape, cfg.fusion);
    report.r_star = fused.r;
    report.beta = fused.beta;
    report.posterior.R =
        report.measurement_center * exp_so3(Vector3(fused.x.head<3>()));
    report.posterior.Omega = predicted.Omega + fused.x.tail<3>();
    report.posterior.P = fused.P;
    report.posterior.t = predicted.t;
  } catch (const InconsistentMeasurementError&) {
    report.inconsistent = true;
    report.posterior = predicted;
  }
  report.trace_posterior = report.posterior.P.trace();
  return report;
}

FilterStepReport filter_step(const StateEllipsoid& prior,
                             const DirectionMeasurement& measurement,
                             const FilterConfig& cfg,
                             const InertiaModel& inertia,
                             const PotentialModel& potential) {
  const auto start = std::chrono::steady_clock::now();
  const StateEllipsoid predicted = flow_update(prior, cfg, inertia, potential);
  FilterStepReport report = measurement_update(predicted, measurement, cfg);
  report.prior = prior;
  report.trace_prior = prior.P.trace();
  report.elapsed_seconds = std::chrono::duration<double>(
                               std::chrono::steady_clock::now() - start)
                               .count();
  return report;
}

std::pair<RotationMatrix, Vector3> point_estimate(const StateEllipsoid& e) {
  return {e.R, e.Omega};
}

SetMembershipFilter::SetMembershipFilter(StateEllipsoid initial,
                                         InertiaModel inertia,
                                         PotentialModel potential,
                                         FilterConfig cfg)
    : estimate_(std::move(initial)),
      prior_(estimate_),
      inertia_(std::move(inertia)),
      potential_(potential),
      cfg_(cfg) {
  validate(cfg_);
}

const StateEllipsoid& SetMembershipFilter::predict() {
  prior_ = estimate_;
  estimate_ = flow_update(prior_, cfg_, inertia_, potential_);
  predicted_ = true;
  return estimate_;
}

FilterStepReport SetMembershipFilter::update(
    const DirectionMeasurement& measurement) {
  if (!predicted_) {
    throw DomainError("SetMembershipFilter::update called without predict()");
  }
  FilterStepReport report = measurement_update(estimate_, measurement, cfg_);
  report.prior = prior_;
  report.trace_prior = prior_.P.trace();
  estimate_ = report.posterior;
  predicted_ = false;
  return report;
}

}  // namespace smatt
