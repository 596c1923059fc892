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

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "smatt/ellipsoid.hpp"
#include "smatt/estimator.hpp"
#include "smatt/rigid_body.hpp"

namespace smatt {

/// A complete simulation setup: truth, initial estimate, measurement catalog
/// and time grid. Angles are stored in radians; the file format uses degrees.
struct ScenarioConfig {
  std::string name = "scenario";
  Vector3 inertia_diag = Vector3(1.0, 2.8, 2.0);
  PotentialModel potential = GravityGradient{};

  RotationMatrix truth_R;
  Vector3 truth_Omega = Vector3::Zero();
  RotationMatrix estimate_R;
  Vector3 estimate_Omega = Vector3::Zero();
  Vector6 P0_diag = Vector6::Ones();

  std::vector<Vector3> catalog;  // unit reference directions
  double noise_sigma = 0.0;      // rad
  Vector3 noise_shape_diag = Vector3::Ones();
  bool exact_measurements = false;  // filter still assumes the bound S

  double duration = 0.0;
  int measurement_count = 0;
  int steps_between_measurements = 1;
  std::uint64_t seed = 0;

  double step_size() const {
    return duration / (static_cast<double>(measurement_count) *
                       steps_between_measurements);
  }
  Matrix3 noise_shape() const;
  Matrix6 initial_P() const;
  InertiaModel inertia() const;
  FilterConfig filter_config() const;
  StateEllipsoid initial_estimate() const;
  RigidBodyState initial_truth() const;
};

/// Throws ConfigError naming the offending field.
void validate(const ScenarioConfig& cfg);

/// Parses the JSON document, normalizing catalog columns that are within
/// 1e-3 of unit length, and validates. Throws ConfigError.
ScenarioConfig parse_config(const std::string& json_text);
ScenarioConfig load_config(const std::filesystem::path& path);

/// JSON text of the bundled `paper_sec5` scenario.
const std::string& paper_sec5_json();
ScenarioConfig paper_sec5_config();

/// Zero-mean normal draw with covariance S/9, resampled until
/// nu^T S^{-1} nu <= 1.
Vector3 sample_bounded_noise(const Matrix3& s, std::mt19937_64& rng);
Vector3 sample_bounded_noise(const Matrix3& s, std::uint64_t seed);

struct DirectionChoice {
  int index = -1;
  Vector3 e = Vector3::Zero();
};

/// Catalog column maximizing ||(R^T e_j) x e_j||, lowest index on ties.
/// Throws DegenerateGeometryError when the best score is below 1e-6.
DirectionChoice select_direction(const RotationMatrix& predicted_center,
                                 const std::vector<Vector3>& catalog);

/// One row of the simulation trace (k counts measurement instants; k = 0 is
/// the initial condition).
struct TraceRecord {
  int k = 0;
  double t = 0.0;
  double att_err_deg = 0.0;
  double rate_err = 0.0;
  double trace_P = 0.0;
  bool membership = false;
  int dir_idx = -1;
  double theta0 = 0.0;
  double r_star = 0.0;
  bool beta_flag = false;
  Matrix3 truth_R = Matrix3::Identity();
  Vector3 truth_Omega = Vector3::Zero();
  Matrix3 estimate_R = Matrix3::Identity();
  Vector3 estimate_Omega = Vector3::Zero();
};

/// Runs truth and filter side by side. When `reports` is given, the filter's
/// per-update reports are appended to it.
std::vector<TraceRecord> run_scenario(
    const ScenarioConfig& cfg, std::vector<FilterStepReport>* reports = nullptr);

}  // namespace smatt
