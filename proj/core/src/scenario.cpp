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

#include "smatt/scenario.hpp"

#include <Eigen/Cholesky>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

#include <nlohmann/json.hpp>
#include "smatt/errors.hpp"
#include "smatt/measurement.hpp"

namespace smatt {
namespace {

using nlohmann::json;

constexpr double kDeg = std::numbers::pi / 180.0;
constexpr double kCatalogNormTol = 1e-3;
constexpr double kAttitudeMatrixTol = 1e-3;

const char* const kPaperSec5 = R"json({
  "name": "paper_sec5",
  "potential": "gravity_gradient",
  "inertia_diag": [1.0, 2.8, 2.0],
  "truth": {
    "attitude_matrix": [[0.707, -0.707, 0.0],
                        [0.707,  0.707, 0.0],
                        [0.0,    0.0,   1.0]],
    "angular_velocity": [2.32, 0.45, -0.59]
  },
  "estimate": {
    "attitude_axis_angle_deg": [0.0, 0.0, 0.0],
    "angular_velocity": [2.12, 0.55, -0.89]
  },
  "P0_diag": [2.28, 2.28, 2.28, 0.82, 0.82, 0.82],
  "catalog": [[1.0, 0.0, 0.0],
              [0.0, 1.0, 0.0],
              [0.0, 0.0, 1.0],
              [0.7071, 0.7071, 0.0],
              [-0.7071, 0.7071, 0.0],
              [0.5, 0.5, 0.7071],
              [-0.5, 0.5, 0.7071]],
  "noise": {"sigma_deg": 0.2, "shape_diag": [1.0, 1.0, 1.0]},
  "duration": 1.5707963267948966,
  "measurement_count": 20,
  "steps_between_measurements": 100,
  "seed": 1
}
)json";

const json& field(const json& j, const std::string& key,
                  const std::string& path) {
  if (!j.is_object() || !j.contains(key)) {
    throw ConfigError("missing field '" + path + key + "'");
  }
  return j.at(key);
}

double number(const json& j, const std::string& name) {
  if (!j.is_number()) throw ConfigError("field '" + name + "' must be a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ConfigError("field '" + name + "' is not finite");
  return v;
}

template <int N>
Eigen::Matrix<double, N, 1> vector_field(const json& j, const std::string& name) {
  if (!j.is_array() || j.size() != static_cast<std::size_t>(N)) {
    throw ConfigError("field '" + name + "' must be an array of " +
                      std::to_string(N) + " numbers");
  }
  Eigen::Matrix<double, N, 1> v;
  for (int i = 0; i < N; ++i) {
    v(i) = number(j[static_cast<std::size_t>(i)],
                  name + "[" + std::to_string(i) + "]");
  }
  return v;
}

RotationMatrix attitude_field(const json& body, const std::string& path) {
  if (body.contains("attitude_axis_angle_deg")) {
    return exp_so3(vector_field<3>(body.at("attitude_axis_angle_deg"),
                                   path + "attitude_axis_angle_deg") *
                   kDeg);
  }
  if (body.contains("attitude_matrix")) {
    const json& rows = body.at("attitude_matrix");
    const std::string name = path + "attitude_matrix";
    if (!rows.is_array() || rows.size() != 3) {
      throw ConfigError("field '" + name + "' must be a 3x3 array of rows");
    }
    Matrix3 m;
    for (int i = 0; i < 3; ++i) {
      m.row(i) = vector_field<3>(rows[static_cast<std::size_t>(i)],
                                 name + "[" + std::to_string(i) + "]")
                     .transpose();
    }
    const double ortho = (m.transpose() * m - Matrix3::Identity()).norm();
    if (ortho > kAttitudeMatrixTol || m.determinant() <= 0.0) {
      throw ConfigError("field '" + name + "' is not a rotation (||R^T R - I||_F = " +
                        std::to_string(ortho) + ")");
    }
    return project_to_so3(m);
  }
  throw ConfigError("field '" + path +
                    "' needs attitude_axis_angle_deg or attitude_matrix");
}

}  // namespace

Matrix3 ScenarioConfig::noise_shape() const {
  return (noise_sigma * noise_sigma * noise_shape_diag).asDiagonal();
}

Matrix6 ScenarioConfig::initial_P() const { return P0_diag.asDiagonal(); }

InertiaModel ScenarioConfig::inertia() const {
  return InertiaModel::diagonal(inertia_diag(0), inertia_diag(1),
                                inertia_diag(2));
}

FilterConfig ScenarioConfig::filter_config() const {
  FilterConfig f;
  f.h = step_size();
  f.steps_between_measurements = steps_between_measurements;
  return f;
}

StateEllipsoid ScenarioConfig::initial_estimate() const {
  return StateEllipsoid{estimate_R, estimate_Omega, initial_P(), 0.0};
}

RigidBodyState ScenarioConfig::initial_truth() const {
  return RigidBodyState{truth_R, truth_Omega, 0.0};
}

void validate(const ScenarioConfig& cfg) {
  if (!(cfg.inertia_diag.array() > 0.0).all()) {
    throw ConfigError("field 'inertia_diag' must be positive");
  }
  if (!(cfg.P0_diag.array() > 0.0).all()) {
    throw ConfigError("field 'P0_diag' must be positive (P0 SPD)");
  }
  if (cfg.catalog.empty()) {
    throw ConfigError("field 'catalog' must contain at least one direction");
  }
  for (std::size_t i = 0; i < cfg.catalog.size(); ++i) {
    if (std::abs(cfg.catalog[i].norm() - 1.0) > 1e-9) {
      throw ConfigError("field 'catalog[" + std::to_string(i) +
                        "]' is not a unit vector");
    }
  }
  if (!(cfg.noise_sigma > 0.0) || !(cfg.noise_shape_diag.array() > 0.0).all()) {
    throw ConfigError("field 'noise' must give a positive sigma and shape");
  }
  if (!(cfg.duration > 0.0)) {
    throw ConfigError("field 'duration' must be positive");
  }
  if (cfg.measurement_count < 1) {
    throw ConfigError("field 'measurement_count' must be >= 1");
  }
  if (cfg.steps_between_measurements < 1) {
    throw ConfigError("field 'steps_between_measurements' must be >= 1");
  }
  StateEllipsoid e = cfg.initial_estimate();
  StateMembership m;
  try {
    m = state_membership(e, cfg.truth_R, cfg.truth_Omega);
  } catch (const DomainError&) {
    throw ConfigError("fields 'truth'/'estimate': attitudes are antipodal");
  }
  if (!m.inside) {
    throw ConfigError(
        "fields 'truth'/'estimate'/'P0_diag': initial truth lies outside the "
        "initial ellipsoid (x0^T P0^-1 x0 = " +
        std::to_string(m.quadratic_form) + " > 1)");
  }
}

ScenarioConfig parse_config(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& err) {
    throw ConfigError(std::string("config parse error: ") + err.what());
  }
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");

  ScenarioConfig cfg;
  if (doc.contains("name")) {
    if (!doc.at("name").is_string()) throw ConfigError("field 'name' must be a string");
    cfg.name = doc.at("name").get<std::string>();
  }
  const json& potential = field(doc, "potential", "");
  const std::string pot = potential.is_string() ? potential.get<std::string>() : "";
  if (pot == "gravity_gradient") {
    cfg.potential = GravityGradient{};
  } else if (pot == "free_body") {
    cfg.potential = FreeBody{};
  } else {
    throw ConfigError("field 'potential' must be \"gravity_gradient\" or \"free_body\"");
  }
  cfg.inertia_diag = vector_field<3>(field(doc, "inertia_diag", ""), "inertia_diag");

  const json& truth = field(doc, "truth", "");
  cfg.truth_R = attitude_field(truth, "truth.");
  cfg.truth_Omega = vector_field<3>(field(truth, "angular_velocity", "truth."),
                                    "truth.angular_velocity");
  const json& estimate = field(doc, "estimate", "");
  cfg.estimate_R = attitude_field(estimate, "estimate.");
  cfg.estimate_Omega = vector_field<3>(
      field(estimate, "angular_velocity", "estimate."), "estimate.angular_velocity");
  cfg.P0_diag = vector_field<6>(field(doc, "P0_diag", ""), "P0_diag");

  const json& catalog = field(doc, "catalog", "");
  if (!catalog.is_array()) throw ConfigError("field 'catalog' must be an array");
  for (std::size_t i = 0; i < catalog.size(); ++i) {
    const std::string name = "catalog[" + std::to_string(i) + "]";
    Vector3 e = vector_field<3>(catalog[i], name);
    if (std::abs(e.norm() - 1.0) > kCatalogNormTol) {
      throw ConfigError("field '" + name + "' is not a unit vector (norm " +
                        std::to_string(e.norm()) + ")");
    }
    cfg.catalog.push_back(e / e.norm());
  }

  const json& noise = field(doc, "noise", "");
  cfg.noise_sigma = number(field(noise, "sigma_deg", "noise."), "noise.sigma_deg") * kDeg;
  if (noise.contains("exact")) {
    if (!noise.at("exact").is_boolean()) {
      throw ConfigError("field 'noise.exact' must be a boolean");
    }
    cfg.exact_measurements = noise.at("exact").get<bool>();
  }
  if (noise.contains("shape_diag")) {
    cfg.noise_shape_diag = vector_field<3>(noise.at("shape_diag"), "noise.shape_diag");
  }

  cfg.duration = number(field(doc, "duration", ""), "duration");
  const auto integer = [&](const char* key) {
    const json& v = field(doc, key, "");
    if (!v.is_number_integer()) {
      throw ConfigError(std::string("field '") + key + "' must be an integer");
    }
    return v;
  };
  cfg.measurement_count = integer("measurement_count").get<int>();
  cfg.steps_between_measurements = integer("steps_between_measurements").get<int>();
  if (doc.contains("seed")) {
    if (!doc.at("seed").is_number_unsigned()) {
      throw ConfigError("field 'seed' must be a non-negative integer");
    }
    cfg.seed = doc.at("seed").get<std::uint64_t>();
  }
  validate(cfg);
  return cfg;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

const std::string& paper_sec5_json() {
  static const std::string text(kPaperSec5);
  return text;
}

ScenarioConfig paper_sec5_config() { return parse_config(paper_sec5_json()); }

Vector3 sample_bounded_noise(const Matrix3& s, std::mt19937_64& rng) {
  const Eigen::LLT<Matrix3> llt(s);
  if (llt.info() != Eigen::Success) {
    throw DomainError("sample_bounded_noise: S must be positive definite");
  }
  const Matrix3 l = llt.matrixL();
  std::normal_distribution<double> normal(0.0, 1.0);
  for (;;) {
    const Vector3 y(normal(rng), normal(rng), normal(rng));
    // nu = L y / 3 has covariance S / 9 and nu^T S^{-1} nu = |y|^2 / 9.
    if (y.squaredNorm() <= 9.0) return l * y / 3.0;
  }
}

Vector3 sample_bounded_noise(const Matrix3& s, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return sample_bounded_noise(s, rng);
}

DirectionChoice select_direction(const RotationMatrix& predicted_center,
                                 const std::vector<Vector3>& catalog) {
  if (catalog.empty()) {
    throw DomainError("select_direction: empty catalog");
  }
  DirectionChoice best;
  double best_score = -1.0;
  for (std::size_t j = 0; j < catalog.size(); ++j) {
    const Vector3& e = catalog[j];
    const double score =
        (predicted_center.transpose() * e).cross(e).norm();
    if (score > best_score) {
      best_score = score;
      best.index = static_cast<int>(j);
      best.e = e;
    }
  }
  if (best_score < 1e-6) {
    throw DegenerateGeometryError(
        "select_direction: every catalog direction is colinear with its "
        "predicted body-frame image");
  }
  return best;
}

std::vector<TraceRecord> run_scenario(const ScenarioConfig& cfg,
                                      std::vector<FilterStepReport>* reports) {
  validate(cfg);
  const InertiaModel inertia = cfg.inertia();
  const FilterConfig fcfg = cfg.filter_config();
  const Matrix3 s = cfg.noise_shape();
  std::mt19937_64 rng(cfg.seed);

  RigidBodyState truth = cfg.initial_truth();
  SetMembershipFilter filter(cfg.initial_estimate(), inertia, cfg.potential, fcfg);

  auto record = [&](int k, const StateEllipsoid& est) {
    TraceRecord r;
    r.k = k;
    r.t = truth.t;
    const RotationMatrix est_R = est.R;
    r.att_err_deg = geodesic_angle(est_R, truth.R) * 180.0 / std::numbers::pi;
    r.rate_err = (est.Omega - truth.Omega).norm();
    r.trace_P = est.P.trace();
    try {
      r.membership = state_membership(est, truth.R, truth.Omega).inside;
    } catch (const DomainError&) {
      r.membership = false;
    }
    r.truth_R = truth.R.matrix();
    r.truth_Omega = truth.Omega;
    r.estimate_R = est.R.matrix();
    r.estimate_Omega = est.Omega;
    return r;
  };

  std::vector<TraceRecord> records;
  records.reserve(static_cast<std::size_t>(cfg.measurement_count) + 1);
  records.push_back(record(0, filter.estimate()));

  for (int k = 1; k <= cfg.measurement_count; ++k) {
    const StateEllipsoid& predicted = filter.predict();
    truth = propagate(truth, cfg.steps_between_measurements, fcfg.h, inertia,
                      cfg.potential);

    const DirectionChoice dir = select_direction(predicted.R, cfg.catalog);
    const Vector3 b_true = truth.R.transpose() * dir.e;
    const Vector3 nu =
        cfg.exact_measurements ? Vector3::Zero() : sample_bounded_noise(s, rng);
    DirectionMeasurement meas{dir.e, apply_measurement_noise(b_true, nu), s};

    const FilterStepReport report = filter.update(meas);
    TraceRecord r = record(k, filter.estimate());
    r.dir_idx = dir.index;
    r.theta0 = report.theta0;
    r.r_star = report.r_star;
    r.beta_flag = report.inconsistent;
    records.push_back(r);
    if (reports != nullptr) reports->push_back(report);
  }
  return records;
}

}  // namespace smatt
