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

#include "smatt/ellipsoid.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "smatt/errors.hpp"

namespace smatt {
namespace {

constexpr double kInvPhi = 0.6180339887498949;  // 1 / golden ratio
constexpr double kContainmentTol = -1e-9;

// Maximizes a unimodal f on [a, b]. Stops early once f exceeds `good_enough`.
template <typename F>
std::pair<double, double> golden_section_max(F&& f, double a, double b,
                                             double tol, double good_enough) {
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  while (b - a > tol) {
    if (std::max(f1, f2) > good_enough) break;
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = f(x1);
    }
  }
  return f1 >= f2 ? std::pair{x1, f1} : std::pair{x2, f2};
}

std::vector<double> log_space(double lo, double hi, int n) {
  std::vector<double> v(static_cast<std::size_t>(n));
  const double a = std::log(lo);
  const double b = std::log(hi);
  for (int i = 0; i < n; ++i) {
    v[static_cast<std::size_t>(i)] =
        n == 1 ? lo : std::exp(a + (b - a) * i / (n - 1));
  }
  return v;
}

}  // namespace

Ellipsoid::Ellipsoid(Eigen::VectorXd center, Eigen::MatrixXd shape)
    : center_(std::move(center)), shape_(std::move(shape)) {
  const auto n = center_.size();
  if (n == 0 || shape_.rows() != n || shape_.cols() != n) {
    throw DomainError("ellipsoid: center/shape dimension mismatch");
  }
  if (!center_.allFinite() || !shape_.allFinite()) {
    throw DomainError("ellipsoid: non-finite entries");
  }
  const double scale = std::max(1.0, shape_.cwiseAbs().maxCoeff());
  if ((shape_ - shape_.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw DomainError("ellipsoid: shape matrix is not symmetric");
  }
  Eigen::LLT<Eigen::MatrixXd> llt(shape_);
  if (llt.info() != Eigen::Success) {
    throw DomainError("ellipsoid: shape matrix is not positive definite");
  }
}

Ellipsoid::Ellipsoid(Eigen::MatrixXd shape)
    : Ellipsoid(Eigen::VectorXd::Zero(shape.rows()), Eigen::MatrixXd(shape)) {}

double Ellipsoid::quadratic_form(const Eigen::VectorXd& x) const {
  if (x.size() != dim()) {
    throw DomainError("ellipsoid: point dimension mismatch");
  }
  const Eigen::VectorXd d = x - center_;
  return d.dot(shape_.llt().solve(d));
}

Matrix36 attitude_selector() {
  Matrix36 h = Matrix36::Zero();
  h.leftCols<3>().setIdentity();
  return h;
}

bool DegenerateStrip::contains(const Vector6& x, double slack) const {
  const Vector3 z = x.head<3>();
  return z.dot(P.llt().solve(z)) <= 1.0 + slack;
}

bool contains_point(const Ellipsoid& e, const Eigen::VectorXd& x) {
  return e.quadratic_form(x) <= 1.0 + kMembershipSlack;
}

StateMembership state_membership(const StateEllipsoid& e,
                                 const RotationMatrix& r,
                                 const Vector3& omega) {
  StateMembership m;
  m.x.head<3>() = log_so3(e.R.transpose() * r);
  m.x.tail<3>() = omega - e.Omega;
  m.quadratic_form = m.x.dot(e.P.llt().solve(m.x));
  m.inside = m.quadratic_form <= 1.0 + kMembershipSlack;
  return m;
}

Eigen::VectorXd sample_in_ellipsoid(const Ellipsoid& e, std::mt19937_64& rng) {
  const auto n = e.dim();
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  Eigen::VectorXd y(n);
  double norm = 0.0;
  do {
    for (Eigen::Index i = 0; i < n; ++i) y(i) = normal(rng);
    norm = y.norm();
  } while (norm == 0.0);
  const double radius = std::pow(uniform(rng), 1.0 / static_cast<double>(n));
  const Eigen::MatrixXd l = e.shape().llt().matrixL();
  return e.center() + l * (y * (radius / norm));
}

Eigen::VectorXd sample_in_ellipsoid(const Ellipsoid& e, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return sample_in_ellipsoid(e, rng);
}

Eigen::VectorXd sample_on_boundary(const Ellipsoid& e, std::mt19937_64& rng) {
  const auto n = e.dim();
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXd y(n);
  double norm = 0.0;
  do {
    for (Eigen::Index i = 0; i < n; ++i) y(i) = normal(rng);
    norm = y.norm();
  } while (norm == 0.0);
  const Eigen::MatrixXd l = e.shape().llt().matrixL();
  return e.center() + l * (y / norm);
}

Eigen::MatrixXd symmetrize(const Eigen::MatrixXd& p) {
  return 0.5 * (p + p.transpose());
}

Eigen::MatrixXd minkowski_sum_cover(const Eigen::MatrixXd& q1,
                                    const Eigen::MatrixXd& q2) {
  if (q1.rows() != q1.cols() || q2.rows() != q2.cols() ||
      q1.rows() != q2.rows()) {
    throw DomainError("minkowski_sum_cover: dimension mismatch");
  }
  const double t1 = q1.trace();
  const double t2 = q2.trace();
  if (!(t1 > 0.0) || !(t2 > 0.0)) {
    throw DomainError("minkowski_sum_cover: shape matrices need positive trace");
  }
  const double q = std::sqrt(t1 / t2);
  return symmetrize((1.0 + 1.0 / q) * q1 + (1.0 + q) * q2);
}

ContainmentCertificate containment_certificate(const Ellipsoid& outer,
                                               const Ellipsoid& inner) {
  const auto n = outer.dim();
  if (inner.dim() != n) {
    throw DomainError("contains_ellipsoid: dimension mismatch");
  }
  // Work in coordinates where the inner set is the unit ball,
  // x = c_in + L y with P_in = L L^T. Congruence keeps semidefiniteness.
  const Eigen::MatrixXd l = inner.shape().llt().matrixL();
  const Eigen::VectorXd d = inner.center() - outer.center();
  const auto outer_llt = outer.shape().llt();
  const Eigen::MatrixXd ql = outer_llt.solve(l);
  const Eigen::VectorXd qd = outer_llt.solve(d);

  Eigen::MatrixXd m_out(n + 1, n + 1);
  m_out.topLeftCorner(n, n) = symmetrize(l.transpose() * ql);
  m_out.topRightCorner(n, 1) = l.transpose() * qd;
  m_out.bottomLeftCorner(1, n) = m_out.topRightCorner(n, 1).transpose();
  m_out(n, n) = d.dot(qd) - 1.0;

  Eigen::MatrixXd m_in = Eigen::MatrixXd::Identity(n + 1, n + 1);
  m_in(n, n) = -1.0;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig;
  auto min_eig = [&](double log_lambda) {
    eig.compute(std::exp(log_lambda) * m_in - m_out, Eigen::EigenvaluesOnly);
    return eig.eigenvalues()(0);
  };
  const auto [best_log, best_value] = golden_section_max(
      min_eig, std::log(1e-6), std::log(1e6), 1e-13, 0.0);

  ContainmentCertificate cert;
  cert.lambda = std::exp(best_log);
  cert.min_eigenvalue = best_value;
  cert.contained = best_value > kContainmentTol;
  return cert;
}

bool contains_ellipsoid(const Ellipsoid& outer, const Ellipsoid& inner) {
  return containment_certificate(outer, inner).contained;
}

Matrix3 union_cover_symmetric(const Vector3& b, const Matrix3& p0, double kappa,
                              const UnionCoverOptions& options) {
  if (std::abs(b.norm() - 1.0) > 1e-9) {
    throw DomainError("union_cover_symmetric: direction must be unit length");
  }
  if (!(kappa > 0.0)) {
    throw DomainError("union_cover_symmetric: offset must be positive");
  }
  const Matrix3 p0s = 0.5 * (p0 + p0.transpose());
  const Ellipsoid plus(Eigen::VectorXd(kappa * b), Eigen::MatrixXd(p0s));
  const Ellipsoid minus(Eigen::VectorXd(-kappa * b), Eigen::MatrixXd(p0s));
  const Matrix3 bbt = b * b.transpose();

  Eigen::SelfAdjointEigenSolver<Matrix3> p0_eig(p0s, Eigen::EigenvaluesOnly);
  const double radius = std::sqrt(p0_eig.eigenvalues().maxCoeff());
  const std::vector<double> alphas =
      log_space(options.alpha_min, options.alpha_max, options.grid_points);
  const std::vector<double> betas = log_space(
      kappa * kappa, 4.0 * (kappa + radius) * (kappa + radius),
      options.grid_points);

  auto candidate = [&](double alpha, double beta) -> Matrix3 {
    return alpha * p0s + beta * bbt;
  };
  // The family is centrally symmetric, so covering one offset set covers the
  // mirrored one as well; both are checked on the final answer. Candidates
  // need a nonnegative certificate: the round-off allowance of
  // contains_ellipsoid would otherwise be spent by the bisection below.
  auto certified = [&](double alpha, double beta) {
    return containment_certificate(
               Ellipsoid(Eigen::MatrixXd(candidate(alpha, beta))), plus)
               .min_eigenvalue >= 0.0;
  };

  struct Cell {
    std::size_t i;
    std::size_t j;
    double trace;
  };
  std::vector<Cell> cells;
  cells.reserve(alphas.size() * betas.size());
  const double p0_trace = p0s.trace();
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    for (std::size_t j = 0; j < betas.size(); ++j) {
      cells.push_back({i, j, alphas[i] * p0_trace + betas[j]});
    }
  }
  std::stable_sort(cells.begin(), cells.end(),
                   [](const Cell& a, const Cell& c) { return a.trace < c.trace; });

  const Cell* best = nullptr;
  for (const Cell& c : cells) {
    if (certified(alphas[c.i], betas[c.j])) {
      best = &c;
      break;
    }
  }
  if (best == nullptr) {
    throw ConvergenceError(
        "union_cover_symmetric: no certified candidate in the search family",
        0.0);
  }

  // Containment is monotone in both alpha and beta; bisect each toward the
  // uncertified lower grid neighbour.
  double alpha = alphas[best->i];
  double beta = betas[best->j];
  if (best->j > 0) {
    double lo = betas[best->j - 1];
    for (int it = 0; it < options.refinement_iterations; ++it) {
      const double mid = 0.5 * (lo + beta);
      (certified(alpha, mid) ? beta : lo) = mid;
    }
  }
  if (best->i > 0) {
    double lo = alphas[best->i - 1];
    for (int it = 0; it < options.refinement_iterations; ++it) {
      const double mid = 0.5 * (lo + alpha);
      (certified(mid, beta) ? alpha : lo) = mid;
    }
  }

  const Matrix3 result = candidate(alpha, beta);
  const Ellipsoid cover{Eigen::MatrixXd(result)};
  if (!contains_ellipsoid(cover, plus) || !contains_ellipsoid(cover, minus)) {
    throw ConvergenceError("union_cover_symmetric: final cover not certified",
                           0.0);
  }
  return result;
}

FusionResult fuse_intersection(const Vector6& x_mf, const Matrix6& pf,
                               const Matrix3& pm, double r) {
  if (!(r > 0.0) || !std::isfinite(r)) {
    throw DomainError("fuse_intersection: r must be positive and finite");
  }
  const Matrix36 h = attitude_selector();
  const Matrix3 k = h * pf * h.transpose() + pm / r;
  const auto k_lu = k.partialPivLu();
  const Vector3 innovation = h * x_mf;

  FusionResult out;
  out.r = r;
  out.L = pf * h.transpose() * k_lu.inverse();
  out.beta = 1.0 + r - innovation.dot(k_lu.solve(innovation));
  if (!(out.beta > 0.0)) {
    throw InconsistentMeasurementError(
        "fuse_intersection: empty intersection under model (beta = " +
        std::to_string(out.beta) + ")");
  }
  const Matrix6 a = Matrix6::Identity() - out.L * h;
  out.x = a * x_mf;
  const Matrix6 p = out.beta * (a * pf * a.transpose() +
                                out.L * pm * out.L.transpose() / r);
  out.P = 0.5 * (p + p.transpose());
  return out;
}

FusionResult optimize_fusion_r(const Vector6& x_mf, const Matrix6& pf,
                               const Matrix3& pm,
                               const FusionSearchOptions& options) {
  const std::vector<double> grid =
      log_space(options.r_min, options.r_max, options.scan_points);
  auto trace_at = [&](double r) {
    try {
      return fuse_intersection(x_mf, pf, pm, r).P.trace();
    } catch (const InconsistentMeasurementError&) {
      return std::numeric_limits<double>::infinity();
    }
  };

  std::size_t best = 0;
  double best_trace = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double tr = trace_at(grid[i]);
    if (tr < best_trace) {
      best_trace = tr;
      best = i;
    }
  }
  if (!std::isfinite(best_trace)) {
    throw InconsistentMeasurementError(
        "optimize_fusion_r: beta(r) <= 0 over the whole r bracket");
  }

  const double lo = std::log(grid[best == 0 ? 0 : best - 1]);
  const double hi = std::log(grid[std::min(best + 1, grid.size() - 1)]);
  double r_star = grid[best];
  if (hi > lo) {
    const auto [log_r, neg_trace] = golden_section_max(
        [&](double s) { return -trace_at(std::exp(s)); }, lo, hi,
        options.log_tolerance, std::numeric_limits<double>::infinity());
    if (-neg_trace < best_trace) r_star = std::exp(log_r);
  }
  return fuse_intersection(x_mf, pf, pm, r_star);
}

}  // namespace smatt
