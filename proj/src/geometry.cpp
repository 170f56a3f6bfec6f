#include "sns/geometry.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "sns/errors.hpp"
#include "sns/rng.hpp"

namespace sns {

Configuration Configuration::create(Eigen::MatrixXd coords) {
  const auto k1 = coords.rows();
  const auto p = coords.cols();
  if (p != 2 && p != 3) throw std::invalid_argument("Configuration: p must be 2 or 3");
  if (k1 < p + 1) throw std::invalid_argument("Configuration: need k >= p landmarks after Helmertization");
  if (!coords.allFinite()) throw std::invalid_argument("Configuration: non-finite coordinates");
  return Configuration{std::move(coords)};
}

bool is_rotation(const Eigen::MatrixXd& m, double tol) {
  if (m.rows() != m.cols() || m.rows() == 0) return false;
  const auto p = m.rows();
  const double ortho = (m.transpose() * m - Eigen::MatrixXd::Identity(p, p)).cwiseAbs().maxCoeff();
  return ortho <= tol && std::abs(m.determinant() - 1.0) <= tol;
}

Rotation Rotation::from_matrix(Eigen::MatrixXd m, double tol) {
  if (!is_rotation(m, tol)) throw std::invalid_argument("Rotation: matrix is not in SO(p)");
  return Rotation{std::move(m)};
}

Eigen::MatrixXd helmert_submatrix(int k) {
  if (k < 1) throw std::invalid_argument("helmert_submatrix: k must be >= 1");
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(k, k + 1);
  for (int j = 1; j <= k; ++j) {
    const double dj = 1.0 / std::sqrt(static_cast<double>(j) * (j + 1));
    for (int c = 0; c < j; ++c) h(j - 1, c) = -dj;
    h(j - 1, j) = j * dj;
  }
  return h;
}

PreForm helmertize(const Configuration& cfg) {
  const int k = static_cast<int>(cfg.coords.rows()) - 1;
  if (k < 1) throw std::invalid_argument("helmertize: configuration needs at least 2 landmarks");
  return PreForm{helmert_submatrix(k) * cfg.coords};
}

Decomposition decompose(const PreForm& pre) {
  const auto k = pre.coords.rows();
  const auto p = pre.coords.cols();
  if (k < p || p < 1) throw std::invalid_argument("decompose: pre-form must be k x p with k >= p");

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(pre.coords, Eigen::ComputeThinU | Eigen::ComputeThinV);
  Eigen::VectorXd s = svd.singularValues();
  if (s(p - 1) <= 1e-12 * s(0) || s(0) <= 0.0) {
    throw numerical_error("decompose: degenerate configuration (rank-deficient pre-form, rotation not unique)");
  }
  Eigen::MatrixXd u = svd.matrixU();
  Eigen::MatrixXd v = svd.matrixV();

  // The SVD column signs are arbitrary; fix them from U alone (largest-
  // magnitude entry positive) so Y = U * Delta is the same representative for
  // every rotated copy of the input.
  for (Eigen::Index j = 0; j < p; ++j) {
    Eigen::Index imax = 0;
    u.col(j).cwiseAbs().maxCoeff(&imax);
    if (u(imax, j) < 0.0) {
      u.col(j) *= -1.0;
      v.col(j) *= -1.0;
    }
  }
  // det(V) is orbit-invariant after the step above; pushing a negative
  // determinant into the last column keeps the rotation in SO(p) and retains
  // the reflection in Y.
  if (v.determinant() < 0.0) {
    u.col(p - 1) *= -1.0;
    v.col(p - 1) *= -1.0;
  }
  return Decomposition{SizeAndShape{u * s.asDiagonal(), std::move(s)}, Rotation{std::move(v)}};
}

Rotation rotation_from_angle(double theta) {
  const double t = wrap_angle_2pi(theta);
  Eigen::MatrixXd r(2, 2);
  const double c = std::cos(t);
  const double s = std::sin(t);
  r << c, -s, s, c;
  return Rotation{std::move(r)};
}

namespace {

Eigen::Matrix3d rot_z(double a) {
  Eigen::Matrix3d r;
  const double c = std::cos(a), s = std::sin(a);
  r << c, -s, 0.0, s, c, 0.0, 0.0, 0.0, 1.0;
  return r;
}

Eigen::Matrix3d rot_y(double a) {
  Eigen::Matrix3d r;
  const double c = std::cos(a), s = std::sin(a);
  r << c, 0.0, s, 0.0, 1.0, 0.0, -s, 0.0, c;
  return r;
}

}  // namespace

Rotation rotation_from_euler(double theta1, double theta2, double theta3) {
  double t1 = wrap_angle_2pi(theta1);
  double t2 = wrap_angle_2pi(theta2);
  double t3 = wrap_angle_2pi(theta3);
  if (t2 > M_PI) {
    // R_y(2pi - t2) = R_z(pi) R_y(t2) R_z(pi): fold into the canonical box.
    t2 = 2.0 * M_PI - t2;
    t1 = wrap_angle_2pi(t1 + M_PI);
    t3 = wrap_angle_2pi(t3 + M_PI);
  }
  return Rotation{rot_z(t1) * rot_y(t2) * rot_z(t3)};
}

EulerAngles euler_from_rotation(const Rotation& rot) {
  if (rot.r.rows() != 3 || rot.r.cols() != 3) {
    throw std::invalid_argument("euler_from_rotation: expected a 3x3 rotation");
  }
  const auto& r = rot.r;
  const double t2 = std::acos(std::clamp(r(2, 2), -1.0, 1.0));
  const double s2 = std::sin(t2);
  if (s2 > 1e-10) {
    return EulerAngles{wrap_angle_2pi(std::atan2(r(1, 2), r(0, 2))), t2,
                       wrap_angle_2pi(std::atan2(r(2, 1), -r(2, 0)))};
  }
  if (r(2, 2) > 0.0) {
    // theta2 = 0: R = R_z(t1 + t3); put everything into theta1.
    return EulerAngles{wrap_angle_2pi(std::atan2(r(1, 0), r(0, 0))), 0.0, 0.0};
  }
  // theta2 = pi: R = [[-cos(t1-t3), -sin(t1-t3), 0], [-sin(t1-t3), cos(t1-t3), 0],
  // [0, 0, -1]]; put the free angle into theta1 with theta3 = 0.
  return EulerAngles{wrap_angle_2pi(std::atan2(-r(1, 0), -r(0, 0))), M_PI, 0.0};
}

double ss_distance(const SizeAndShape& y1, const SizeAndShape& y2) {
  if (y1.y.rows() != y2.y.rows() || y1.y.cols() != y2.y.cols()) {
    throw std::invalid_argument("ss_distance: dimension mismatch");
  }
  const auto p = y1.y.cols();
  const Eigen::MatrixXd m = y2.y.transpose() * y1.y;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  // Optimal rotation V D U^T maximizes the alignment trace over SO(p);
  // evaluating the residual at the minimizer avoids the cancellation a
  // direct trace formula would suffer near zero distance.
  Eigen::MatrixXd d = Eigen::MatrixXd::Identity(p, p);
  if ((svd.matrixU() * svd.matrixV().transpose()).determinant() < 0.0) d(p - 1, p - 1) = -1.0;
  const Eigen::MatrixXd rstar = svd.matrixV() * d * svd.matrixU().transpose();
  return (y1.y * rstar - y2.y).norm();
}

}  // namespace sns
