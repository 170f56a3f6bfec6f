#include "sns/identification.hpp"

#include <cmath>
#include <stdexcept>

#include "sns/errors.hpp"

namespace sns {

Rotation constraint_rotation(const Eigen::MatrixXd& b) {
  const auto k = b.rows();
  const auto p = b.cols();
  if (k < p || p < 1) throw std::invalid_argument("constraint_rotation: b must be k x p with k >= p");

  const Eigen::MatrixXd top = b.topRows(p);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(top.transpose());
  Eigen::MatrixXd q = qr.householderQ();
  const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();

  const double scale = std::max(top.norm(), 1e-300);
  for (int j = 0; j < p; ++j) {
    if (std::abs(r(j, j)) <= 1e-12 * scale) {
      throw numerical_error("constraint_rotation: degenerate constraint (rank-deficient top block)");
    }
    if (r(j, j) < 0.0) q.col(j) *= -1.0;
  }
  if (q.determinant() < 0.0) q.col(p - 1) *= -1.0;
  return Rotation{std::move(q)};
}

bool satisfies_identification(const Eigen::MatrixXd& b, double tol) {
  const auto p = b.cols();
  const double scaled = tol * std::max(1.0, b.cwiseAbs().maxCoeff());
  for (int w = 0; w < p; ++w) {
    for (int l = w + 1; l < p; ++l) {
      if (std::abs(b(w, l)) > scaled) return false;
    }
  }
  for (int l = 0; l + 1 < p; ++l) {
    if (b(l, l) < -scaled) return false;
  }
  return true;
}

ParamState identify_draw(const ParamState& state, const IdentificationPolicy& policy) {
  if (policy.reference_h < 0 || policy.reference_h >= state.d) {
    throw std::invalid_argument("identify_draw: reference_h out of range");
  }
  const Rotation lambda = constraint_rotation(state.coefficient_matrix(policy.reference_h));

  ParamState out = state;
  for (int h = 0; h < state.d; ++h) {
    out.set_coefficient_matrix(h, state.coefficient_matrix(h) * lambda.r);
  }
  for (auto& rot : out.rotations) rot.r = lambda.r.transpose() * rot.r;
  return out;
}

}  // namespace sns
