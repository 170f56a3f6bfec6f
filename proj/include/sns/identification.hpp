#pragma once

#include <Eigen/Dense>

#include "sns/geometry.hpp"
#include "sns/model.hpp"

namespace sns {

struct IdentificationPolicy {
  int reference_h = 0;  // 0-based index of the coefficient matrix carrying the constraint
};

// Rotation Lambda in SO(p) such that b * Lambda has a lower-triangular top
// p x p block with nonnegative diagonal entries for l = 1..p-1. Built from an
// unpivoted QR of the transposed top block with column-sign normalization;
// det(Lambda) = +1 is enforced by flipping the last column, so the (p,p)
// entry of b * Lambda may be negative (reflection information retained).
// Throws numerical_error when the top block is rank deficient.
Rotation constraint_rotation(const Eigen::MatrixXd& b);

// True when the top p x p block of b is lower triangular (within tol,
// relative to the magnitude of b) with nonnegative diagonal for l < p.
bool satisfies_identification(const Eigen::MatrixXd& b, double tol = 1e-9);

// Remaps a draw to the identified parameterization: every B_h is
// post-multiplied by Lambda = constraint_rotation(B_ref), Sigma is unchanged,
// and each latent rotation is pre-multiplied by Lambda^T so the complete-data
// configurations Y_i R_i^T only rotate columns and the likelihood value is
// preserved.
ParamState identify_draw(const ParamState& state, const IdentificationPolicy& policy = {});

}  // namespace sns
