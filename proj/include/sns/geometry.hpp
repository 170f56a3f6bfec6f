#pragma once

#include <Eigen/Dense>

namespace sns {

// Raw landmark coordinates for one object: (k+1) landmarks in dimension p.
struct Configuration {
  Eigen::MatrixXd coords;  // (k+1) x p

  // Validates finiteness, p in {2,3} and k >= p.
  static Configuration create(Eigen::MatrixXd coords);
};

// Helmertized configuration: translation removed, k x p.
struct PreForm {
  Eigen::MatrixXd coords;  // k x p
};

// Rotation-free data object Y = U * Delta from the SVD of a pre-form.
struct SizeAndShape {
  Eigen::MatrixXd y;                // k x p
  Eigen::VectorXd singular_values;  // length p, nonincreasing, >= 0
};

struct Rotation {
  Eigen::MatrixXd r;  // p x p, in SO(p)

  static Rotation from_matrix(Eigen::MatrixXd m, double tol = 1e-10);
};

bool is_rotation(const Eigen::MatrixXd& m, double tol = 1e-10);

// k x (k+1) Helmert submatrix: row j has j entries -d_j, then j*d_j, then
// zeros, with d_j = 1/sqrt(j*(j+1)). Rows are orthonormal and each sums to 0.
Eigen::MatrixXd helmert_submatrix(int k);

PreForm helmertize(const Configuration& cfg);

struct Decomposition {
  SizeAndShape shape;
  Rotation rotation;  // pre.coords == shape.y * rotation.r^T
};

// SVD split of a pre-form into size-and-shape and an SO(p) rotation. When the
// raw SVD has det(V) = -1 the last columns of U and V are negated, so the
// rotation lands in SO(p) and any reflection stays in Y.
// Throws numerical_error when the smallest singular value is below
// 1e-12 times the largest (rotation not unique).
Decomposition decompose(const PreForm& pre);

// 2x2 rotation by theta (wrapped mod 2*pi).
Rotation rotation_from_angle(double theta);

// Z-Y-Z composition R_z(t1) * R_y(t2) * R_z(t3). Angles outside
// [0,2pi) x [0,pi) x [0,2pi) are canonicalized to an equivalent in-range
// triple before evaluation.
Rotation rotation_from_euler(double theta1, double theta2, double theta3);

struct EulerAngles {
  double theta1;  // [0, 2*pi)
  double theta2;  // [0, pi]
  double theta3;  // [0, 2*pi)
};

// Inverse of rotation_from_euler up to gimbal aliasing: the returned triple
// always reproduces the input matrix.
EulerAngles euler_from_rotation(const Rotation& rot);

// Riemannian size-and-shape distance: min over R in SO(p) of
// ||y1 * R - y2||_F, in closed form from the SVD of y2^T * y1 with
// determinant-sign correction.
double ss_distance(const SizeAndShape& y1, const SizeAndShape& y2);

}  // namespace sns
