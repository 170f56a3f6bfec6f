#pragma once

#include <Eigen/Dense>
#include <vector>

#include "sns/geometry.hpp"

namespace sns {

struct DatasetItem {
  SizeAndShape shape;  // k x p
  Eigen::VectorXd z;   // d covariates
};

struct Dataset {
  std::vector<DatasetItem> items;

  int n() const { return static_cast<int>(items.size()); }
  int k() const { return items.empty() ? 0 : static_cast<int>(items.front().shape.y.rows()); }
  int p() const { return items.empty() ? 0 : static_cast<int>(items.front().shape.y.cols()); }
  int d() const { return items.empty() ? 0 : static_cast<int>(items.front().z.size()); }

  // n >= 1, shared dimensions, finite covariates.
  void validate() const;
};

// Conjugate prior set: per-column Gaussian (M_l, V_l) on the stacked
// coefficients and Inverse-Wishart (nu, Psi) on the landmark covariance.
// The Inverse-Wishart is scale-parameterized: mean = Psi / (nu - k - 1)
// for nu > k + 1. Positive definiteness is checked here, never at
// sampling time.
class Priors {
 public:
  static Priors create(std::vector<Eigen::VectorXd> m, std::vector<Eigen::MatrixXd> v,
                       double nu, Eigen::MatrixXd psi);

  int p() const { return static_cast<int>(m_.size()); }
  int kd() const { return static_cast<int>(m_.front().size()); }
  int k() const { return static_cast<int>(psi_.rows()); }

  const Eigen::VectorXd& m(int l) const { return m_.at(l); }
  const Eigen::MatrixXd& v(int l) const { return v_.at(l); }
  const Eigen::MatrixXd& v_inverse(int l) const { return v_inv_.at(l); }
  const Eigen::LLT<Eigen::MatrixXd>& v_llt(int l) const { return v_llt_.at(l); }
  double nu() const { return nu_; }
  const Eigen::MatrixXd& psi() const { return psi_; }

 private:
  Priors() = default;
  std::vector<Eigen::VectorXd> m_;
  std::vector<Eigen::MatrixXd> v_;
  std::vector<Eigen::MatrixXd> v_inv_;
  std::vector<Eigen::LLT<Eigen::MatrixXd>> v_llt_;
  double nu_ = 0.0;
  Eigen::MatrixXd psi_;
};

// M_l = 0, V_l = 1e6 I, nu = k + 1, Psi = I_k: the vague defaults used by
// the bundled simulation study.
Priors default_priors(int k, int p, int d, double v_scale = 1e6);

// Full MCMC state. Coefficients are stored as p stacked vectors beta_l of
// length k*d with entry (w*d + h) = B_h(w, l), the packing consistent with
// design_matrix below; the B_h matrices are views computed on demand.
// rotations are the latent alignments: the complete-data configuration of
// item i is X_i = Y_i * R_i^T, the same orientation decompose() reports.
struct ParamState {
  int k = 0;
  int d = 0;
  std::vector<Eigen::VectorXd> beta;  // p vectors, length k*d
  Eigen::MatrixXd sigma;              // k x k SPD
  std::vector<Rotation> rotations;    // n latent rotations

  int p() const { return static_cast<int>(beta.size()); }
  int n() const { return static_cast<int>(rotations.size()); }

  Eigen::MatrixXd coefficient_matrix(int h) const;  // B_h, k x p
  void set_coefficient_matrix(int h, const Eigen::MatrixXd& b);

  void validate() const;
};

// Design matrix Z_i = I_k (x) z^T, a k x (k*d) block-diagonal matrix with k
// copies of z^T.
Eigen::MatrixXd design_matrix(const Eigen::VectorXd& z, int k);

// mu = sum_h z_h B_h; column l equals design_matrix(z, k) * beta_l.
Eigen::MatrixXd mean_configuration(const ParamState& state, const Eigen::VectorXd& z);

// Complete-data configuration X_i = Y_i * R_i^T of one item.
Eigen::MatrixXd latent_configuration(const DatasetItem& item, const Rotation& rot);

// Sum over items and columns of the k-variate Gaussian log-density of the
// columns of Y_i R_i^T with mean Z_i beta_l and covariance Sigma.
double complete_data_loglik(const ParamState& state, const Dataset& data);

// |tr(Lambda^T mu^T Sigma^{-1} mu Lambda) - tr(mu^T Sigma^{-1} mu)|;
// identically zero in exact arithmetic for Lambda in SO(p).
double trace_invariance_check(const Eigen::MatrixXd& mu, const Eigen::MatrixXd& sigma,
                              const Rotation& lambda);

}  // namespace sns
