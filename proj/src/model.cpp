#include "sns/model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "sns/errors.hpp"

namespace sns {

namespace {

void check_spd(const Eigen::MatrixXd& m, const char* what) {
  if (m.rows() != m.cols()) throw std::invalid_argument(std::string(what) + ": not square");
  if (!m.allFinite()) throw std::invalid_argument(std::string(what) + ": non-finite entries");
  const double scale = m.cwiseAbs().maxCoeff();
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-10 * std::max(scale, 1.0)) {
    throw std::invalid_argument(std::string(what) + ": not symmetric");
  }
  Eigen::LLT<Eigen::MatrixXd> llt(m);
  if (llt.info() != Eigen::Success) {
    throw std::invalid_argument(std::string(what) + ": not positive definite (Cholesky failed)");
  }
}

}  // namespace

void Dataset::validate() const {
  if (items.empty()) throw std::invalid_argument("Dataset: need at least one item");
  const auto k0 = items.front().shape.y.rows();
  const auto p0 = items.front().shape.y.cols();
  const auto d0 = items.front().z.size();
  if (k0 < p0 || p0 < 1) throw std::invalid_argument("Dataset: items must be k x p with k >= p");
  if (d0 < 1) throw std::invalid_argument("Dataset: empty covariate vector");
  for (std::size_t i = 0; i < items.size(); ++i) {
    const auto& it = items[i];
    if (it.shape.y.rows() != k0 || it.shape.y.cols() != p0 || it.z.size() != d0) {
      throw std::invalid_argument("Dataset: inconsistent dimensions at item " + std::to_string(i));
    }
    if (!it.shape.y.allFinite() || !it.z.allFinite()) {
      throw std::invalid_argument("Dataset: non-finite values at item " + std::to_string(i));
    }
  }
}

Priors Priors::create(std::vector<Eigen::VectorXd> m, std::vector<Eigen::MatrixXd> v,
                      double nu, Eigen::MatrixXd psi) {
  if (m.empty() || m.size() != v.size()) {
    throw std::invalid_argument("Priors: need one (M_l, V_l) pair per coordinate column");
  }
  check_spd(psi, "Priors: Psi");
  const int k = static_cast<int>(psi.rows());
  if (!(nu > k - 1)) throw std::invalid_argument("Priors: nu must exceed k - 1");

  Priors pr;
  const auto kd = m.front().size();
  for (std::size_t l = 0; l < m.size(); ++l) {
    if (m[l].size() != kd || !m[l].allFinite()) {
      throw std::invalid_argument("Priors: bad mean vector for column " + std::to_string(l + 1));
    }
    check_spd(v[l], "Priors: V_l");
    if (v[l].rows() != kd) {
      throw std::invalid_argument("Priors: V_l dimension mismatch at column " + std::to_string(l + 1));
    }
    Eigen::LLT<Eigen::MatrixXd> llt(v[l]);
    pr.v_inv_.push_back(llt.solve(Eigen::MatrixXd::Identity(kd, kd)));
    pr.v_llt_.push_back(std::move(llt));
  }
  pr.m_ = std::move(m);
  pr.v_ = std::move(v);
  pr.nu_ = nu;
  pr.psi_ = std::move(psi);
  return pr;
}

Priors default_priors(int k, int p, int d, double v_scale) {
  if (k < 1 || p < 1 || d < 1) throw std::invalid_argument("default_priors: bad dimensions");
  std::vector<Eigen::VectorXd> m(p, Eigen::VectorXd::Zero(k * d));
  std::vector<Eigen::MatrixXd> v(p, v_scale * Eigen::MatrixXd::Identity(k * d, k * d));
  return Priors::create(std::move(m), std::move(v), k + 1.0, Eigen::MatrixXd::Identity(k, k));
}

Eigen::MatrixXd ParamState::coefficient_matrix(int h) const {
  if (h < 0 || h >= d) throw std::invalid_argument("coefficient_matrix: covariate index out of range");
  Eigen::MatrixXd b(k, p());
  for (int l = 0; l < p(); ++l) {
    for (int w = 0; w < k; ++w) b(w, l) = beta[l](w * d + h);
  }
  return b;
}

void ParamState::set_coefficient_matrix(int h, const Eigen::MatrixXd& b) {
  if (h < 0 || h >= d) throw std::invalid_argument("set_coefficient_matrix: covariate index out of range");
  if (b.rows() != k || b.cols() != p()) {
    throw std::invalid_argument("set_coefficient_matrix: dimension mismatch");
  }
  for (int l = 0; l < p(); ++l) {
    for (int w = 0; w < k; ++w) beta[l](w * d + h) = b(w, l);
  }
}

void ParamState::validate() const {
  if (k < 1 || d < 1 || beta.empty()) throw std::invalid_argument("ParamState: empty state");
  for (const auto& bl : beta) {
    if (bl.size() != static_cast<Eigen::Index>(k) * d || !bl.allFinite()) {
      throw std::invalid_argument("ParamState: bad beta block");
    }
  }
  check_spd(sigma, "ParamState: Sigma");
  if (sigma.rows() != k) throw std::invalid_argument("ParamState: Sigma dimension mismatch");
  for (const auto& rot : rotations) {
    if (rot.r.rows() != p() || !is_rotation(rot.r, 1e-10)) {
      throw std::invalid_argument("ParamState: rotation fails SO(p) invariants");
    }
  }
}

Eigen::MatrixXd design_matrix(const Eigen::VectorXd& z, int k) {
  const int d = static_cast<int>(z.size());
  if (d < 1) throw std::invalid_argument("design_matrix: empty covariate vector");
  if (k < 1) throw std::invalid_argument("design_matrix: k must be >= 1");
  Eigen::MatrixXd zd = Eigen::MatrixXd::Zero(k, k * d);
  for (int w = 0; w < k; ++w) zd.block(w, w * d, 1, d) = z.transpose();
  return zd;
}

Eigen::MatrixXd mean_configuration(const ParamState& state, const Eigen::VectorXd& z) {
  if (z.size() != state.d) throw std::invalid_argument("mean_configuration: covariate length mismatch");
  Eigen::MatrixXd mu = Eigen::MatrixXd::Zero(state.k, state.p());
  for (int h = 0; h < state.d; ++h) mu += z(h) * state.coefficient_matrix(h);
  return mu;
}

Eigen::MatrixXd latent_configuration(const DatasetItem& item, const Rotation& rot) {
  return item.shape.y * rot.r.transpose();
}

double complete_data_loglik(const ParamState& state, const Dataset& data) {
  if (state.n() != data.n() || state.k != data.k() || state.p() != data.p() || state.d != data.d()) {
    throw std::invalid_argument("complete_data_loglik: state/data dimension mismatch");
  }
  const int k = state.k;
  const int p = state.p();

  Eigen::LLT<Eigen::MatrixXd> llt(state.sigma);
  if (llt.info() != Eigen::Success) {
    throw numerical_error("complete_data_loglik: Sigma is not positive definite");
  }
  double logdet = 0.0;
  for (int j = 0; j < k; ++j) logdet += 2.0 * std::log(llt.matrixL()(j, j));

  double loglik = 0.0;
  for (int i = 0; i < data.n(); ++i) {
    const Eigen::MatrixXd resid =
        latent_configuration(data.items[i], state.rotations[i]) -
        mean_configuration(state, data.items[i].z);
    const Eigen::MatrixXd solved = llt.solve(resid);
    const double quad = (resid.array() * solved.array()).sum();
    loglik += -0.5 * (p * (k * std::log(2.0 * M_PI) + logdet) + quad);
  }
  return loglik;
}

double trace_invariance_check(const Eigen::MatrixXd& mu, const Eigen::MatrixXd& sigma,
                              const Rotation& lambda) {
  Eigen::LLT<Eigen::MatrixXd> llt(sigma);
  if (llt.info() != Eigen::Success) {
    throw numerical_error("trace_invariance_check: Sigma is not positive definite");
  }
  const Eigen::MatrixXd quad = mu.transpose() * llt.solve(mu);
  const double base = quad.trace();
  const double rotated = (lambda.r.transpose() * quad * lambda.r).trace();
  return std::abs(rotated - base);
}

}  // namespace sns
