#include "sns/sampler.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "sns/errors.hpp"

namespace sns {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

Eigen::LLT<Eigen::MatrixXd> sigma_llt_or_throw(const Eigen::MatrixXd& sigma, const char* where) {
  Eigen::LLT<Eigen::MatrixXd> llt(sigma);
  if (llt.info() != Eigen::Success) {
    throw numerical_error(std::string(where) + ": Sigma is not positive definite");
  }
  return llt;
}

void check_state_data(const ParamState& state, const Dataset& data, const char* where) {
  if (data.n() == 0) return;  // prior-only conditionals are allowed
  if (state.k != data.k() || state.p() != data.p() || state.d != data.d() ||
      state.n() != data.n()) {
    throw std::invalid_argument(std::string(where) + ": state/data dimension mismatch");
  }
}

// Reflects into [0, pi] (even/odd fold of the real line).
double reflect_pi(double x) {
  double y = std::fmod(x, 2.0 * M_PI);
  if (y < 0.0) y += 2.0 * M_PI;
  if (y > M_PI) y = 2.0 * M_PI - y;
  return y;
}

}  // namespace

void SamplerConfig::validate() const {
  if (iterations < 1) throw std::invalid_argument("SamplerConfig: iterations must be >= 1");
  if (burn_in < 0 || burn_in >= iterations) {
    throw std::invalid_argument("SamplerConfig: need 0 <= burn_in < iterations");
  }
  if (thin < 1) throw std::invalid_argument("SamplerConfig: thin must be >= 1");
  if (!(euler_step > 0.0) || euler_step > M_PI) {
    throw std::invalid_argument("SamplerConfig: euler_step must lie in (0, pi]");
  }
}

BetaConditional beta_conditional(const ParamState& state, const Dataset& data,
                                 const Priors& priors, int l) {
  check_state_data(state, data, "beta_conditional");
  if (l < 0 || l >= state.p()) throw std::invalid_argument("beta_conditional: column index out of range");
  if (priors.p() != state.p() || priors.kd() != state.k * state.d) {
    throw std::invalid_argument("beta_conditional: priors dimension mismatch");
  }

  const int kd = state.k * state.d;
  Eigen::MatrixXd precision = priors.v_inverse(l);
  Eigen::VectorXd rhs = priors.v_llt(l).solve(priors.m(l));

  if (data.n() > 0) {
    const auto sigma_llt = sigma_llt_or_throw(state.sigma, "beta_conditional");
    for (int i = 0; i < data.n(); ++i) {
      const Eigen::MatrixXd zi = design_matrix(data.items[i].z, state.k);
      const Eigen::MatrixXd sinv_zi = sigma_llt.solve(zi);
      const Eigen::VectorXd xi_l =
          latent_configuration(data.items[i], state.rotations[i]).col(l);
      precision.noalias() += zi.transpose() * sinv_zi;
      rhs.noalias() += sinv_zi.transpose() * xi_l;
    }
  }
  precision = 0.5 * (precision + precision.transpose());

  Eigen::LLT<Eigen::MatrixXd> llt(precision);
  if (llt.info() != Eigen::Success) {
    throw numerical_error(
        "beta_conditional: posterior precision not positive definite (kd=" + std::to_string(kd) +
        ", ||P||=" + std::to_string(precision.norm()) + ")");
  }
  BetaConditional out;
  out.mean = llt.solve(rhs);
  out.precision_llt = std::move(llt);
  return out;
}

void sample_beta(ParamState& state, const Dataset& data, const Priors& priors, int l,
                 RngEngine& rng) {
  const BetaConditional cond = beta_conditional(state, data, priors, l);
  const int kd = static_cast<int>(cond.mean.size());
  Eigen::VectorXd xi(kd);
  for (int j = 0; j < kd; ++j) xi(j) = draw_normal(rng);
  // With precision P = L L^T, mean + L^{-T} xi has covariance P^{-1}.
  state.beta[l] = cond.mean + cond.precision_llt.matrixU().solve(xi);
}

SigmaConditional sigma_conditional(const ParamState& state, const Dataset& data,
                                   const Priors& priors) {
  check_state_data(state, data, "sigma_conditional");
  Eigen::MatrixXd psi_star = priors.psi();
  for (int i = 0; i < data.n(); ++i) {
    const Eigen::MatrixXd resid =
        latent_configuration(data.items[i], state.rotations[i]) -
        mean_configuration(state, data.items[i].z);
    psi_star.noalias() += resid * resid.transpose();
  }
  psi_star = 0.5 * (psi_star + psi_star.transpose());
  return SigmaConditional{priors.nu() + static_cast<double>(data.n()) * state.p(), psi_star};
}

Eigen::MatrixXd draw_inverse_wishart(RngEngine& rng, double nu, const Eigen::MatrixXd& psi) {
  const int k = static_cast<int>(psi.rows());
  if (!(nu > k - 1)) throw std::invalid_argument("draw_inverse_wishart: nu must exceed k - 1");
  Eigen::LLT<Eigen::MatrixXd> llt(psi);
  if (llt.info() != Eigen::Success) {
    throw numerical_error("draw_inverse_wishart: scale matrix not positive definite");
  }
  // Bartlett: W = C A A^T C^T ~ Wishart(nu, psi^{-1}) for C = L^{-T}; then
  // W^{-1} = (L A^{-T})(L A^{-T})^T with psi = L L^T.
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(k, k);
  for (int i = 0; i < k; ++i) {
    a(i, i) = std::sqrt(draw_chi_squared(rng, nu - i));
    for (int j = 0; j < i; ++j) a(i, j) = draw_normal(rng);
  }
  const Eigen::MatrixXd l = llt.matrixL();
  const Eigen::MatrixXd root =
      a.triangularView<Eigen::Lower>().transpose().solve<Eigen::OnTheRight>(l);
  Eigen::MatrixXd sigma = root * root.transpose();
  return 0.5 * (sigma + sigma.transpose());
}

void sample_sigma(ParamState& state, const Dataset& data, const Priors& priors, RngEngine& rng) {
  const SigmaConditional cond = sigma_conditional(state, data, priors);
  state.sigma = draw_inverse_wishart(rng, cond.nu_star, cond.psi_star);
}

Eigen::MatrixXd rotation_conditional_params(const ParamState& state, const Dataset& data, int i) {
  check_state_data(state, data, "rotation_conditional_params");
  if (i < 0 || i >= data.n()) throw std::invalid_argument("rotation_conditional_params: index out of range");
  const auto sigma_llt = sigma_llt_or_throw(state.sigma, "rotation_conditional_params");
  const Eigen::MatrixXd mu = mean_configuration(state, data.items[i].z);
  return mu.transpose() * sigma_llt.solve(data.items[i].shape.y);
}

VonMisesParams von_mises_params(const Eigen::MatrixXd& a) {
  if (a.rows() != 2 || a.cols() != 2) throw std::invalid_argument("von_mises_params: expected 2x2");
  const double c = a(0, 0) + a(1, 1);
  const double s = a(1, 0) - a(0, 1);
  const double kappa = std::sqrt(c * c + s * s);
  return VonMisesParams{kappa, kappa > 0.0 ? std::atan2(s, c) : 0.0};
}

Rotation sample_rotation_p2(const Eigen::MatrixXd& a, RngEngine& rng) {
  const VonMisesParams vm = von_mises_params(a);
  return rotation_from_angle(draw_von_mises(rng, vm.eta, vm.kappa));
}

double rotation_log_target(const Eigen::MatrixXd& a, double theta1, double theta2, double theta3) {
  if (a.rows() != 3 || a.cols() != 3) throw std::invalid_argument("rotation_log_target: expected 3x3");
  const double s2 = std::sin(theta2);
  if (!(s2 > 0.0)) return kNegInf;
  const Rotation r = rotation_from_euler(theta1, theta2, theta3);
  return (r.r.array() * a.array()).sum() + std::log(s2);
}

RotationUpdate sample_rotation_p3(const Eigen::MatrixXd& a, const Rotation& current,
                                  const SamplerConfig& config, RngEngine& rng) {
  const EulerAngles cur = euler_from_rotation(current);
  const double t1 = wrap_angle_2pi(cur.theta1 + config.euler_step * draw_normal(rng));
  const double t2 = reflect_pi(cur.theta2 + config.euler_step * draw_normal(rng));
  const double t3 = wrap_angle_2pi(cur.theta3 + config.euler_step * draw_normal(rng));

  const double lp_cur = rotation_log_target(a, cur.theta1, cur.theta2, cur.theta3);
  const double lp_prop = rotation_log_target(a, t1, t2, t3);
  const double log_u = std::log(draw_uniform_pos(rng));

  bool accepted;
  if (lp_prop == kNegInf) {
    accepted = false;
  } else if (lp_cur == kNegInf) {
    accepted = true;  // leaving the zero-density gimbal start
  } else {
    accepted = log_u < lp_prop - lp_cur;
  }
  if (!accepted) return RotationUpdate{current, false};
  return RotationUpdate{rotation_from_euler(t1, t2, t3), true};
}

ParamState initial_state(const Dataset& data, const Priors& priors) {
  data.validate();
  const int k = data.k();
  const int p = data.p();
  const int d = data.d();
  const int n = data.n();
  if (priors.p() != p || priors.kd() != k * d || priors.k() != k) {
    throw std::invalid_argument("initial_state: priors/data dimension mismatch");
  }

  ParamState state;
  state.k = k;
  state.d = d;
  state.beta.assign(p, Eigen::VectorXd::Zero(k * d));
  state.sigma = priors.psi() / (priors.nu() + k + 1);
  state.rotations.assign(n, Rotation{Eigen::MatrixXd::Identity(p, p)});

  // Per-column least squares with X_i = Y_i (all rotations at identity).
  Eigen::MatrixXd stacked(n * k, k * d);
  for (int i = 0; i < n; ++i) {
    stacked.middleRows(i * k, k) = design_matrix(data.items[i].z, k);
  }
  const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(stacked);
  for (int l = 0; l < p; ++l) {
    Eigen::VectorXd y(n * k);
    for (int i = 0; i < n; ++i) y.segment(i * k, k) = data.items[i].shape.y.col(l);
    state.beta[l] = qr.solve(y);
  }
  return state;
}

double suggest_euler_step(const Dataset& data, const Priors& priors) {
  const ParamState state = initial_state(data, priors);
  double smax = 0.0;
  for (int i = 0; i < data.n(); ++i) {
    const Eigen::MatrixXd a = rotation_conditional_params(state, data, i);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
    smax = std::max(smax, svd.singularValues()(0));
  }
  return std::clamp(1.5 / std::sqrt(1.0 + smax), 1e-4, 0.5);
}

Chain gibbs_run(const Dataset& data, const Priors& priors, const SamplerConfig& config,
                const IdentificationPolicy& policy) {
  config.validate();
  data.validate();
  const int p = data.p();
  if (p != 2 && p != 3) throw std::invalid_argument("gibbs_run: p must be 2 or 3");

  RngEngine rng = make_engine(config.seed);
  ParamState state = initial_state(data, priors);

  Chain chain;
  chain.seed = config.seed;
  const int kept = (config.iterations - config.burn_in + config.thin - 1) / config.thin;
  chain.draws.reserve(kept);
  chain.logliks.reserve(kept);

  long proposals = 0;
  long accepts = 0;

  for (int sweep = 0; sweep < config.iterations; ++sweep) {
    try {
      for (int l = 0; l < p; ++l) sample_beta(state, data, priors, l, rng);
      sample_sigma(state, data, priors, rng);
      for (int i = 0; i < data.n(); ++i) {
        const Eigen::MatrixXd a = rotation_conditional_params(state, data, i);
        if (p == 2) {
          state.rotations[i] = sample_rotation_p2(a, rng);
        } else {
          const RotationUpdate upd = sample_rotation_p3(a, state.rotations[i], config, rng);
          state.rotations[i] = upd.rotation;
          ++proposals;
          if (upd.accepted) ++accepts;
        }
      }
      if (sweep >= config.burn_in && (sweep - config.burn_in) % config.thin == 0) {
        ParamState ident = identify_draw(state, policy);
        chain.logliks.push_back(complete_data_loglik(ident, data));
        chain.draws.push_back(std::move(ident));
      }
    } catch (const std::exception& e) {
      throw numerical_error("gibbs_run: sweep " + std::to_string(sweep) + ": " + e.what());
    }
  }
  chain.acceptance_rate =
      (p == 3 && proposals > 0) ? static_cast<double>(accepts) / proposals : 1.0;
  return chain;
}

}  // namespace sns
