#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "sns/identification.hpp"
#include "sns/model.hpp"
#include "sns/rng.hpp"

namespace sns {

struct SamplerConfig {
  int iterations = 5000;
  int burn_in = 3000;
  std::uint64_t seed = 0;
  double euler_step = 0.5;  // p=3 Euler proposal scale, radians
  int thin = 1;

  void validate() const;
};

// Posterior draws, identified per draw, post burn-in and thinning.
struct Chain {
  std::vector<ParamState> draws;
  std::vector<double> logliks;   // complete-data loglik per stored draw
  double acceptance_rate = 1.0;  // p=3 rotation Metropolis only; 1 for the exact p=2 draw
  std::uint64_t seed = 0;
};

// Full conditional of beta_l: N(mean, V*) with V* the inverse of the
// posterior precision sum_i Z_i^T Sigma^{-1} Z_i + V_l^{-1}. The precision
// is returned factored; V* is never formed explicitly.
struct BetaConditional {
  Eigen::VectorXd mean;
  Eigen::LLT<Eigen::MatrixXd> precision_llt;
};

BetaConditional beta_conditional(const ParamState& state, const Dataset& data,
                                 const Priors& priors, int l);

void sample_beta(ParamState& state, const Dataset& data, const Priors& priors, int l,
                 RngEngine& rng);

// nu* = nu + n p and Psi* = Psi + sum of residual column outer products.
struct SigmaConditional {
  double nu_star;
  Eigen::MatrixXd psi_star;
};

SigmaConditional sigma_conditional(const ParamState& state, const Dataset& data,
                                   const Priors& priors);

// Inverse-Wishart(nu, psi) draw via the Bartlett decomposition of
// W ~ Wishart(nu, psi^{-1}), returning W^{-1} without forming psi^{-1}.
Eigen::MatrixXd draw_inverse_wishart(RngEngine& rng, double nu, const Eigen::MatrixXd& psi);

void sample_sigma(ParamState& state, const Dataset& data, const Priors& priors, RngEngine& rng);

// A_i = mu_i^T Sigma^{-1} Y_i; the rotation full conditional is
// proportional to exp(tr(R_i A_i^T)) with respect to Haar measure.
Eigen::MatrixXd rotation_conditional_params(const ParamState& state, const Dataset& data, int i);

// tr(R(theta) A^T) = kappa * cos(theta - eta).
struct VonMisesParams {
  double kappa;
  double eta;
};

VonMisesParams von_mises_params(const Eigen::MatrixXd& a);

// Exact p=2 conditional draw via von Mises sampling.
Rotation sample_rotation_p2(const Eigen::MatrixXd& a, RngEngine& rng);

// Log target over the Euler box: tr(R(t1,t2,t3) A^T) + log sin(t2). The
// sin(t2) factor is the Haar Jacobian of the Z-Y-Z chart; without it the
// Metropolis chain would target the wrong distribution on SO(3).
// Returns -inf at sin(t2) <= 0.
double rotation_log_target(const Eigen::MatrixXd& a, double theta1, double theta2, double theta3);

struct RotationUpdate {
  Rotation rotation;
  bool accepted;
};

// One Metropolis update of a p=3 rotation: independent wrapped-Gaussian
// perturbations of the Euler angles (theta2 reflected at the boundaries of
// [0, pi]), standard accept ratio against rotation_log_target.
RotationUpdate sample_rotation_p3(const Eigen::MatrixXd& a, const Rotation& current,
                                  const SamplerConfig& config, RngEngine& rng);

// Deterministic start: per-column least squares with R_i = I,
// Sigma = Psi / (nu + k + 1) (prior mode), R_i = I.
ParamState initial_state(const Dataset& data, const Priors& priors);

// Proposal scale heuristic for the p=3 Metropolis: matches the curvature of
// the rotation conditionals at the initial state (the conditionals become
// sharply concentrated when ||mu|| ||Y|| / noise is large, where a fixed
// 0.5 rad step would freeze the chain). Clamped to [1e-4, 0.5].
double suggest_euler_step(const Dataset& data, const Priors& priors);

// Gibbs / Metropolis-within-Gibbs sweep:
//   {sample_beta l=1..p} -> sample_sigma -> {rotation update i=1..n},
// storing identified post-burn-in thinned draws. Deterministic given seed.
Chain gibbs_run(const Dataset& data, const Priors& priors, const SamplerConfig& config,
                const IdentificationPolicy& policy = {});

}  // namespace sns
