#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "sns/model.hpp"
#include "sns/rng.hpp"

namespace sns {

struct ScenarioSpec {
  int p = 2;
  int k = 3;
  int d = 1;
  int n = 20;
  double kappa = 0.1;
  std::vector<Eigen::VectorXd> beta_true;  // p columns of the k x p mean (d = 1)
  std::uint64_t seed = 0;

  void validate() const;
};

// The bundled simulation-study scenario: k = 3, d = 1, intercept-only
// covariates, mean columns (60,1,100), (10,30,180) and, for p = 3,
// (20,400,0.5), Sigma = kappa * I_3.
ScenarioSpec default_scenario(int p, int n, double kappa, std::uint64_t seed);

struct GroundTruth {
  ParamState state;                       // identified truth, coherent complete-data state
  std::vector<Eigen::MatrixXd> beta_raw;  // d matrices k x p, as specified (not identified)
};

struct SyntheticData {
  Dataset dataset;
  GroundTruth truth;
  std::vector<Eigen::MatrixXd> raw_preforms;  // kept only when requested
};

// One Gaussian pre-form draw: columns N_k(mu_col, Sigma), Sigma factored once.
Eigen::MatrixXd draw_preform(const Eigen::MatrixXd& mu, const Eigen::LLT<Eigen::MatrixXd>& sigma_llt,
                             RngEngine& rng);

// Draws n pre-forms from the model, decomposes each into (Y_i, R_i) and
// returns the dataset plus the identified ground truth (raw coefficient
// matrices are kept alongside). Degenerate draws are resampled with a logged
// warning, at most 10 times. Deterministic given spec.seed.
SyntheticData generate(const ScenarioSpec& spec, bool keep_raw = false);

}  // namespace sns
