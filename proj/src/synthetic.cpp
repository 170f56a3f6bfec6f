#include "sns/synthetic.hpp"

#include <cmath>
#include <iostream>
#include <stdexcept>

#include "sns/errors.hpp"
#include "sns/identification.hpp"
#include "sns/rng.hpp"

namespace sns {

void ScenarioSpec::validate() const {
  if (p != 2 && p != 3) throw std::invalid_argument("ScenarioSpec: p must be 2 or 3");
  if (k < p) throw std::invalid_argument("ScenarioSpec: k must be >= p");
  if (d < 1) throw std::invalid_argument("ScenarioSpec: d must be >= 1");
  if (n < 1) throw std::invalid_argument("ScenarioSpec: n must be >= 1");
  if (!(kappa > 0.0)) throw std::invalid_argument("ScenarioSpec: kappa must be > 0");
  if (static_cast<int>(beta_true.size()) != p) {
    throw std::invalid_argument("ScenarioSpec: need one true beta column per coordinate");
  }
  for (const auto& b : beta_true) {
    if (b.size() != static_cast<Eigen::Index>(k) * d || !b.allFinite()) {
      throw std::invalid_argument("ScenarioSpec: bad true beta column");
    }
  }
}

ScenarioSpec default_scenario(int p, int n, double kappa, std::uint64_t seed) {
  if (p != 2 && p != 3) throw std::invalid_argument("default_scenario: p must be 2 or 3");
  ScenarioSpec spec;
  spec.p = p;
  spec.n = n;
  spec.kappa = kappa;
  spec.seed = seed;
  spec.beta_true.emplace_back((Eigen::VectorXd(3) << 60.0, 1.0, 100.0).finished());
  spec.beta_true.emplace_back((Eigen::VectorXd(3) << 10.0, 30.0, 180.0).finished());
  if (p == 3) spec.beta_true.emplace_back((Eigen::VectorXd(3) << 20.0, 400.0, 0.5).finished());
  spec.validate();
  return spec;
}

Eigen::MatrixXd draw_preform(const Eigen::MatrixXd& mu, const Eigen::LLT<Eigen::MatrixXd>& sigma_llt,
                             RngEngine& rng) {
  Eigen::MatrixXd x(mu.rows(), mu.cols());
  for (Eigen::Index l = 0; l < mu.cols(); ++l) {
    Eigen::VectorXd xi(mu.rows());
    for (Eigen::Index w = 0; w < mu.rows(); ++w) xi(w) = draw_normal(rng);
    x.col(l) = mu.col(l) + sigma_llt.matrixL() * xi;
  }
  return x;
}

SyntheticData generate(const ScenarioSpec& spec, bool keep_raw) {
  spec.validate();
  RngEngine rng = make_engine(spec.seed);

  ParamState raw_state;
  raw_state.k = spec.k;
  raw_state.d = spec.d;
  raw_state.beta = spec.beta_true;
  raw_state.sigma = spec.kappa * Eigen::MatrixXd::Identity(spec.k, spec.k);

  const Eigen::MatrixXd mu = mean_configuration(raw_state, Eigen::VectorXd::Ones(spec.d));
  Eigen::LLT<Eigen::MatrixXd> sigma_llt(raw_state.sigma);
  if (sigma_llt.info() != Eigen::Success) {
    throw numerical_error("generate: Sigma is not positive definite");
  }

  SyntheticData out;
  out.dataset.items.reserve(spec.n);
  raw_state.rotations.reserve(spec.n);
  for (int i = 0; i < spec.n; ++i) {
    Decomposition dec;
    Eigen::MatrixXd x;
    bool ok = false;
    for (int attempt = 0; attempt < 10 && !ok; ++attempt) {
      x = draw_preform(mu, sigma_llt, rng);
      try {
        dec = decompose(PreForm{x});
        ok = true;
      } catch (const numerical_error&) {
        std::cerr << "generate: degenerate draw for object " << (i + 1) << ", resampling\n";
      }
    }
    if (!ok) throw numerical_error("generate: persistent degenerate draws for object " + std::to_string(i + 1));
    out.dataset.items.push_back(DatasetItem{dec.shape, Eigen::VectorXd::Ones(spec.d)});
    raw_state.rotations.push_back(dec.rotation);
    if (keep_raw) out.raw_preforms.push_back(std::move(x));
  }

  for (int h = 0; h < spec.d; ++h) out.truth.beta_raw.push_back(raw_state.coefficient_matrix(h));
  out.truth.state = identify_draw(raw_state);
  return out;
}

}  // namespace sns
