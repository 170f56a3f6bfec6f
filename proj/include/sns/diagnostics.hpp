#pragma once

#include <Eigen/Dense>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sns/model.hpp"
#include "sns/sampler.hpp"

namespace sns {

struct ParamSummary {
  double mean = 0.0;
  double ci_lower = 0.0;  // 2.5% empirical percentile
  double ci_upper = 0.0;  // 97.5% empirical percentile
  double ess = 0.0;
};

struct PosteriorSummary {
  int k = 0, p = 0, d = 0;
  int n_draws = 0;
  std::vector<Eigen::MatrixXd> beta_mean;  // d matrices, k x p, from identified draws
  Eigen::MatrixXd sigma_mean;
  std::map<std::string, ParamSummary> params;
  // Size-and-shape distance between the estimated and true baseline mean
  // configurations (the first coefficient matrix); present only when a truth
  // state was supplied.
  std::optional<double> rho;
};

// Scalar parameter names in chain-column order: b{h}_{w}_{l} over
// h = 1..d (l = 1..p, w = 1..k inner), then the lower triangle
// sigma_{r}_{c}, r = 1..k, c = 1..r.
std::vector<std::string> param_names(int k, int p, int d);

// Type-7 (linear interpolation) empirical percentile, q in [0, 1].
double percentile(std::vector<double> values, double q);

// Initial-positive-sequence autocovariance estimator; clamped to [1, N].
double effective_sample_size(const std::vector<double>& series);

// ss_distance between the decomposed size-and-shapes of two k x p mean
// configurations.
double mean_config_distance(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

PosteriorSummary summarize(const Chain& chain, const ParamState* truth = nullptr);

// Fraction of replicates whose 95% interval contains the (identified) true
// value, per scalar parameter.
std::map<std::string, double> coverage_report(const std::vector<PosteriorSummary>& summaries,
                                              const ParamState& truth);

}  // namespace sns
