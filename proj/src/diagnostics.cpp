#include "sns/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "sns/geometry.hpp"

namespace sns {

namespace {

// Draw-order-invariant mean: sorting canonicalizes the summation order.
double sorted_mean(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

std::vector<double> scalar_series(const Chain& chain, int idx, int n_beta, int k, int d) {
  std::vector<double> out;
  out.reserve(chain.draws.size());
  for (const auto& draw : chain.draws) {
    if (idx < n_beta) {
      const int h = idx / (draw.p() * k);
      const int rem = idx % (draw.p() * k);
      const int l = rem / k;
      const int w = rem % k;
      out.push_back(draw.beta[l](w * d + h));
    } else {
      int t = idx - n_beta;
      int r = 0;
      while (t > r) t -= ++r;  // walk the lower triangle row by row
      out.push_back(draw.sigma(r, t));
    }
  }
  return out;
}

}  // namespace

std::vector<std::string> param_names(int k, int p, int d) {
  std::vector<std::string> names;
  for (int h = 1; h <= d; ++h) {
    for (int l = 1; l <= p; ++l) {
      for (int w = 1; w <= k; ++w) {
        names.push_back("b" + std::to_string(h) + "_" + std::to_string(w) + "_" + std::to_string(l));
      }
    }
  }
  for (int r = 1; r <= k; ++r) {
    for (int c = 1; c <= r; ++c) {
      names.push_back("sigma_" + std::to_string(r) + "_" + std::to_string(c));
    }
  }
  return names;
}

double percentile(std::vector<double> values, double q) {
  if (values.empty()) throw std::invalid_argument("percentile: empty sample");
  if (q < 0.0 || q > 1.0) throw std::invalid_argument("percentile: q must lie in [0, 1]");
  std::sort(values.begin(), values.end());
  const double h = q * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const auto hi = std::min(lo + 1, values.size() - 1);
  const double frac = h - static_cast<double>(lo);
  return values[lo] + frac * (values[hi] - values[lo]);
}

double effective_sample_size(const std::vector<double>& series) {
  const auto n = series.size();
  if (n < 2) return static_cast<double>(n);
  const double mean = std::accumulate(series.begin(), series.end(), 0.0) / static_cast<double>(n);

  auto autocov = [&](std::size_t lag) {
    double s = 0.0;
    for (std::size_t t = 0; t + lag < n; ++t) s += (series[t] - mean) * (series[t + lag] - mean);
    return s / static_cast<double>(n);
  };

  const double gamma0 = autocov(0);
  if (gamma0 <= 1e-28 * (1.0 + mean * mean)) return static_cast<double>(n);  // constant series

  double sum_pairs = 0.0;
  for (std::size_t m = 0; 2 * m + 1 < n; ++m) {
    const double pair = autocov(2 * m) + autocov(2 * m + 1);
    if (pair <= 0.0) break;
    sum_pairs += pair;
  }
  const double iact = std::max(1.0, 2.0 * sum_pairs / gamma0 - 1.0);
  return std::clamp(static_cast<double>(n) / iact, 1.0, static_cast<double>(n));
}

double mean_config_distance(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  return ss_distance(decompose(PreForm{a}).shape, decompose(PreForm{b}).shape);
}

PosteriorSummary summarize(const Chain& chain, const ParamState* truth) {
  if (chain.draws.empty()) throw std::invalid_argument("summarize: empty chain");
  const auto& first = chain.draws.front();

  PosteriorSummary out;
  out.k = first.k;
  out.p = first.p();
  out.d = first.d;
  out.n_draws = static_cast<int>(chain.draws.size());

  const auto names = param_names(out.k, out.p, out.d);
  const int n_beta = out.d * out.p * out.k;
  for (std::size_t idx = 0; idx < names.size(); ++idx) {
    const auto series = scalar_series(chain, static_cast<int>(idx), n_beta, out.k, out.d);
    ParamSummary ps;
    ps.mean = sorted_mean(series);
    ps.ci_lower = percentile(series, 0.025);
    ps.ci_upper = percentile(series, 0.975);
    ps.ess = effective_sample_size(series);
    out.params.emplace(names[idx], ps);
  }

  for (int h = 0; h < out.d; ++h) {
    Eigen::MatrixXd bm(out.k, out.p);
    for (int l = 0; l < out.p; ++l) {
      for (int w = 0; w < out.k; ++w) {
        bm(w, l) = out.params.at(names[(h * out.p + l) * out.k + w]).mean;
      }
    }
    out.beta_mean.push_back(std::move(bm));
  }
  out.sigma_mean = Eigen::MatrixXd::Zero(out.k, out.k);
  {
    int idx = n_beta;
    for (int r = 0; r < out.k; ++r) {
      for (int c = 0; c <= r; ++c) {
        out.sigma_mean(r, c) = out.params.at(names[idx++]).mean;
        out.sigma_mean(c, r) = out.sigma_mean(r, c);
      }
    }
  }

  if (truth != nullptr) {
    if (truth->k != out.k || truth->p() != out.p || truth->d != out.d) {
      throw std::invalid_argument("summarize: truth dimension mismatch");
    }
    out.rho = mean_config_distance(out.beta_mean.front(), truth->coefficient_matrix(0));
  }
  return out;
}

std::map<std::string, double> coverage_report(const std::vector<PosteriorSummary>& summaries,
                                              const ParamState& truth) {
  if (summaries.empty()) throw std::invalid_argument("coverage_report: need at least one replicate");
  const auto names = param_names(truth.k, truth.p(), truth.d);
  const int n_beta = truth.d * truth.p() * truth.k;

  std::map<std::string, double> out;
  for (std::size_t idx = 0; idx < names.size(); ++idx) {
    double true_value;
    if (static_cast<int>(idx) < n_beta) {
      const int h = static_cast<int>(idx) / (truth.p() * truth.k);
      const int rem = static_cast<int>(idx) % (truth.p() * truth.k);
      true_value = truth.beta[rem / truth.k]((rem % truth.k) * truth.d + h);
    } else {
      int t = static_cast<int>(idx) - n_beta;
      int r = 0;
      while (t > r) t -= ++r;
      true_value = truth.sigma(r, t);
    }
    int hits = 0;
    for (const auto& s : summaries) {
      const auto& ps = s.params.at(names[idx]);
      if (ps.ci_lower <= true_value && true_value <= ps.ci_upper) ++hits;
    }
    out[names[idx]] = static_cast<double>(hits) / static_cast<double>(summaries.size());
  }
  return out;
}

}  // namespace sns
