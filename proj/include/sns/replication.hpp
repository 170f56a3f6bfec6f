#pragma once

#include <cstdint>
#include <vector>

#include "sns/sampler.hpp"

namespace sns {

// One cell of the bundled simulation-study grid
// (p in {2,3}) x (kappa in {0.1,0.3}) x (n in {20,50,100,300}).
struct CellResult {
  int p;
  double kappa;
  int n;
  std::vector<double> rhos;  // one per replicate seed
  double median_rho;
  double mean_acceptance;  // p=3 Metropolis acceptance, averaged over seeds
};

inline const std::vector<int> kGridSampleSizes = {20, 50, 100, 300};
inline const std::vector<double> kGridKappas = {0.1, 0.3};

// Runs the full grid: per cell, `seeds` replicates of simulate -> fit
// (vague defaults, 5000 iterations / 3000 burn-in unless overridden) ->
// posterior-mean distance. Replicate seeds are derived from
// (base_seed, cell, replicate) so cells are independent of execution order.
// The p=3 Euler proposal scale is chosen per run via suggest_euler_step.
std::vector<CellResult> replicate_grid(int seeds, std::uint64_t base_seed,
                                       const SamplerConfig& base_config = {});

double median(std::vector<double> values);

}  // namespace sns
