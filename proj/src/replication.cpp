#include "sns/replication.hpp"

#include <algorithm>
#include <stdexcept>

#include "sns/diagnostics.hpp"
#include "sns/synthetic.hpp"

namespace sns {

double median(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("median: empty sample");
  std::sort(values.begin(), values.end());
  const auto n = values.size();
  return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

std::vector<CellResult> replicate_grid(int seeds, std::uint64_t base_seed,
                                       const SamplerConfig& base_config) {
  if (seeds < 1) throw std::invalid_argument("replicate_grid: need at least one seed");

  std::vector<CellResult> results;
  std::uint64_t cell_index = 0;
  for (int p : {2, 3}) {
    for (double kappa : kGridKappas) {
      for (int n : kGridSampleSizes) {
        CellResult cell{p, kappa, n, {}, 0.0, 0.0};
        double acc_sum = 0.0;
        for (int rep = 0; rep < seeds; ++rep) {
          const std::uint64_t run_seed =
              splitmix64(base_seed ^ splitmix64(cell_index * 1000 + rep + 1));

          const ScenarioSpec spec = default_scenario(p, n, kappa, run_seed);
          const SyntheticData synth = generate(spec);
          const Priors priors = default_priors(spec.k, p, spec.d);

          SamplerConfig config = base_config;
          config.seed = splitmix64(run_seed + 0x9e37);
          if (p == 3) config.euler_step = suggest_euler_step(synth.dataset, priors);

          const Chain chain = gibbs_run(synth.dataset, priors, config);
          const PosteriorSummary summary = summarize(chain, &synth.truth.state);
          cell.rhos.push_back(summary.rho.value());
          acc_sum += chain.acceptance_rate;
        }
        cell.median_rho = median(cell.rhos);
        cell.mean_acceptance = acc_sum / seeds;
        results.push_back(std::move(cell));
        ++cell_index;
      }
    }
  }
  return results;
}

}  // namespace sns
