// sns: Bayesian size-and-shape regression for landmark data.
//
// Subcommands: simulate, fit, summarize, distance, replicate-table1.
// Exit codes: 0 ok, 2 usage, 3 data/config error, 4 numerical error.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "sns/diagnostics.hpp"
#include "sns/errors.hpp"
#include "sns/io.hpp"
#include "sns/replication.hpp"
#include "sns/sampler.hpp"
#include "sns/synthetic.hpp"
#include "sns/version.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct WallClock {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("SNS_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw sns::data_error("SNS_SEED is not a valid unsigned integer");
    }
  }
  return 0;
}

fs::path ensure_out_dir(const std::string& out) {
  fs::path dir = out.empty() ? fs::path("out") : fs::path(out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw sns::data_error("cannot create output directory '" + dir.string() + "'");
  return dir;
}

json manifest_skeleton(const std::string& subcommand, std::uint64_t seed) {
  json m;
  m["subcommand"] = subcommand;
  m["version"] = sns::kVersion;
  m["seed"] = seed;
  m["rng"] = "mt19937_64";
  m["inputs"] = json::object();
  m["outputs"] = json::object();
  return m;
}

void add_digest(json& section, const fs::path& path) {
  section[path.string()] = sns::file_digest(path);
}

void finalize_manifest(json& m, const fs::path& dir, const std::string& name, double wall_seconds) {
  m["wall_time_sec"] = wall_seconds;
  sns::write_json(dir / name, m);
}

void print_summary_table(const sns::PosteriorSummary& s) {
  std::printf("%-12s %12s %12s %12s %10s\n", "param", "mean", "ci_2.5%", "ci_97.5%", "ess");
  for (const auto& [name, ps] : s.params) {
    std::printf("%-12s %12.5g %12.5g %12.5g %10.1f\n", name.c_str(), ps.mean, ps.ci_lower,
                ps.ci_upper, ps.ess);
  }
  if (s.rho) std::printf("rho (posterior mean vs truth): %.6g\n", *s.rho);
}

int run(int argc, char** argv) {
  CLI::App app{"Bayesian size-and-shape regression for landmark data"};
  app.require_subcommand(1);

  // ---- simulate ----------------------------------------------------------
  auto* sim = app.add_subcommand("simulate", "Generate a synthetic dataset from the model");
  int sim_p = 2;
  int sim_n = 20;
  double sim_kappa = 0.1;
  std::optional<std::uint64_t> sim_seed;
  std::string sim_out;
  bool sim_emit_raw = false;
  sim->add_option("--p", sim_p, "Landmark dimension (2 or 3)")->check(CLI::IsMember({2, 3}));
  sim->add_option("--n", sim_n, "Number of objects")->check(CLI::PositiveNumber);
  sim->add_option("--kappa", sim_kappa, "Noise scale: Sigma = kappa * I")->check(CLI::PositiveNumber);
  sim->add_option("--seed", sim_seed, "RNG seed (fallback: SNS_SEED, then 0)");
  sim->add_option("--out", sim_out, "Output directory (default ./out)");
  sim->add_flag("--emit-raw", sim_emit_raw,
                "Also write raw (k+1)-landmark configurations with a translation row");

  // ---- fit ---------------------------------------------------------------
  auto* fit = app.add_subcommand("fit", "Run the Gibbs sampler on a dataset CSV");
  std::string fit_data;
  std::string fit_priors;
  bool fit_default_priors = false;
  bool fit_helmertize = false;
  int fit_iterations = 5000;
  int fit_burn_in = 3000;
  int fit_thin = 1;
  std::string fit_euler_step = "0.5";
  std::optional<std::uint64_t> fit_seed;
  std::string fit_out;
  fit->add_option("data", fit_data, "Dataset CSV (object_id,landmark_id,coord_*,z_*)")->required();
  fit->add_option("--priors", fit_priors, "Priors JSON file");
  fit->add_flag("--default-priors", fit_default_priors,
                "Vague defaults: M=0, V=1e6 I, nu=k+1, Psi=I");
  fit->add_flag("--helmertize", fit_helmertize,
                "Treat input rows as raw configurations; remove translation first");
  fit->add_option("--iterations", fit_iterations, "Total MCMC sweeps")->check(CLI::PositiveNumber);
  fit->add_option("--burn-in", fit_burn_in, "Discarded initial sweeps")->check(CLI::NonNegativeNumber);
  fit->add_option("--thin", fit_thin, "Keep every thin-th draw")->check(CLI::PositiveNumber);
  fit->add_option("--euler-step", fit_euler_step,
                  "p=3 Euler proposal scale in radians, or 'auto' to match the "
                  "curvature of the rotation conditionals");
  fit->add_option("--seed", fit_seed, "RNG seed (fallback: SNS_SEED, then 0)");
  fit->add_option("--out", fit_out, "Output directory (default ./out)");

  // ---- summarize ---------------------------------------------------------
  auto* summ = app.add_subcommand("summarize", "Posterior summaries from a chain CSV");
  std::string summ_chain;
  std::string summ_truth;
  std::string summ_out;
  summ->add_option("chain", summ_chain, "Chain CSV written by fit")->required();
  summ->add_option("--truth", summ_truth, "Ground-truth JSON written by simulate");
  summ->add_option("--out", summ_out, "Output directory (default ./out)");

  // ---- distance ----------------------------------------------------------
  auto* dist = app.add_subcommand("distance", "Size-and-shape distance between two k x p matrices");
  std::string dist_a;
  std::string dist_b;
  bool dist_helmertize = false;
  dist->add_option("a", dist_a, "First matrix CSV (plain rows, no header)")->required();
  dist->add_option("b", dist_b, "Second matrix CSV")->required();
  dist->add_flag("--helmertize", dist_helmertize, "Remove translation from both inputs first");

  // ---- replicate-table1 --------------------------------------------------
  auto* rep = app.add_subcommand(
      "replicate-table1", "Replicate the bundled simulation-study grid and report distances");
  int rep_seeds = 5;
  std::optional<std::uint64_t> rep_seed;
  std::string rep_out;
  int rep_iterations = 5000;
  int rep_burn_in = 3000;
  rep->add_option("--seeds", rep_seeds, "Replicates per grid cell")->check(CLI::PositiveNumber);
  rep->add_option("--seed", rep_seed, "Base seed (fallback: SNS_SEED, then 0)");
  rep->add_option("--iterations", rep_iterations, "Sweeps per fit")->check(CLI::PositiveNumber);
  rep->add_option("--burn-in", rep_burn_in, "Burn-in per fit")->check(CLI::NonNegativeNumber);
  rep->add_option("--out", rep_out, "Output directory (default ./out)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);  // prints help text or the parse error
    return code == 0 ? 0 : 2;
  }

  if (sim->parsed()) {
    WallClock clock;
    const std::uint64_t seed = resolve_seed(sim_seed);
    const fs::path dir = ensure_out_dir(sim_out);

    const sns::ScenarioSpec spec = sns::default_scenario(sim_p, sim_n, sim_kappa, seed);
    const sns::SyntheticData synth = sns::generate(spec, sim_emit_raw);

    const fs::path data_path = dir / "dataset.csv";
    const fs::path truth_path = dir / "truth.json";
    sns::write_landmark_csv(data_path, sns::table_from_dataset(synth.dataset));
    sns::write_truth_json(truth_path,
                          sns::TruthInfo{spec.p, spec.k, spec.d, spec.n, spec.kappa, seed, synth.truth});

    json m = manifest_skeleton("simulate", seed);
    m["config"] = {{"p", sim_p}, {"n", sim_n}, {"kappa", sim_kappa}, {"emit_raw", sim_emit_raw},
                   {"out", dir.string()}};
    add_digest(m["outputs"], data_path);
    add_digest(m["outputs"], truth_path);

    if (sim_emit_raw) {
      // Recoverable raw configurations: H^T X plus a constant translation row.
      sns::LandmarkTable raw;
      const Eigen::MatrixXd ht = sns::helmert_submatrix(spec.k).transpose();
      Eigen::RowVectorXd t(spec.p);
      for (int c = 0; c < spec.p; ++c) t(c) = 10.0 * (c + 1);
      for (std::size_t i = 0; i < synth.raw_preforms.size(); ++i) {
        Eigen::MatrixXd cfg = ht * synth.raw_preforms[i];
        cfg.rowwise() += t;
        raw.objects.push_back(std::move(cfg));
        raw.covariates.push_back(synth.dataset.items[i].z);
      }
      const fs::path raw_path = dir / "raw_configurations.csv";
      sns::write_landmark_csv(raw_path, raw);
      add_digest(m["outputs"], raw_path);
    }
    finalize_manifest(m, dir, "manifest_simulate.json", clock.seconds());
    std::cout << "wrote " << data_path.string() << " (" << sim_n << " objects, k=" << spec.k
              << ", p=" << sim_p << ")\n";
    return 0;
  }

  if (fit->parsed()) {
    WallClock clock;
    const std::uint64_t seed = resolve_seed(fit_seed);
    const fs::path dir = ensure_out_dir(fit_out);
    if (fit_default_priors == !fit_priors.empty()) {
      throw CLI::ValidationError("fit", "pass exactly one of --priors FILE or --default-priors");
    }

    const sns::LandmarkTable table = sns::read_landmark_csv(fit_data);
    const sns::Dataset data = sns::dataset_from_table(table, fit_helmertize);
    const sns::Priors priors =
        fit_default_priors
            ? sns::default_priors(data.k(), data.p(), data.d())
            : sns::priors_from_json(sns::read_json(fit_priors), data.k(), data.p(), data.d());

    sns::SamplerConfig config;
    config.iterations = fit_iterations;
    config.burn_in = fit_burn_in;
    config.thin = fit_thin;
    config.seed = seed;
    if (fit_euler_step == "auto") {
      config.euler_step = data.p() == 3 ? sns::suggest_euler_step(data, priors) : 0.5;
    } else {
      try {
        config.euler_step = std::stod(fit_euler_step);
      } catch (const std::exception&) {
        throw CLI::ValidationError("fit", "--euler-step expects a number or 'auto'");
      }
    }

    const sns::Chain chain = sns::gibbs_run(data, priors, config);
    const fs::path chain_path = dir / "chain.csv";
    sns::write_chain_csv(chain_path, chain);

    json m = manifest_skeleton("fit", seed);
    m["config"] = {{"data", fit_data},
                   {"iterations", fit_iterations},
                   {"burn_in", fit_burn_in},
                   {"thin", fit_thin},
                   {"euler_step", config.euler_step},
                   {"helmertize", fit_helmertize},
                   {"priors", fit_default_priors ? std::string("default") : fit_priors},
                   {"out", dir.string()}};
    m["priors"] = sns::priors_to_json(priors);
    m["acceptance_rate"] = chain.acceptance_rate;
    m["draws"] = chain.draws.size();
    add_digest(m["inputs"], fit_data);
    if (!fit_priors.empty()) add_digest(m["inputs"], fit_priors);
    add_digest(m["outputs"], chain_path);
    finalize_manifest(m, dir, "manifest_fit.json", clock.seconds());
    std::cout << "wrote " << chain_path.string() << " (" << chain.draws.size()
              << " draws, acceptance " << chain.acceptance_rate << ")\n";
    return 0;
  }

  if (summ->parsed()) {
    WallClock clock;
    const fs::path dir = ensure_out_dir(summ_out);
    const sns::Chain chain = sns::read_chain_csv(summ_chain);

    std::optional<sns::TruthInfo> truth;
    if (!summ_truth.empty()) truth = sns::read_truth_json(summ_truth);
    const sns::PosteriorSummary summary =
        sns::summarize(chain, truth ? &truth->truth.state : nullptr);

    const fs::path out_path = dir / "summary.json";
    sns::write_summary_json(out_path, summary);

    json m = manifest_skeleton("summarize", 0);
    m["config"] = {{"chain", summ_chain}, {"truth", summ_truth}, {"out", dir.string()}};
    add_digest(m["inputs"], summ_chain);
    if (!summ_truth.empty()) add_digest(m["inputs"], fs::path(summ_truth));
    add_digest(m["outputs"], out_path);
    finalize_manifest(m, dir, "manifest_summarize.json", clock.seconds());

    print_summary_table(summary);
    std::cout << "wrote " << out_path.string() << "\n";
    return 0;
  }

  if (dist->parsed()) {
    auto load = [&](const std::string& path) {
      Eigen::MatrixXd mat = sns::read_matrix_csv(path);
      if (dist_helmertize) mat = sns::helmertize(sns::Configuration::create(mat)).coords;
      return sns::decompose(sns::PreForm{mat}).shape;
    };
    const sns::SizeAndShape a = load(dist_a);
    const sns::SizeAndShape b = load(dist_b);
    std::printf("%.17g\n", sns::ss_distance(a, b));
    return 0;
  }

  if (rep->parsed()) {
    WallClock clock;
    const std::uint64_t seed = resolve_seed(rep_seed);
    const fs::path dir = ensure_out_dir(rep_out);

    sns::SamplerConfig base;
    base.iterations = rep_iterations;
    base.burn_in = rep_burn_in;
    const auto cells = sns::replicate_grid(rep_seeds, seed, base);

    // Pretty table: one row per (n, kappa), one distance column per p.
    std::printf("%6s %6s %10s %10s\n", "n", "kappa", "rho_2", "rho_3");
    for (double kappa : sns::kGridKappas) {
      for (int n : sns::kGridSampleSizes) {
        double rho2 = 0.0, rho3 = 0.0;
        for (const auto& c : cells) {
          if (c.n == n && c.kappa == kappa) (c.p == 2 ? rho2 : rho3) = c.median_rho;
        }
        std::printf("%6d %6.1f %10.4f %10.4f\n", n, kappa, rho2, rho3);
      }
    }

    const fs::path csv_path = dir / "table1.csv";
    {
      std::ofstream out(csv_path);
      out << "p,kappa,n,median_rho";
      for (int s = 1; s <= rep_seeds; ++s) out << ",rho_seed_" << s;
      out << ",mean_acceptance\n";
      for (const auto& c : cells) {
        out << c.p << "," << c.kappa << "," << c.n << "," << c.median_rho;
        for (double r : c.rhos) out << "," << r;
        out << "," << c.mean_acceptance << "\n";
      }
    }

    json m = manifest_skeleton("replicate-table1", seed);
    m["config"] = {{"seeds", rep_seeds},
                   {"iterations", rep_iterations},
                   {"burn_in", rep_burn_in},
                   {"out", dir.string()}};
    add_digest(m["outputs"], csv_path);
    finalize_manifest(m, dir, "manifest_replicate_table1.json", clock.seconds());
    std::cout << "wrote " << csv_path.string() << "\n";
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const sns::numerical_error& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 4;
  } catch (const sns::data_error& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
}
