#pragma once

#include <Eigen/Dense>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "sns/diagnostics.hpp"
#include "sns/model.hpp"
#include "sns/sampler.hpp"
#include "sns/synthetic.hpp"

namespace sns {

// Landmark CSV: header object_id,landmark_id,coord_1..coord_p[,z_1..z_d];
// landmark rows ordered consistently within each object, covariates constant
// per object. Without z columns every object gets the intercept z = (1).
struct LandmarkTable {
  std::vector<Eigen::MatrixXd> objects;     // each rows x p
  std::vector<Eigen::VectorXd> covariates;  // each length d
};

LandmarkTable read_landmark_csv(const std::filesystem::path& path);
void write_landmark_csv(const std::filesystem::path& path, const LandmarkTable& table);

// Decomposes each object (optionally Helmertizing first) into a Dataset.
Dataset dataset_from_table(const LandmarkTable& table, bool helmertize_first);

LandmarkTable table_from_dataset(const Dataset& data);

// Plain numeric matrix, no header: one CSV row per matrix row.
Eigen::MatrixXd read_matrix_csv(const std::filesystem::path& path);
void write_matrix_csv(const std::filesystem::path& path, const Eigen::MatrixXd& m);

// Priors JSON: either the full form
//   { "nu": ..., "psi": [[...]], "m": [[...] x p], "v": [[[...]] x p] }
// or the abbreviated form { "m_scalar": 0, "v_scale": 1e6 } expanding to
// M_l = m_scalar * 1, V_l = v_scale * I, with nu defaulting to k+1 and Psi
// to I_k. Dimensions are taken from the dataset at hand.
Priors priors_from_json(const nlohmann::json& j, int k, int p, int d);
nlohmann::json priors_to_json(const Priors& priors);

struct TruthInfo {
  int p = 0, k = 0, d = 0, n = 0;
  double kappa = 0.0;
  std::uint64_t seed = 0;
  GroundTruth truth;
};

void write_truth_json(const std::filesystem::path& path, const TruthInfo& info);
TruthInfo read_truth_json(const std::filesystem::path& path);

// Chain CSV: one row per stored draw with columns
//   draw, b{h}_{w}_{l} ..., sigma_{r}_{c} (lower triangle), loglik.
// Rotations are not persisted.
void write_chain_csv(const std::filesystem::path& path, const Chain& chain);
Chain read_chain_csv(const std::filesystem::path& path);

nlohmann::json summary_to_json(const PosteriorSummary& summary);
void write_summary_json(const std::filesystem::path& path, const PosteriorSummary& summary);

// FNV-1a 64-bit content digest, hex encoded.
std::string file_digest(const std::filesystem::path& path);

void write_json(const std::filesystem::path& path, const nlohmann::json& j);
nlohmann::json read_json(const std::filesystem::path& path);

}  // namespace sns
