#include "sns/io.hpp"

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "sns/errors.hpp"

namespace sns {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

double parse_double(const std::string& s, const std::string& where) {
  double value = 0.0;
  const char* begin = s.data();
  const char* end = begin + s.size();
  while (begin != end && (*begin == ' ' || *begin == '\t')) ++begin;
  const auto res = std::from_chars(begin, end, value);
  if (res.ec != std::errc()) throw data_error(where + ": cannot parse number '" + s + "'");
  return value;
}

long parse_long(const std::string& s, const std::string& where) {
  long value = 0;
  const char* begin = s.data();
  const char* end = begin + s.size();
  while (begin != end && (*begin == ' ' || *begin == '\t')) ++begin;
  const auto res = std::from_chars(begin, end, value);
  if (res.ec != std::errc()) throw data_error(where + ": cannot parse integer '" + s + "'");
  return value;
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw data_error("cannot open '" + path.string() + "' for reading");
  return in;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw data_error("cannot open '" + path.string() + "' for writing");
  return out;
}

void strip_cr(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

Eigen::MatrixXd json_to_matrix(const nlohmann::json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) throw data_error(where + ": expected a non-empty array of rows");
  const auto rows = j.size();
  const auto cols = j.front().is_array() ? j.front().size() : 0;
  if (cols == 0) throw data_error(where + ": expected an array of arrays");
  Eigen::MatrixXd m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols) throw data_error(where + ": ragged rows");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = j[r][c].get<double>();
  }
  return m;
}

nlohmann::json matrix_to_json(const Eigen::MatrixXd& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::VectorXd json_to_vector(const nlohmann::json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) throw data_error(where + ": expected a non-empty array");
  Eigen::VectorXd v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) v(i) = j[i].get<double>();
  return v;
}

nlohmann::json vector_to_json(const Eigen::VectorXd& v) {
  nlohmann::json out = nlohmann::json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

}  // namespace

LandmarkTable read_landmark_csv(const std::filesystem::path& path) {
  auto in = open_input(path);
  std::string line;
  if (!std::getline(in, line)) throw data_error(path.string() + ": empty file");
  strip_cr(line);
  const auto header = split_csv_line(line);
  if (header.size() < 3 || header[0] != "object_id" || header[1] != "landmark_id") {
    throw data_error(path.string() + ": row 1: expected header object_id,landmark_id,coord_1,...");
  }
  int p = 0;
  while (2 + p < static_cast<int>(header.size()) &&
         header[2 + p] == "coord_" + std::to_string(p + 1)) {
    ++p;
  }
  if (p == 0) throw data_error(path.string() + ": row 1: no coord_1 column");
  int d_cols = 0;
  while (2 + p + d_cols < static_cast<int>(header.size()) &&
         header[2 + p + d_cols] == "z_" + std::to_string(d_cols + 1)) {
    ++d_cols;
  }
  if (2 + p + d_cols != static_cast<int>(header.size())) {
    throw data_error(path.string() + ": row 1: unexpected trailing columns");
  }

  LandmarkTable table;
  std::vector<Eigen::RowVectorXd> rows;
  Eigen::VectorXd z;
  long current_object = -1;
  long expected_landmark = 1;
  long row_no = 1;

  auto flush_object = [&]() {
    if (rows.empty()) return;
    Eigen::MatrixXd m(rows.size(), p);
    for (std::size_t r = 0; r < rows.size(); ++r) m.row(r) = rows[r];
    table.objects.push_back(std::move(m));
    table.covariates.push_back(d_cols > 0 ? z : Eigen::VectorXd::Ones(1));
    rows.clear();
  };

  while (std::getline(in, line)) {
    ++row_no;
    strip_cr(line);
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    const std::string where = path.string() + ": row " + std::to_string(row_no);
    if (fields.size() != header.size()) throw data_error(where + ": wrong number of fields");

    const long obj = parse_long(fields[0], where);
    const long lm = parse_long(fields[1], where);
    if (obj != current_object) {
      if (obj != current_object + 1 && !(current_object == -1 && obj == 1)) {
        throw data_error(where + ": object ids must be consecutive starting at 1");
      }
      flush_object();
      current_object = obj;
      expected_landmark = 1;
    }
    if (lm != expected_landmark) {
      throw data_error(where + ": landmark ids must be consecutive starting at 1 within each object");
    }
    ++expected_landmark;

    Eigen::RowVectorXd coords(p);
    for (int c = 0; c < p; ++c) coords(c) = parse_double(fields[2 + c], where);
    rows.push_back(coords);

    if (d_cols > 0) {
      Eigen::VectorXd zrow(d_cols);
      for (int c = 0; c < d_cols; ++c) zrow(c) = parse_double(fields[2 + p + c], where);
      if (static_cast<int>(rows.size()) == 1) {
        z = zrow;
      } else if ((zrow - z).cwiseAbs().maxCoeff() != 0.0) {
        throw data_error(where + ": covariates must be constant within an object");
      }
    }
  }
  flush_object();
  if (table.objects.empty()) throw data_error(path.string() + ": no data rows");

  const auto rows0 = table.objects.front().rows();
  for (std::size_t i = 1; i < table.objects.size(); ++i) {
    if (table.objects[i].rows() != rows0) {
      throw data_error(path.string() + ": object " + std::to_string(i + 1) +
                       " has a different number of landmarks");
    }
  }
  return table;
}

void write_landmark_csv(const std::filesystem::path& path, const LandmarkTable& table) {
  if (table.objects.empty() || table.objects.size() != table.covariates.size()) {
    throw std::invalid_argument("write_landmark_csv: empty or inconsistent table");
  }
  auto out = open_output(path);
  const auto p = table.objects.front().cols();
  const auto d = table.covariates.front().size();
  out << "object_id,landmark_id";
  for (Eigen::Index c = 0; c < p; ++c) out << ",coord_" << (c + 1);
  for (Eigen::Index c = 0; c < d; ++c) out << ",z_" << (c + 1);
  out << "\n";
  for (std::size_t i = 0; i < table.objects.size(); ++i) {
    const auto& m = table.objects[i];
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      out << (i + 1) << "," << (r + 1);
      for (Eigen::Index c = 0; c < p; ++c) out << "," << format_double(m(r, c));
      for (Eigen::Index c = 0; c < d; ++c) out << "," << format_double(table.covariates[i](c));
      out << "\n";
    }
  }
}

Dataset dataset_from_table(const LandmarkTable& table, bool helmertize_first) {
  Dataset data;
  for (std::size_t i = 0; i < table.objects.size(); ++i) {
    PreForm pre{table.objects[i]};
    if (helmertize_first) pre = helmertize(Configuration::create(table.objects[i]));
    try {
      data.items.push_back(DatasetItem{decompose(pre).shape, table.covariates[i]});
    } catch (const std::exception& e) {
      throw data_error("object " + std::to_string(i + 1) + ": " + e.what());
    }
  }
  data.validate();
  return data;
}

LandmarkTable table_from_dataset(const Dataset& data) {
  LandmarkTable table;
  for (const auto& item : data.items) {
    table.objects.push_back(item.shape.y);
    table.covariates.push_back(item.z);
  }
  return table;
}

Eigen::MatrixXd read_matrix_csv(const std::filesystem::path& path) {
  auto in = open_input(path);
  std::vector<std::vector<double>> rows;
  std::string line;
  long row_no = 0;
  while (std::getline(in, line)) {
    ++row_no;
    strip_cr(line);
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    std::vector<double> row;
    for (const auto& f : fields) {
      row.push_back(parse_double(f, path.string() + ": row " + std::to_string(row_no)));
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw data_error(path.string() + ": row " + std::to_string(row_no) + ": ragged row");
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw data_error(path.string() + ": no data rows");
  Eigen::MatrixXd m(rows.size(), rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < rows[r].size(); ++c) m(r, c) = rows[r][c];
  }
  return m;
}

void write_matrix_csv(const std::filesystem::path& path, const Eigen::MatrixXd& m) {
  auto out = open_output(path);
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (c > 0) out << ",";
      out << format_double(m(r, c));
    }
    out << "\n";
  }
}

Priors priors_from_json(const nlohmann::json& j, int k, int p, int d) {
  if (!j.is_object()) throw data_error("priors: expected a JSON object");
  const int kd = k * d;

  double nu = j.contains("nu") ? j.at("nu").get<double>() : k + 1.0;
  Eigen::MatrixXd psi = j.contains("psi") ? json_to_matrix(j.at("psi"), "priors: psi")
                                          : Eigen::MatrixXd::Identity(k, k);

  std::vector<Eigen::VectorXd> m;
  std::vector<Eigen::MatrixXd> v;
  if (j.contains("m")) {
    for (const auto& ml : j.at("m")) m.push_back(json_to_vector(ml, "priors: m"));
  } else {
    const double m_scalar = j.contains("m_scalar") ? j.at("m_scalar").get<double>() : 0.0;
    m.assign(p, m_scalar * Eigen::VectorXd::Ones(kd));
  }
  if (j.contains("v")) {
    for (const auto& vl : j.at("v")) v.push_back(json_to_matrix(vl, "priors: v"));
  } else {
    const double v_scale = j.contains("v_scale") ? j.at("v_scale").get<double>() : 1e6;
    v.assign(p, v_scale * Eigen::MatrixXd::Identity(kd, kd));
  }

  if (static_cast<int>(m.size()) != p || static_cast<int>(v.size()) != p) {
    throw data_error("priors: need exactly p = " + std::to_string(p) + " mean vectors and covariances");
  }
  for (int l = 0; l < p; ++l) {
    if (m[l].size() != kd || v[l].rows() != kd || v[l].cols() != kd) {
      throw data_error("priors: column " + std::to_string(l + 1) + " has dimensions inconsistent with k*d = " +
                       std::to_string(kd));
    }
  }
  if (psi.rows() != k || psi.cols() != k) {
    throw data_error("priors: psi must be k x k with k = " + std::to_string(k));
  }
  try {
    return Priors::create(std::move(m), std::move(v), nu, std::move(psi));
  } catch (const std::invalid_argument& e) {
    throw data_error(std::string("priors: ") + e.what());
  }
}

nlohmann::json priors_to_json(const Priors& priors) {
  nlohmann::json j;
  j["nu"] = priors.nu();
  j["psi"] = matrix_to_json(priors.psi());
  j["m"] = nlohmann::json::array();
  j["v"] = nlohmann::json::array();
  for (int l = 0; l < priors.p(); ++l) {
    j["m"].push_back(vector_to_json(priors.m(l)));
    j["v"].push_back(matrix_to_json(priors.v(l)));
  }
  return j;
}

void write_truth_json(const std::filesystem::path& path, const TruthInfo& info) {
  nlohmann::json j;
  j["p"] = info.p;
  j["k"] = info.k;
  j["d"] = info.d;
  j["n"] = info.n;
  j["kappa"] = info.kappa;
  j["seed"] = info.seed;
  j["sigma"] = matrix_to_json(info.truth.state.sigma);
  j["beta_raw"] = nlohmann::json::array();
  for (const auto& b : info.truth.beta_raw) j["beta_raw"].push_back(matrix_to_json(b));
  j["beta_identified"] = nlohmann::json::array();
  for (int h = 0; h < info.truth.state.d; ++h) {
    j["beta_identified"].push_back(matrix_to_json(info.truth.state.coefficient_matrix(h)));
  }
  j["rotations"] = nlohmann::json::array();
  for (const auto& r : info.truth.state.rotations) j["rotations"].push_back(matrix_to_json(r.r));
  write_json(path, j);
}

TruthInfo read_truth_json(const std::filesystem::path& path) {
  const auto j = read_json(path);
  TruthInfo info;
  try {
    info.p = j.at("p").get<int>();
    info.k = j.at("k").get<int>();
    info.d = j.at("d").get<int>();
    info.n = j.at("n").get<int>();
    info.kappa = j.at("kappa").get<double>();
    info.seed = j.at("seed").get<std::uint64_t>();

    info.truth.state.k = info.k;
    info.truth.state.d = info.d;
    info.truth.state.sigma = json_to_matrix(j.at("sigma"), "truth: sigma");
    info.truth.state.beta.assign(info.p, Eigen::VectorXd::Zero(info.k * info.d));
    const auto& ident = j.at("beta_identified");
    if (static_cast<int>(ident.size()) != info.d) throw data_error("truth: beta_identified size mismatch");
    for (int h = 0; h < info.d; ++h) {
      info.truth.state.set_coefficient_matrix(h, json_to_matrix(ident[h], "truth: beta_identified"));
    }
    for (const auto& b : j.at("beta_raw")) {
      info.truth.beta_raw.push_back(json_to_matrix(b, "truth: beta_raw"));
    }
    if (j.contains("rotations")) {
      for (const auto& r : j.at("rotations")) {
        info.truth.state.rotations.push_back(Rotation{json_to_matrix(r, "truth: rotations")});
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw data_error(path.string() + ": " + e.what());
  }
  return info;
}

void write_chain_csv(const std::filesystem::path& path, const Chain& chain) {
  if (chain.draws.empty()) throw std::invalid_argument("write_chain_csv: empty chain");
  const auto& first = chain.draws.front();
  const auto names = param_names(first.k, first.p(), first.d);
  auto out = open_output(path);
  out << "draw";
  for (const auto& name : names) out << "," << name;
  out << ",loglik\n";

  for (std::size_t b = 0; b < chain.draws.size(); ++b) {
    const auto& draw = chain.draws[b];
    out << b;
    for (int h = 0; h < draw.d; ++h) {
      for (int l = 0; l < draw.p(); ++l) {
        for (int w = 0; w < draw.k; ++w) {
          out << "," << format_double(draw.beta[l](w * draw.d + h));
        }
      }
    }
    for (int r = 0; r < draw.k; ++r) {
      for (int c = 0; c <= r; ++c) out << "," << format_double(draw.sigma(r, c));
    }
    out << "," << format_double(chain.logliks.at(b)) << "\n";
  }
}

Chain read_chain_csv(const std::filesystem::path& path) {
  auto in = open_input(path);
  std::string line;
  if (!std::getline(in, line)) throw data_error(path.string() + ": empty file");
  strip_cr(line);
  const auto header = split_csv_line(line);
  if (header.size() < 3 || header.front() != "draw" || header.back() != "loglik") {
    throw data_error(path.string() + ": row 1: expected draw,...,loglik header");
  }

  // Recover (k, p, d) from the b{h}_{w}_{l} names.
  int k = 0, p = 0, d = 0;
  std::size_t n_beta = 0;
  for (std::size_t c = 1; c + 1 < header.size(); ++c) {
    int h = 0, w = 0, l = 0;
    if (std::sscanf(header[c].c_str(), "b%d_%d_%d", &h, &w, &l) == 3) {
      ++n_beta;
      k = std::max(k, w);
      p = std::max(p, l);
      d = std::max(d, h);
    }
  }
  if (k == 0 || p == 0 || d == 0 || n_beta != static_cast<std::size_t>(k) * p * d) {
    throw data_error(path.string() + ": row 1: cannot recover dimensions from header");
  }
  const auto names = param_names(k, p, d);
  for (std::size_t c = 0; c < names.size(); ++c) {
    if (header[c + 1] != names[c]) {
      throw data_error(path.string() + ": row 1: unexpected column '" + header[c + 1] + "'");
    }
  }
  if (header.size() != names.size() + 2) {
    throw data_error(path.string() + ": row 1: wrong number of columns");
  }

  Chain chain;
  long row_no = 1;
  while (std::getline(in, line)) {
    ++row_no;
    strip_cr(line);
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    const std::string where = path.string() + ": row " + std::to_string(row_no);
    if (fields.size() != header.size()) throw data_error(where + ": wrong number of fields");

    ParamState draw;
    draw.k = k;
    draw.d = d;
    draw.beta.assign(p, Eigen::VectorXd::Zero(k * d));
    draw.sigma = Eigen::MatrixXd::Zero(k, k);
    std::size_t f = 1;
    for (int h = 0; h < d; ++h) {
      for (int l = 0; l < p; ++l) {
        for (int w = 0; w < k; ++w) draw.beta[l](w * d + h) = parse_double(fields[f++], where);
      }
    }
    for (int r = 0; r < k; ++r) {
      for (int c = 0; c <= r; ++c) {
        draw.sigma(r, c) = parse_double(fields[f++], where);
        draw.sigma(c, r) = draw.sigma(r, c);
      }
    }
    chain.logliks.push_back(parse_double(fields[f], where));
    chain.draws.push_back(std::move(draw));
  }
  if (chain.draws.empty()) throw data_error(path.string() + ": no draws");
  return chain;
}

nlohmann::json summary_to_json(const PosteriorSummary& summary) {
  nlohmann::json j;
  j["k"] = summary.k;
  j["p"] = summary.p;
  j["d"] = summary.d;
  j["n_draws"] = summary.n_draws;
  j["beta_mean"] = nlohmann::json::array();
  for (const auto& b : summary.beta_mean) j["beta_mean"].push_back(matrix_to_json(b));
  j["sigma_mean"] = matrix_to_json(summary.sigma_mean);
  nlohmann::json params = nlohmann::json::object();
  for (const auto& [name, ps] : summary.params) {
    params[name] = {{"mean", ps.mean}, {"ci95", {ps.ci_lower, ps.ci_upper}}, {"ess", ps.ess}};
  }
  j["params"] = std::move(params);
  if (summary.rho) j["rho"] = *summary.rho;
  return j;
}

void write_summary_json(const std::filesystem::path& path, const PosteriorSummary& summary) {
  write_json(path, summary_to_json(summary));
}

std::string file_digest(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw data_error("cannot open '" + path.string() + "' for digest");
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  char buf[4096];
  while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
    for (std::streamsize i = 0; i < in.gcount(); ++i) {
      hash ^= static_cast<unsigned char>(buf[i]);
      hash *= 0x100000001b3ULL;
    }
  }
  char hex[17];
  std::snprintf(hex, sizeof(hex), "%016llx", static_cast<unsigned long long>(hash));
  return hex;
}

void write_json(const std::filesystem::path& path, const nlohmann::json& j) {
  auto out = open_output(path);
  out << j.dump(2) << "\n";
}

nlohmann::json read_json(const std::filesystem::path& path) {
  auto in = open_input(path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw data_error(path.string() + ": " + e.what());
  }
}

}  // namespace sns
