#include "wforge/io.hpp"

#include <fstream>

namespace wforge {

nlohmann::json matrix_to_json(const CMatrix& m) {
  std::vector<double> re;
  std::vector<double> im;
  re.reserve(m.size());
  im.reserve(m.size());
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      re.push_back(m(i, j).real());
      im.push_back(m(i, j).imag());
    }
  }
  return nlohmann::json{{"re", re}, {"im", im}};
}

nlohmann::json matrix_file_to_json(const MatrixFile& mf) {
  nlohmann::json j = matrix_to_json(mf.matrix);
  j["kind"] = mf.kind;
  j["dims"] = {mf.n, mf.m};
  return j;
}

MatrixFile matrix_file_from_json(const nlohmann::json& j) {
  MatrixFile mf;
  mf.kind = j.at("kind").get<std::string>();
  if (mf.kind != "state" && mf.kind != "map-choi") {
    throw std::invalid_argument("matrix file: kind must be state or map-choi");
  }
  const auto dims = j.at("dims");
  if (!dims.is_array() || dims.size() != 2) {
    throw std::invalid_argument("matrix file: dims must be [n, m]");
  }
  mf.n = dims[0].get<int>();
  mf.m = dims[1].get<int>();
  if (mf.n < 1 || mf.m < 1) {
    throw std::invalid_argument("matrix file: dims must be positive");
  }
  const auto& re = j.at("re");
  const auto& im = j.at("im");
  const std::size_t d = static_cast<std::size_t>(mf.n) * mf.m;
  if (re.size() != d * d || im.size() != d * d) {
    throw std::invalid_argument(
        "matrix file: re/im must hold (n*m)^2 entries each");
  }
  mf.matrix.resize(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  std::size_t pos = 0;
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t jj = 0; jj < d; ++jj, ++pos) {
      mf.matrix(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(jj)) =
          Complex(re[pos].get<double>(), im[pos].get<double>());
    }
  }
  try {
    HermMatrix check(mf.matrix);
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("matrix file: kind " + mf.kind +
                                " requires a Hermitian matrix");
  }
  return mf;
}

MatrixFile load_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("cannot open matrix file: " + path);
  }
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("malformed matrix file " + path + ": " +
                                e.what());
  }
  try {
    return matrix_file_from_json(j);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("malformed matrix file " + path + ": " +
                                e.what());
  }
}

void save_matrix_file(const std::string& path, const MatrixFile& mf) {
  std::ofstream out(path);
  if (!out) {
    throw std::invalid_argument("cannot write matrix file: " + path);
  }
  out << matrix_file_to_json(mf).dump(2) << "\n";
}

nlohmann::json make_run_report(const std::string& command, std::uint64_t seed,
                               const nlohmann::json& tolerances,
                               const nlohmann::json& payload,
                               double wall_time_ms) {
  return nlohmann::json{{"command", command},
                        {"seed", seed},
                        {"tolerances", tolerances},
                        {"payload", payload},
                        {"wall_time_ms", wall_time_ms}};
}

}  // namespace wforge
