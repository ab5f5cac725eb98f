#ifndef WFORGE_IO_HPP
#define WFORGE_IO_HPP

#include <string>

#include <json.hpp>

#include "wforge/linalg.hpp"

namespace wforge {

// On-disk matrix format: structured text with explicit re/im arrays
// (row-major), no binary payloads.  dims holds (n, m); for kind "state" the
// matrix lives in M_n (x) M_m, for kind "map-choi" it is the Choi matrix of
// a map M_m -> M_n (block grid of size m, blocks of size n).  Plain square
// matrices travel as kind "state" with n = 1.
struct MatrixFile {
  std::string kind;  // "state" | "map-choi"
  int n = 1;
  int m = 1;
  CMatrix matrix;
};

nlohmann::json matrix_file_to_json(const MatrixFile& mf);
MatrixFile matrix_file_from_json(const nlohmann::json& j);

MatrixFile load_matrix_file(const std::string& path);
void save_matrix_file(const std::string& path, const MatrixFile& mf);

nlohmann::json matrix_to_json(const CMatrix& m);

// Envelope for every CLI run: the effective command line, the seed, the
// effective tolerances, the payload, and the wall time.  Re-running the
// echoed command with the same seed reproduces the payload bit for bit;
// wall_time_ms is outside the payload for that reason.
nlohmann::json make_run_report(const std::string& command, std::uint64_t seed,
                               const nlohmann::json& tolerances,
                               const nlohmann::json& payload,
                               double wall_time_ms);

}  // namespace wforge

#endif
