#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <string>

#include "wforge/io.hpp"
#include "wforge/maps.hpp"
#include "wforge/rng.hpp"

using namespace wforge;

namespace {
struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name) : path("/tmp/wforge_" + name) {}
  ~TempFile() { std::remove(path.c_str()); }
};
}  // namespace

TEST_CASE("matrix file round trip is bit exact") {
  Rng rng(107);
  const CMatrix h = rng.hermitian(9).mat();
  const TempFile tmp("roundtrip.json");
  save_matrix_file(tmp.path, MatrixFile{"state", 3, 3, h});
  const MatrixFile loaded = load_matrix_file(tmp.path);
  CHECK(loaded.kind == "state");
  CHECK(loaded.n == 3);
  CHECK(loaded.m == 3);
  REQUIRE(loaded.matrix.rows() == 9);
  bool identical = true;
  for (int r = 0; r < 9; ++r) {
    for (int c = 0; c < 9; ++c) {
      identical = identical && loaded.matrix(r, c) == h(r, c);
    }
  }
  CHECK(identical);
}

TEST_CASE("map choi files carry the grid dimensions") {
  const LinMapRep phi = phi_t(0.5);
  const TempFile tmp("choi.json");
  save_matrix_file(tmp.path, MatrixFile{"map-choi", 3, 3, phi.choi_mat()});
  const MatrixFile loaded = load_matrix_file(tmp.path);
  CHECK(loaded.kind == "map-choi");
  CHECK(frob_norm(loaded.matrix - phi.choi_mat()) == 0.0);
}

TEST_CASE("matrix json layout is row major") {
  CMatrix m(2, 2);
  m(0, 0) = Complex(1.0, 0.0);
  m(0, 1) = Complex(2.0, -3.0);
  m(1, 0) = Complex(2.0, 3.0);
  m(1, 1) = Complex(4.0, 0.0);
  const nlohmann::json j = matrix_to_json(m);
  CHECK(j["re"][1] == 2.0);
  CHECK(j["im"][1] == -3.0);
  CHECK(j["im"][2] == 3.0);
}

TEST_CASE("loader rejects malformed inputs") {
  TempFile tmp("bad.json");

  std::ofstream(tmp.path) << "{ not json";
  CHECK_THROWS_AS(load_matrix_file(tmp.path), std::invalid_argument);

  std::ofstream(tmp.path)
      << R"({"kind":"mystery","dims":[1,2],"re":[1,0,0,1],"im":[0,0,0,0]})";
  CHECK_THROWS_AS(load_matrix_file(tmp.path), std::invalid_argument);

  // length mismatch against dims
  std::ofstream(tmp.path)
      << R"({"kind":"state","dims":[1,3],"re":[1,0,0,1],"im":[0,0,0,0]})";
  CHECK_THROWS_AS(load_matrix_file(tmp.path), std::invalid_argument);

  // non-hermitian payload
  std::ofstream(tmp.path)
      << R"({"kind":"state","dims":[1,2],"re":[0,1,0,0],"im":[0,0,0,0]})";
  CHECK_THROWS_AS(load_matrix_file(tmp.path), std::invalid_argument);

  CHECK_THROWS_AS(load_matrix_file("/tmp/wforge_does_not_exist.json"),
                  std::invalid_argument);
}

TEST_CASE("run reports carry the reproducibility envelope") {
  const nlohmann::json payload = {{"value", 1.25}};
  const nlohmann::json report = make_run_report(
      "witness-forge classify --a 1 --b 0 --c 1 --seed 7", 7,
      {{"slack", 1e-12}}, payload, 12.5);
  CHECK(report["command"] == "witness-forge classify --a 1 --b 0 --c 1 --seed 7");
  CHECK(report["seed"] == 7);
  CHECK(report["payload"]["value"] == 1.25);
  CHECK(report["tolerances"]["slack"] == 1e-12);
  CHECK(report.contains("wall_time_ms"));
}
