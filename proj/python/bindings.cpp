#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "wforge/exposedness.hpp"
#include "wforge/maps.hpp"
#include "wforge/pairing.hpp"
#include "wforge/ppt.hpp"

namespace py = pybind11;

namespace {

using namespace wforge;

// User-supplied arrays arrive with float rounding; accept a looser Hermitian
// defect than the internal 1e-12 and let HermMatrix symmetrize.
constexpr double kInputHermTol = 1e-9;

LinMapRep map_from(const CMatrix& choi, int dim_in, int dim_out) {
  return LinMapRep(HermMatrix(choi, kInputHermTol), dim_in, dim_out);
}

py::dict class_dict(const MapClass& mc) {
  py::dict d;
  d["positive"] = mc.positive;
  d["decomposable"] = mc.decomposable;
  d["completely_positive"] = mc.completely_positive;
  d["completely_copositive"] = mc.completely_copositive;
  return d;
}

py::dict report_dict(const WitnessReport& r) {
  py::dict d;
  d["pairing_value"] = r.pairing_value;
  d["state_is_ppt"] = r.state_is_ppt;
  d["state_min_eig"] = r.state_min_eig;
  d["partial_transpose_min_eig"] = r.partial_transpose_min_eig;
  d["verdict"] = r.verdict;
  return d;
}

py::dict vector_dict(const ProductVector& pv) {
  py::dict d;
  d["y"] = pv.y;
  d["x"] = pv.x;
  d["embedded"] = pv.embedded;
  d["partial_conjugate"] = pv.partial_conjugate;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "Entanglement witnesses from positive linear maps: Choi matrices, the "
      "generalized Choi family, witness pairings, PPT state search, and "
      "exposedness certificates.";

  m.def(
      "classify",
      [](double a, double b, double c) {
        return class_dict(classify_choi_params({a, b, c}));
      },
      py::arg("a"), py::arg("b"), py::arg("c"),
      "Closed-form positivity / decomposability / CP / coCP flags of the "
      "generalized Choi map with diagonal weights (a, b, c).");

  m.def(
      "t_params",
      [](double t) {
        const TParam p(t);
        return py::make_tuple(p.a, p.b, p.c);
      },
      py::arg("t"),
      "The (a, b, c) weights of the one-parameter slice at t.");

  m.def(
      "choi_matrix",
      [](double a, double b, double c) {
        return generalized_choi({a, b, c}).choi_mat();
      },
      py::arg("a"), py::arg("b"), py::arg("c"),
      "9x9 Choi matrix of the generalized Choi map.");

  m.def(
      "choi_matrix_t",
      [](double t) { return phi_t(t).choi_mat(); }, py::arg("t"),
      "9x9 Choi matrix of the map on the one-parameter slice.");

  m.def(
      "apply_map",
      [](const CMatrix& choi, int dim_in, int dim_out, const CMatrix& x) {
        return map_from(choi, dim_in, dim_out).apply(x);
      },
      py::arg("choi"), py::arg("dim_in"), py::arg("dim_out"), py::arg("x"),
      "Apply the map with the given Choi matrix to x.");

  m.def(
      "pairing",
      [](const CMatrix& state, const CMatrix& choi, int n, int m_dim) {
        return pairing(HermMatrix(state, kInputHermTol),
                       map_from(choi, m_dim, n), BipartiteDims{n, m_dim});
      },
      py::arg("state"), py::arg("choi"), py::arg("n"), py::arg("m"),
      "Bilinear pairing of a state in M_n (x) M_m with the map M_m -> M_n "
      "given by its Choi matrix.");

  m.def(
      "detects",
      [](const CMatrix& state, const CMatrix& choi, int n, int m_dim) {
        return report_dict(detects(map_from(choi, m_dim, n),
                                   HermMatrix(state, kInputHermTol),
                                   BipartiteDims{n, m_dim}));
      },
      py::arg("state"), py::arg("choi"), py::arg("n"), py::arg("m"),
      "Witness report of the map against a PSD state.");

  m.def(
      "partial_transpose",
      [](const CMatrix& a, int n, int m_dim) {
        return partial_transpose(HermMatrix(a, kInputHermTol),
                                 BipartiteDims{n, m_dim})
            .mat();
      },
      py::arg("a"), py::arg("n"), py::arg("m"),
      "Transpose the second tensor factor.");

  m.def(
      "eig_min",
      [](const CMatrix& a) { return eig_min(HermMatrix(a, kInputHermTol)); },
      py::arg("a"), "Smallest eigenvalue of a Hermitian matrix.");

  m.def(
      "is_ppt",
      [](const CMatrix& a, int n, int m_dim) {
        return is_ppt(HermMatrix(a, kInputHermTol), BipartiteDims{n, m_dim});
      },
      py::arg("a"), py::arg("n"), py::arg("m"));

  m.def(
      "span_rank",
      [](const std::vector<CVector>& vectors) { return span_rank(vectors); },
      py::arg("vectors"), "Numerical rank of the span of the vectors.");

  m.def(
      "canonical_kill_vectors",
      [](double t) {
        std::vector<py::dict> out;
        for (const ProductVector& pv : canonical_kill_vectors(t).vectors) {
          out.push_back(vector_dict(pv));
        }
        return out;
      },
      py::arg("t"),
      "The nine annihilating product vector pairs of the slice map.");

  m.def(
      "kill_value",
      [](const CMatrix& choi, int dim_in, int dim_out, const CVector& y,
         const CVector& x) {
        return kill_value(map_from(choi, dim_in, dim_out),
                          ProductVector::from_xy(y, x));
      },
      py::arg("choi"), py::arg("dim_in"), py::arg("dim_out"), py::arg("y"),
      py::arg("x"), "(phi(x x*) y | y) for the map with this Choi matrix.");

  m.def(
      "find_detected_ppt_state",
      [](const CMatrix& choi, int n, int m_dim, int max_iterations,
         double step_size, std::uint64_t seed, double tolerance,
         int restarts) {
        PptSearchConfig cfg;
        cfg.max_iterations = max_iterations;
        cfg.step_size = step_size;
        cfg.seed = seed;
        cfg.tolerance = tolerance;
        cfg.restarts = restarts;
        const PptSearchResult r =
            find_detected_ppt_state(map_from(choi, m_dim, n), cfg);
        py::dict d;
        d["detected"] = r.detected;
        d["best_pairing"] = r.best_pairing;
        d["best_restart"] = r.best_restart;
        d["state"] = r.state.mat();
        d["report"] = report_dict(r.report);
        return d;
      },
      py::arg("choi"), py::arg("n"), py::arg("m"),
      py::arg("max_iterations") = 2000, py::arg("step_size") = 0.05,
      py::arg("seed") = 0, py::arg("tolerance") = 1e-6,
      py::arg("restarts") = 8,
      "Search the PPT cone for a state with negative pairing.");

  m.def(
      "certify_exposedness",
      [](double t, int phase_samples, int scan_budget, std::uint64_t seed) {
        ExposeOptions opts;
        opts.phase_samples = phase_samples;
        opts.scan_budget = scan_budget;
        opts.seed = seed;
        const ExposednessCertificate cert = certify_exposedness(t, opts);
        py::dict d;
        d["t"] = cert.t;
        d["num_constraint_samples"] = cert.num_constraint_samples;
        d["null_space_dim"] = cert.null_space_dim;
        d["null_space_dim_doubled"] = cert.null_space_dim_doubled;
        d["choi_residual"] = cert.choi_residual;
        d["survivor_count"] = cert.survivor_count;
        d["ray_residual"] = cert.ray_residual;
        d["verdict"] = cert.verdict;
        return d;
      },
      py::arg("t"), py::arg("phase_samples") = 24,
      py::arg("scan_budget") = 5000, py::arg("seed") = 1,
      "Numerical exposed-ray certificate for the slice map at t.");

  m.def(
      "d_polynomial",
      [](double t, double alpha, double p, double q, double r) {
        return d_polynomial(DoubleDualParams(t, alpha, p, q, r));
      },
      py::arg("t"), py::arg("alpha"), py::arg("p"), py::arg("q"),
      py::arg("r"), "Closed-form determinant polynomial.");

  m.def(
      "det_oracle",
      [](double t, double alpha, double p, double q, double r) {
        return det_oracle(DoubleDualParams(t, alpha, p, q, r));
      },
      py::arg("t"), py::arg("alpha"), py::arg("p"), py::arg("q"),
      py::arg("r"), "Independent determinant evaluation of the same matrix.");

  m.def(
      "decompose_on_plane",
      [](double a, double b, double c) {
        const PlaneDecomposition split = decompose_on_plane({a, b, c});
        py::dict d;
        d["t"] = split.t;
        d["weight"] = split.weight;
        d["weight_in_range"] = split.weight_in_range;
        d["residual"] = split.residual;
        return d;
      },
      py::arg("a"), py::arg("b"), py::arg("c"),
      "Split a map on the plane a+b+c = 2 into a CP part and a slice map.");

  m.def(
      "enumerate_kill_vectors",
      [](double a, double b, double c, int starts, std::uint64_t seed) {
        std::vector<py::dict> out;
        for (const ProductVector& pv : enumerate_kill_vectors(
                 generalized_choi({a, b, c}), starts, seed)) {
          out.push_back(vector_dict(pv));
        }
        return out;
      },
      py::arg("a"), py::arg("b"), py::arg("c"), py::arg("starts") = 200000,
      py::arg("seed") = 0,
      "Numerically enumerate annihilating product vectors of the "
      "generalized Choi map.");
}
