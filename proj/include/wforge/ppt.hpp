#ifndef WFORGE_PPT_HPP
#define WFORGE_PPT_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "wforge/pairing.hpp"

namespace wforge {

inline constexpr double kPptTolScale = 1e-9;

struct PptSearchConfig {
  int max_iterations = 2000;
  double step_size = 0.05;
  double mixing_epsilon = 0.0;  // optional pull toward the maximally mixed
                                // state after each projection
  std::uint64_t seed = 0;
  double tolerance = 1e-6;  // detection requires pairing < -tolerance
  int restarts = 8;
};

bool is_ppt(const HermMatrix& a, BipartiteDims dims);

// Nearest PSD matrix in Frobenius norm (negative eigenvalues zeroed).
HermMatrix project_psd(const HermMatrix& a);

struct PptProjection {
  HermMatrix matrix;
  double residual = 0.0;
  int iterations = 0;
  bool converged = false;
};

// Dykstra alternating projections between the PSD cone and the cone of
// matrices with PSD partial transpose.
PptProjection project_ppt(const HermMatrix& a, BipartiteDims dims,
                          int max_sweeps = 200, double tol = 1e-10);

struct PptSearchResult {
  HermMatrix state;
  WitnessReport report;
  bool detected = false;
  double best_pairing = 0.0;
  int best_restart = 0;
};

// Projected linear descent: the pairing is linear in the state, so each
// step moves against the fixed dual matrix of phi and re-projects onto
// {trace one} and the PPT cone.  Restarts are seeded deterministically and
// the winner is chosen by (pairing value, restart index).
PptSearchResult find_detected_ppt_state(const LinMapRep& phi,
                                        const PptSearchConfig& cfg = {});

struct InteriorReport {
  double state_min_eig = 0.0;
  double pt_min_eig = 0.0;
  bool is_interior = false;
  double epsilon = 0.0;
  double pairing_value = 0.0;
};

// Mixes a detected state toward the maximally mixed state, keeping the
// pairing negative while both the state and its partial transpose become
// full rank.  epsilon < 0 requests the automatic choice (half the largest
// admissible value, then halving until verified).
std::pair<HermMatrix, InteriorReport> interior_point_from_detection(
    const HermMatrix& a, const LinMapRep& phi, BipartiteDims dims,
    double epsilon = -1.0);

// Point on the segment from the maximally mixed state to A where the
// pairing vanishes, returned together with its segment parameter lambda.
std::pair<HermMatrix, double> boundary_zero_on_segment(const HermMatrix& a,
                                                       const LinMapRep& phi,
                                                       BipartiteDims dims);

// True iff the embeddings span a D_dim space and the partial conjugates an
// E_dim space.
bool range_criterion_check(const std::vector<ProductVector>& family,
                           int d_dim, int e_dim);

struct SpanningReport {
  int embedded_rank = 0;
  int conjugate_rank = 0;
  bool established = false;  // both ranks equal n*m
};

// Checks every member against the kill set of phi, then reports the two
// span ranks.  A spanning subset establishes the full-space condition; a
// non-spanning finite subset is inconclusive.
SpanningReport spanning_conditions(const LinMapRep& phi,
                                   const std::vector<ProductVector>& family);

// Zero-finding sweep for the kill set of a positive map: minimize
// eig_min(phi(x x*)) over quasi-random starts with coordinate descent, keep
// the minima below zero_tol, pair each x with the bottom eigenvector, and
// deduplicate by embedding overlap.
std::vector<ProductVector> enumerate_kill_vectors(
    const LinMapRep& phi, int starts = 1000000, std::uint64_t seed = 0,
    double zero_tol = 1e-12, double dedupe_overlap = 1.0 - 1e-8);

}  // namespace wforge

#endif
