#ifndef WFORGE_EXPOSEDNESS_HPP
#define WFORGE_EXPOSEDNESS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "wforge/pairing.hpp"

namespace wforge {

inline constexpr double kNullSpaceCutoff = 1e-8;
inline constexpr double kChoiResidualTol = 1e-10;
inline constexpr double kSurvivorTol = 1e-9;
inline constexpr double kRayResidualTol = 1e-8;

// The nine product vector pairs (x_i, ybar_i) annihilating Phi(t):
//   x1 = (1,1,1)        ybar1 = (1,1,1)
//   x2 = (1,-1,1)       ybar2 = (1,-1,1)
//   x3 = (1,i,-i)       ybar3 = (1,-i,i)
//   x4 = (0,rt,1)       ybar4 = (0,rt,t)
//   x5 = (0,rt,i)       ybar5 = (0,rt,-ti)
//   x6 = (1,0,rt)       ybar6 = (t,0,rt)
//   x7 = (i,0,rt)       ybar7 = (-ti,0,rt)
//   x8 = (rt,1,0)       ybar8 = (rt,t,0)
//   x9 = (rt,i,0)       ybar9 = (rt,-ti,0)
// with rt = sqrt(t).
struct CanonicalKillSet {
  double t = 0.0;
  std::vector<ProductVector> vectors;  // size 9
};

CanonicalKillSet canonical_kill_vectors(double t);

// Continuum families of annihilating product vectors, swept over uniform
// phase grids with the global phase quotiented out:
//   case 1: x = (1, e^{i s1}, e^{i s2}),            ybar = conj(x)
//   case 2: x = (0, rt e^{i s}, 1),   ybar = (0, rt e^{-i s}, t)
//   case 3: x = (1, 0, rt e^{i s}),   ybar = (t, 0, rt e^{-i s})
//   case 4: x = (rt e^{i s}, 1, 0),   ybar = (rt e^{-i s}, t, 0)
// Case 1 has two free phases and yields num_phase_samples^2 vectors; the
// other cases yield num_phase_samples each.
std::vector<ProductVector> sample_kill_family(double t, int family_case,
                                              int num_phase_samples);

// 2x2 matrices orthogonal, under Tr(X* Y), to the case-2 family: A to the
// identified submatrices of the embeddings, B to those of the partial
// conjugates.  A = [[1,0],[0,-1]] is parameter independent,
// B = [[0,1],[-t,0]].
struct SubmatrixWitnesses {
  CMatrix a;
  CMatrix b;
};

SubmatrixWitnesses ab_submatrix_witnesses(double t);

// Max |inner product| over a phase sweep; should vanish to 1e-10.
double case2_orthogonality_residual(double t, int num_phase_samples);

// Parameters (t; alpha, p, q, r) of the structured 9x9 family together with
// the symmetric functions the determinant analysis is phrased in.
struct DoubleDualParams {
  double t = 0.0;
  double alpha = 0.0;
  double p = 0.0;
  double q = 0.0;
  double r = 0.0;
  double s1 = 0.0, s2 = 0.0, s3 = 0.0;
  double t1 = 0.0, t2 = 0.0, t3 = 0.0;

  DoubleDualParams(double t_value, double alpha_value, double p_value,
                   double q_value, double r_value);

  // 3 alpha = (1-t)^2 (p+q+r)
  bool satisfies_case1_constraint(double tol = 1e-12) const;
};

// The 9x9 pattern: diagonal (alpha, p, t^2 r, t^2 p, alpha, q, r, t^2 q,
// alpha), corner entries -alpha - t p, -alpha - t r, -alpha - t q at
// positions (0,4), (0,8), (4,8) and their mirrors.
HermMatrix double_dual_candidate(const DoubleDualParams& params);

// Closed form
//   D = S3 t^6 + a S2 t^4 - 2(S3 + a S2) t^3 - a S2 t^2
//       - 2a(S2 + 2a S1) t + S3 + a S2 - 4a^3       (a = alpha).
double d_polynomial(const DoubleDualParams& params);

// Independent route: determinant of the image of the all-ones projector
// under the candidate map,
//   det [[a+t^2 p+r, -a-tp, -a-tr],
//        [-a-tp, a+t^2 q+p, -a-tq],
//        [-a-tr, -a-tq, a+t^2 r+q]].
double det_oracle(const DoubleDualParams& params);

struct InequalityChainReport {
  double t1_slack = 0.0;     // t3 - t1
  double chain_slack = 0.0;  // -2 t3 - (t1 - t2)
  double d_value = 0.0;
  double d_bound = 0.0;  // (t-1)^4 (t^2+t+1) t3
  double dev_pq = 0.0;
  double dev_qr = 0.0;
  bool all_hold = false;
};

// Verifies T1 <= T3, T1 - T2 <= -2 T3 and D <= (t-1)^4 (t^2+t+1) T3 <= 0
// under the case-1 constraint.
InequalityChainReport inequality_chain_check(const DoubleDualParams& params);

struct ExposeOptions {
  int phase_samples = 24;
  int scan_budget = 5000;
  int ascent_starts = 12;
  int ascent_steps = 150;
  std::uint64_t seed = 1;
};

struct ExposednessCertificate {
  double t = 0.0;
  int num_constraint_samples = 0;
  int null_space_dim = 0;
  int null_space_dim_doubled = 0;
  double choi_residual = 0.0;
  int survivor_count = 0;
  double ray_residual = 0.0;
  std::string verdict;  // exposed-ray-confirmed | inconclusive
};

// Orthonormal basis (81 x d, real isometric coordinates) of the Hermitian
// matrices annihilated by every sampled kill-family projector.
RMatrix kill_constraint_null_space(double t, int phase_samples);

// End-to-end certificate: sample the kill families, compute the Hermitian
// null space, check its dimension is stable under doubling the phase grid,
// confirm the Choi matrix of Phi(t) lies inside, then scan the null sphere
// for directions inducing positive maps.  Confirmed when every survivor of
// the positivity scan lies on the Phi(t) ray.  This is a finite-sample
// corroboration, not an algebraic proof.
ExposednessCertificate certify_exposedness(double t,
                                           const ExposeOptions& opts = {});

struct PlaneDecomposition {
  double t = 0.0;
  double weight = 0.0;  // coefficient of the Phi(t) part
  bool weight_in_range = false;
  double residual = 0.0;
  ChoiParams cp_params;       // (2, 0, 0)
  ChoiParams exposed_params;  // (a(t), b(t), c(t))
};

// On the plane a+b+c = 2 with b,c > 0:
//   Phi[a,b,c] = (1-w) Phi[2,0,0] + w Phi(t),  t = sqrt(b/c),
//   w = c (1 - t + t^2).
PlaneDecomposition decompose_on_plane(const ChoiParams& p,
                                      double plane_tol = 1e-12);

}  // namespace wforge

#endif
