#ifndef WFORGE_PAIRING_HPP
#define WFORGE_PAIRING_HPP

#include <string>

#include "wforge/maps.hpp"

namespace wforge {

inline constexpr double kImagResidueTol = 1e-10;
inline constexpr double kKillTolScale = 1e-9;
inline constexpr double kDetectScale = 1e-10;

// Product vector pair (y in C^n, x in C^m) with its embedding
// conj(y) (x) x and partial conjugate conj(y) (x) conj(x).
struct ProductVector {
  CVector y;
  CVector x;
  CVector embedded;
  CVector partial_conjugate;

  static ProductVector from_xy(const CVector& y, const CVector& x);
  // Convenience for families written down as (ybar, x) pairs.
  static ProductVector from_x_ybar(const CVector& x, const CVector& ybar);
};

// Bilinear pairing between M_n (x) M_m and maps M_m -> M_n:
// with A = sum_kl e_kl (x) B_kl (e_kl in M_n, B_kl in M_m),
//   <A, phi> = sum_kl [phi(B_kl)]_kl.
// The imaginary residue is checked against kImagResidueTol (scaled) and
// discarded.
double pairing(const HermMatrix& a, const LinMapRep& phi, BipartiteDims dims);

// Hermitian D with <A, phi> = Tr(A D) for all A; the fixed dual matrix used
// as the descent direction in the PPT search.
HermMatrix pairing_gradient(const LinMapRep& phi);

// (phi(x x*) y | y); zero exactly on the dual face of phi.
double kill_value(const LinMapRep& phi, const ProductVector& pv);

// tol < 0 selects the default kKillTolScale * ||choi||_F.
bool in_kill_set(const LinMapRep& phi, const ProductVector& pv,
                 double tol = -1.0);

struct WitnessReport {
  double pairing_value = 0.0;
  bool state_is_ppt = false;
  double state_min_eig = 0.0;
  double partial_transpose_min_eig = 0.0;
  std::string verdict;  // detected-entangled | detected-ppt-entangled |
                        // not-detected
};

// Evaluates the witness of phi against the PSD matrix A.  Detection means
// pairing < -kDetectScale * ||choi||_F * ||A||_F; raw negativity is too
// fragile at machine precision.
WitnessReport detects(const LinMapRep& phi, const HermMatrix& a,
                      BipartiteDims dims);

}  // namespace wforge

#endif
